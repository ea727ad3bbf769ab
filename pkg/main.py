from aqg_lab import mcp
from aqg_lab.core import initialize_server
from aqg_lab.mcp_tools import *

if __name__ == "__main__":
    initialize_server()
    mcp.run(transport="sse")
