from mcp.server.fastmcp import FastMCP

from aqg_lab.core import Container

container = Container()
container.init_resources()

mcp = FastMCP("aqg-lab")

container.wire(packages=["aqg_lab.mcp_tools"], modules=["aqg_lab.experiments.sweep"])

from .mcp_tools import *
