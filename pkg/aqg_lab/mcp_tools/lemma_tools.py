from typing import Any, Dict, Optional

from aqg_lab import mcp
from aqg_lab.analysis import LEMMAS
from aqg_lab.analysis import verify_lemmas as run_suite
from aqg_lab.core.errors import AqgLabError


@mcp.tool()
def verify_lemmas(
    lemma: Optional[str] = None,
    samples: Optional[int] = None,
    seed: Optional[int] = None,
) -> Dict[str, Any]:
    """
    Check the functional inequalities on seeded random field families.

    Args:
        lemma (Optional[str]): One of "interpolation", "product", "riesz", "commutator",
            "pointwise-product", "sobolev-interpolation", "lp-interpolation"; all when omitted
        samples (Optional[int]): Family size; each inequality has its own default
        seed (Optional[int]): Master seed (AQG_LEMMA_SEED when omitted)

    Returns:
        Dict[str, Any]: One verdict per checker run and an overall pass flag
    """
    if lemma is not None and lemma not in LEMMAS:
        return {"success": False, "error": f"Unknown lemma '{lemma}'", "available": list(LEMMAS)}

    try:
        verdicts = run_suite(lemma=lemma, samples=samples, seed=seed)
    except AqgLabError as e:
        return {"success": False, "error": str(e)}

    return {
        "success": True,
        "passed": all(v.passed for v in verdicts),
        "verdicts": [v.model_dump(mode="json") for v in verdicts],
    }
