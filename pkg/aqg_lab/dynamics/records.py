"""Diagnostics records and the energy-budget verifier."""

import json
import math
from dataclasses import dataclass, field
from typing import Any, Dict, Iterable, List, Mapping, Tuple

from aqg_lab.core.errors import ParameterError


def format_index(value: float) -> str:
    """Key suffix for a Sobolev index, exponent or cutoff ("2", "0.5", "inf")."""
    return "inf" if math.isinf(value) else f"{value:g}"


@dataclass(frozen=True)
class DiagnosticsRecord:
    """
    Normed quantities of one recorded instant.

    Split entries are (||w_delta||, ||v_delta||) keyed by delta as a multiple of the
    fundamental wavenumber. hs_bound[s] is ||theta||_{H^s}^2 plus the time
    integrals of both directional dissipation norms in H^s.
    """

    t: float
    l2: float
    linf: float
    diss1: float
    diss2: float
    cum1: float
    cum2: float
    budget_residual: float
    lp: Dict[float, float] = field(default_factory=dict)
    hs: Dict[float, float] = field(default_factory=dict)
    hs_hom: Dict[float, float] = field(default_factory=dict)
    split: Dict[float, Tuple[float, float]] = field(default_factory=dict)
    hs_bound: Dict[float, float] = field(default_factory=dict)

    def to_flat(self) -> Dict[str, float]:
        """Flat mapping with the NDJSON field names (t, l2, linf, lp.<p>, hs.<s>, ...)."""
        flat: Dict[str, float] = {"t": self.t, "l2": self.l2, "linf": self.linf}
        flat.update({f"lp.{format_index(p)}": v for p, v in self.lp.items()})
        flat.update({f"hs.{format_index(s)}": v for s, v in self.hs.items()})
        flat.update({f"hsdot.{format_index(s)}": v for s, v in self.hs_hom.items()})
        flat.update(
            {"diss1": self.diss1, "diss2": self.diss2, "cum1": self.cum1, "cum2": self.cum2}
        )
        for delta, (low, high) in self.split.items():
            flat[f"split.{format_index(delta)}.low"] = low
            flat[f"split.{format_index(delta)}.high"] = high
        flat["budget_residual"] = self.budget_residual
        flat.update({f"hsbound.{format_index(s)}": v for s, v in self.hs_bound.items()})
        return flat

    def to_ndjson(self) -> str:
        return json.dumps(self.to_flat())

    @classmethod
    def from_flat(cls, data: Mapping[str, Any]) -> "DiagnosticsRecord":
        """Inverse of to_flat; unknown keys are ignored."""
        lp: Dict[float, float] = {}
        hs: Dict[float, float] = {}
        hs_hom: Dict[float, float] = {}
        hs_bound: Dict[float, float] = {}
        split: Dict[float, List[float]] = {}
        for key, value in data.items():
            prefix, _, rest = key.partition(".")
            if not rest:
                continue
            if prefix == "split":
                delta, _, side = rest.rpartition(".")
                slot = split.setdefault(float(delta), [0.0, 0.0])
                slot[0 if side == "low" else 1] = float(value)
            elif prefix in ("lp", "hs", "hsdot", "hsbound"):
                target = {"lp": lp, "hs": hs, "hsdot": hs_hom, "hsbound": hs_bound}[prefix]
                target[float(rest)] = float(value)
        return cls(
            t=float(data["t"]),
            l2=float(data["l2"]),
            linf=float(data["linf"]),
            diss1=float(data["diss1"]),
            diss2=float(data["diss2"]),
            cum1=float(data["cum1"]),
            cum2=float(data["cum2"]),
            budget_residual=float(data["budget_residual"]),
            lp=lp,
            hs=hs,
            hs_hom=hs_hom,
            split={d: (v[0], v[1]) for d, v in split.items()},
            hs_bound=hs_bound,
        )


def budget_residuals(
    records: Iterable[DiagnosticsRecord], mu: float = 1.0, nu: float = 1.0
) -> List[float]:
    """l2(t)^2 + 2 mu cum1(t) + 2 nu cum2(t) - l2(0)^2 for every record."""
    records = list(records)
    if not records:
        raise ParameterError("energy budget needs at least one record")
    initial = records[0].l2**2
    return [r.l2**2 + 2.0 * mu * r.cum1 + 2.0 * nu * r.cum2 - initial for r in records]


def energy_budget(
    records: Iterable[DiagnosticsRecord], mu: float = 1.0, nu: float = 1.0
) -> float:
    """
    Worst (largest) residual of the L^2 energy inequality over the records of one run.

    Args:
        records (Iterable[DiagnosticsRecord]): Records of a single run, first at t = 0
        mu (float): Weight of the x1 dissipation integral
        nu (float): Weight of the x2 dissipation integral

    Returns:
        float: max_t residual(t); 0 for zero data

    Raises:
        ParameterError: If the record list is empty
    """
    return max(budget_residuals(records, mu, nu))
