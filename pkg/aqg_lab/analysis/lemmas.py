"""
Empirical checkers for the functional inequalities the well-posedness theory uses.

Every checker evaluates left side / right side over a family of samples and
condenses the result into a RatioReport. Inequalities with an exact discrete
form (Hoelder-type interpolation, the pointwise product bound) carry an
asserted `bound`; for the others only the empirical maximum is reported and
resolution stability is the property tested.
"""

import json
import logging
from typing import Dict, Iterable, Iterator, List, Optional, Tuple, Union

import numpy as np
from pydantic import BaseModel, Field

from aqg_lab.core.errors import ParameterError
from aqg_lab.spectral import (
    SpectralField,
    exact_product,
    fractional_isotropic,
    inverse_transform,
    pad_spectrum,
    riesz_velocity,
)
from aqg_lab.spectral.transforms import samples_from_spectrum, spectrum_from_samples

from .norms import directional_norm, homogeneous_norm, l2_norm, lp_norm, sobolev_norm

logger = logging.getLogger(__name__)

Family = Union[SpectralField, Iterable[SpectralField]]

# Admissible slack on exact inequalities
EXACT_RTOL = 1e-10
PRODUCT_RTOL = 1e-8

# Distance from the product-estimate parameter boundary below which results are unreliable
PRODUCT_BOUNDARY_MARGIN = 0.05


class ResolutionRatio(BaseModel):
    """Largest ratio observed on one grid."""

    grid: str
    max_ratio: float
    sample_count: int
    skipped: int = 0


class RatioReport(BaseModel):
    """Summary of left/right ratios of one inequality over a sample family."""

    lemma: str = Field(description="Identifier of the inequality, e.g. 'pointwise-product'")
    params: Dict[str, float] = Field(default_factory=dict)
    sample_count: int = Field(0, ge=0, description="Samples with a nonzero right side")
    skipped: int = Field(0, ge=0, description="Samples whose right side vanished")
    max_ratio: float = Field(0.0, ge=0.0)
    mean_ratio: float = Field(0.0, ge=0.0)
    bound: Optional[float] = Field(None, description="Asserted upper bound, when one is known")
    per_resolution: List[ResolutionRatio] = Field(default_factory=list)
    secondary: Optional["RatioReport"] = None

    @property
    def within_bound(self) -> Optional[bool]:
        """True/False against `bound` (secondary included); None when nothing is asserted."""
        checks = []
        if self.bound is not None:
            checks.append(self.max_ratio <= self.bound)
        if self.secondary is not None and self.secondary.within_bound is not None:
            checks.append(self.secondary.within_bound)
        return all(checks) if checks else None

    def resolution_spread(self) -> float:
        """max/min - 1 over the per-resolution maxima of resolutions with samples."""
        maxima = [r.max_ratio for r in self.per_resolution if r.sample_count > 0]
        if len(maxima) < 2 or min(maxima) == 0.0:
            return 0.0
        return max(maxima) / min(maxima) - 1.0

    def resolution_growth(self) -> float:
        """Largest relative rise of a finer grid's maximum over the coarsest one's."""
        maxima = [r.max_ratio for r in self.per_resolution if r.sample_count > 0]
        if len(maxima) < 2 or maxima[0] == 0.0:
            return 0.0
        return max(maxima[1:]) / maxima[0] - 1.0

    def to_ndjson(self) -> str:
        return json.dumps(self.model_dump(exclude_none=True), sort_keys=False)


RatioReport.model_rebuild()


class RatioCollector:
    """Accumulate per-sample ratios grouped by grid."""

    def __init__(self, lemma: str, params: Dict[str, float], bound: Optional[float] = None):
        self.lemma = lemma
        self.params = params
        self.bound = bound
        self._ratios: List[float] = []
        self._skipped = 0
        self._per_grid: Dict[str, List] = {}

    def add(self, grid_label: str, ratio: Optional[float]) -> None:
        entry = self._per_grid.setdefault(grid_label, [0.0, 0, 0])
        if ratio is None:
            self._skipped += 1
            entry[2] += 1
            return
        self._ratios.append(ratio)
        entry[0] = max(entry[0], ratio)
        entry[1] += 1

    def report(self, secondary: Optional[RatioReport] = None) -> RatioReport:
        ratios = np.asarray(self._ratios)
        return RatioReport(
            lemma=self.lemma,
            params=self.params,
            sample_count=int(ratios.size),
            skipped=self._skipped,
            max_ratio=float(ratios.max()) if ratios.size else 0.0,
            mean_ratio=float(ratios.mean()) if ratios.size else 0.0,
            bound=self.bound,
            per_resolution=[
                ResolutionRatio(grid=label, max_ratio=m, sample_count=n, skipped=k)
                for label, (m, n, k) in self._per_grid.items()
            ],
            secondary=secondary,
        )


def _ratio(lhs: float, rhs: float) -> Optional[float]:
    if rhs == 0.0:
        return None
    return lhs / rhs


def _fields(family: Family) -> Iterator[SpectralField]:
    if isinstance(family, SpectralField):
        yield family
    else:
        yield from family


def _pairs(f: Family, g: Family) -> Iterator[Tuple[SpectralField, SpectralField]]:
    return zip(_fields(f), _fields(g))


def _mean_free(F: SpectralField) -> SpectralField:
    coefficients = np.array(F.coefficients)
    coefficients[0, 0] = 0.0
    return F.with_coefficients(coefficients)


def check_interpolation(
    fields: Family, axis: int, s1: float, s2: float, z: float, s: float
) -> RatioReport:
    """
    Anisotropic interpolation of directional derivatives in H^s.

    ratio = || |d_i|^(z*s1 + (1-z)*s2) f ||_{H^s}
            / (|| |d_i|^s1 f ||_{H^s}^z * || |d_i|^s2 f ||_{H^s}^(1-z))

    The secondary report holds the same ratio with homogeneous H-dot^s norms on
    both sides. Both forms are exact Hoelder inequalities, so the asserted bound is
    1 + EXACT_RTOL. Fields supported on k_axis = 0 make the right side vanish and
    are counted as skipped.

    Raises:
        ParameterError: If z is outside [0, 1] or the axis is not 1 or 2
    """
    if not 0.0 <= z <= 1.0:
        raise ParameterError(f"interpolation weight must lie in [0, 1], got {z}")
    if axis not in (1, 2):
        raise ParameterError(f"axis must be 1 or 2, got {axis}")
    r_mid = z * s1 + (1.0 - z) * s2
    params = {"axis": axis, "s1": s1, "s2": s2, "z": z, "s": s}
    inhomogeneous = RatioCollector("interpolation", params, bound=1.0 + EXACT_RTOL)
    homogeneous = RatioCollector("interpolation-homogeneous", params, bound=1.0 + EXACT_RTOL)

    for f in _fields(fields):
        for collector, flag in ((inhomogeneous, False), (homogeneous, True)):
            num = directional_norm(f, axis, r_mid, s, homogeneous=flag)
            a = directional_norm(f, axis, s1, s, homogeneous=flag)
            b = directional_norm(f, axis, s2, s, homogeneous=flag)
            collector.add(f.grid.label, _ratio(num, a**z * b ** (1.0 - z)))

    return inhomogeneous.report(secondary=homogeneous.report())


def check_product_estimate(f: Family, g: Family, s1: float, s2: float) -> RatioReport:
    """
    Homogeneous product estimate
        ||fg||_{H-dot^(s1+s2-1)} <= C (||f||_{s1} ||g||_{s2} + ||f||_{s2} ||g||_{s1})
    for s1 < 1 and s1 + s2 > 0, with the one-term form ||f||_{s1} ||g||_{s2} reported
    as secondary when s2 < 1 as well. The mean of fg is excluded from its norm.

    Raises:
        ParameterError: If s1 >= 1 or s1 + s2 <= 0
    """
    if not s1 < 1.0:
        raise ParameterError(f"product estimate requires s1 < 1, got s1={s1}")
    if not s1 + s2 > 0.0:
        raise ParameterError(f"product estimate requires s1 + s2 > 0, got {s1 + s2}")
    if 1.0 - s1 < PRODUCT_BOUNDARY_MARGIN or s1 + s2 < PRODUCT_BOUNDARY_MARGIN:
        logger.warning(
            f"(s1, s2) = ({s1}, {s2}) lies within {PRODUCT_BOUNDARY_MARGIN} of the admissible "
            "boundary; the estimate's constant is not expected to be stable there"
        )

    params = {"s1": s1, "s2": s2}
    symmetric = RatioCollector("product", params)
    one_term = RatioCollector("product-one-term", params) if s2 < 1.0 else None

    for fi, gi in _pairs(f, g):
        lhs = homogeneous_norm(exact_product(fi, gi), s1 + s2 - 1.0, drop_mean=True)
        f1, f2 = homogeneous_norm(fi, s1), homogeneous_norm(fi, s2)
        g1, g2 = homogeneous_norm(gi, s1), homogeneous_norm(gi, s2)
        symmetric.add(fi.grid.label, _ratio(lhs, f1 * g2 + f2 * g1))
        if one_term is not None:
            one_term.add(fi.grid.label, _ratio(lhs, f1 * g2))

    return symmetric.report(secondary=one_term.report() if one_term else None)


def check_riesz_lp(thetas: Family, p: float) -> RatioReport:
    """
    L^p boundedness of the velocity map: max(||u1||_p, ||u2||_p) / ||theta||_p.

    At p = 2 the symbols have modulus <= 1, so 1 + EXACT_RTOL is asserted there.

    Raises:
        ParameterError: If p is not in the open interval (1, inf)
    """
    if not (1.0 < p < np.inf):
        raise ParameterError(f"Riesz transforms are bounded only for 1 < p < inf, got p={p}")
    collector = RatioCollector("riesz", {"p": p}, bound=1.0 + EXACT_RTOL if p == 2 else None)
    for theta in _fields(thetas):
        u = riesz_velocity(theta)
        lhs = max(lp_norm(inverse_transform(u.u1), p), lp_norm(inverse_transform(u.u2), p))
        collector.add(theta.grid.label, _ratio(lhs, lp_norm(inverse_transform(theta), p)))
    return collector.report()


def check_commutator(f: Family, g: Family, s: float, a: float) -> RatioReport:
    """
    Fractional Leibniz commutator estimate for s > 1 and a in (0, 1):

        || |nabla|^s(fg) - f |nabla|^s g ||
            <= C (|| |nabla|^(s+a) f || || |nabla|^(1-a) g || + || |nabla|^(s-1+a) g || || |nabla|^(2-a) f ||)

    The secondary report holds the product estimate

        || |nabla|^s(fg) || <= C (|| |nabla|^(s+a) f || || |nabla|^(1-a) g || + || |nabla|^(s+a) g || || |nabla|^(1-a) f ||)

    Means are removed from f and g first. Products are formed on the 2x padded grid.

    Raises:
        ParameterError: If s <= 1 or a is outside (0, 1)
    """
    if not s > 1.0:
        raise ParameterError(f"commutator estimate requires s > 1, got s={s}")
    if not 0.0 < a < 1.0:
        raise ParameterError(f"commutator estimate requires a in (0, 1), got a={a}")

    params = {"s": s, "a": a}
    commutator = RatioCollector("commutator", params)
    product = RatioCollector("commutator-product", params)

    for fi, gi in _pairs(f, g):
        fi, gi = _mean_free(fi), _mean_free(gi)
        fine = fi.grid.padded(2)
        fp = pad_spectrum(fi, fine)
        gp = pad_spectrum(gi, fine)
        f_samples = samples_from_spectrum(fine, fp.coefficients)
        g_samples = samples_from_spectrum(fine, gp.coefficients)
        dg_samples = samples_from_spectrum(fine, fractional_isotropic(gp, s).coefficients)

        d_fg = fractional_isotropic(
            SpectralField(fine, spectrum_from_samples(fine, f_samples * g_samples)), s
        )
        f_dg = SpectralField(fine, spectrum_from_samples(fine, f_samples * dg_samples))

        lhs = l2_norm(d_fg - f_dg)
        rhs = homogeneous_norm(fi, s + a) * homogeneous_norm(gi, 1.0 - a) + homogeneous_norm(
            gi, s - 1.0 + a
        ) * homogeneous_norm(fi, 2.0 - a)
        commutator.add(fi.grid.label, _ratio(lhs, rhs))

        rhs_product = homogeneous_norm(fi, s + a) * homogeneous_norm(gi, 1.0 - a) + homogeneous_norm(
            gi, s + a
        ) * homogeneous_norm(fi, 1.0 - a)
        product.add(fi.grid.label, _ratio(l2_norm(d_fg), rhs_product))

    return commutator.report(secondary=product.report())


def pointwise_product_constant(r: float) -> float:
    """C(r) = 2^max(0, r-1), the constant of |x + y|^r <= C(r)(|x|^r + |y|^r)."""
    return 2.0 ** max(0.0, r - 1.0)


def check_pointwise_product(f: Family, g: Family, axis: int, r: float) -> RatioReport:
    """
    Weighted sup bound of a product spectrum:

        max_k |k_axis|^r |(fg)^(k)| <= C(r) (||f|| || |d_axis|^r g || + ||g|| || |d_axis|^r f ||)

    with C(r) = 2^max(0, r-1) asserted (times 1 + PRODUCT_RTOL). The product is
    formed on the 2x padded grid, so its spectrum is the exact convolution.

    Raises:
        ParameterError: If r <= 0 or the axis is not 1 or 2
    """
    if not r > 0.0:
        raise ParameterError(f"pointwise product bound requires r > 0, got r={r}")
    if axis not in (1, 2):
        raise ParameterError(f"axis must be 1 or 2, got {axis}")
    constant = pointwise_product_constant(r)
    collector = RatioCollector(
        "pointwise-product", {"axis": axis, "r": r, "constant": constant}, bound=constant * (1.0 + PRODUCT_RTOL)
    )
    for fi, gi in _pairs(f, g):
        fg = exact_product(fi, gi)
        k = fg.grid.K1 if axis == 1 else fg.grid.K2
        lhs = float(np.max(np.abs(k) ** r * np.abs(fg.coefficients)))
        rhs = l2_norm(fi) * directional_norm(gi, axis, r) + l2_norm(gi) * directional_norm(
            fi, axis, r
        )
        collector.add(fi.grid.label, _ratio(lhs, rhs))
    return collector.report()


def check_sobolev_interpolation(fields: Family, s_low: float, s_high: float) -> RatioReport:
    """
    ||f||_{H^s'} <= ||f||_{L^2}^(1 - s'/s) ||f||_{H^s}^(s'/s) for 0 <= s' <= s, s > 0.

    Raises:
        ParameterError: If the indices are not ordered as 0 <= s_low <= s_high, s_high > 0
    """
    if not (0.0 <= s_low <= s_high and s_high > 0.0):
        raise ParameterError(
            f"Sobolev interpolation requires 0 <= s_low <= s_high and s_high > 0, got ({s_low}, {s_high})"
        )
    weight = s_low / s_high
    collector = RatioCollector(
        "sobolev-interpolation", {"s_low": s_low, "s_high": s_high}, bound=1.0 + EXACT_RTOL
    )
    for f in _fields(fields):
        rhs = l2_norm(f) ** (1.0 - weight) * sobolev_norm(f, s_high) ** weight
        collector.add(f.grid.label, _ratio(sobolev_norm(f, s_low), rhs))
    return collector.report()


def check_lp_interpolation(fields: Family, p: float) -> RatioReport:
    """
    ||f||_p^p <= ||f||_inf^(p-2) ||f||_2^2 for 2 <= p < inf, on lattice quadrature.

    Raises:
        ParameterError: If p < 2 or p is infinite
    """
    if not (2.0 <= p < np.inf):
        raise ParameterError(f"L^p interpolation requires 2 <= p < inf, got p={p}")
    collector = RatioCollector("lp-interpolation", {"p": p}, bound=1.0 + EXACT_RTOL)
    for f in _fields(fields):
        samples = inverse_transform(f)
        rhs = lp_norm(samples, np.inf) ** (p - 2.0) * lp_norm(samples, 2.0) ** 2
        collector.add(f.grid.label, _ratio(lp_norm(samples, p) ** p, rhs))
    return collector.report()
