"""Seeded verification suite running every inequality checker over random families."""

import logging
from typing import Callable, Dict, Iterator, List, Optional, Sequence

import numpy as np
from pydantic import BaseModel

from aqg_lab.core.errors import ParameterError
from aqg_lab.core.settings import settings
from aqg_lab.spectral import Grid, SpectralField

from .lemmas import (
    RatioReport,
    check_commutator,
    check_interpolation,
    check_lp_interpolation,
    check_pointwise_product,
    check_product_estimate,
    check_riesz_lp,
    check_sobolev_interpolation,
)
from .random_fields import random_field

logger = logging.getLogger(__name__)

DEFAULT_RESOLUTIONS = (64, 128, 256)

# Largest rise of a finer grid's maximum over the coarsest one accepted as "not growing"
RESOLUTION_GROWTH = 0.2

# Default mode patch half-width on an n x n grid is n // PATCH_DIVISOR
PATCH_DIVISOR = 6

# Lemma id -> (default sample count, stable index used to derive the family seed)
LEMMAS: Dict[str, tuple] = {
    "interpolation": (500, 1),
    "product": (200, 2),
    "riesz": (200, 3),
    "commutator": (200, 4),
    "pointwise-product": (500, 5),
    "sobolev-interpolation": (500, 6),
    "lp-interpolation": (500, 7),
}


class LemmaVerdict(BaseModel):
    """One checker run together with the criterion it was judged by."""

    report: RatioReport
    criterion: str
    passed: bool


def patch_for(grid: Grid) -> int:
    return min(grid.n1, grid.n2) // PATCH_DIVISOR


class SampleFamily:
    """
    Reproducible random fields that gain content under refinement.

    Sample i is drawn from SeedSequence([seed, family, i, stream]) on the patch of the
    finest resolution and truncated to n // 6 on each grid, so a refined grid sees
    the coarse field plus the modes it newly resolves. A fixed kmax keeps the same
    patch on every grid instead.
    """

    def __init__(
        self,
        seed: int,
        family: int,
        resolutions: Sequence[int] = DEFAULT_RESOLUTIONS,
        kmax: Optional[int] = None,
        gamma: float = 2.0,
    ):
        self.seed = seed
        self.family = family
        self.kmax = kmax
        self.gamma = gamma
        self.reference = kmax if kmax is not None else max(resolutions) // PATCH_DIVISOR

    def patch(self, grid: Grid) -> int:
        return self.kmax if self.kmax is not None else patch_for(grid)

    def field(self, grid: Grid, index: int, stream: int = 0) -> SpectralField:
        rng = np.random.default_rng(np.random.SeedSequence([self.seed, self.family, index, stream]))
        return random_field(
            grid, rng, gamma=self.gamma, kmax=self.reference, truncate=self.patch(grid)
        )

    def fields(self, grid: Grid, count: int, stream: int = 0) -> Iterator[SpectralField]:
        return (self.field(grid, i, stream) for i in range(count))


def _stable(report: RatioReport) -> bool:
    return report.resolution_growth() <= RESOLUTION_GROWTH


def _judge_bound(report: RatioReport) -> LemmaVerdict:
    return LemmaVerdict(
        report=report,
        criterion=f"max ratio <= {report.bound:.12g}",
        passed=bool(report.within_bound),
    )


def _judge_stability(report: RatioReport) -> LemmaVerdict:
    stable = _stable(report)
    if report.secondary is not None:
        stable = stable and _stable(report.secondary)
    return LemmaVerdict(
        report=report,
        criterion=(
            f"finer-grid maxima at most {RESOLUTION_GROWTH:.0%} above the coarsest "
            f"(spread {report.resolution_spread():.3g})"
        ),
        passed=stable,
    )


def _over_resolutions(
    resolutions: Sequence[int], box: float, make: Callable[[Grid], Iterator]
) -> Iterator:
    for n in resolutions:
        yield from make(Grid(n, n, box, box))


def verify_lemmas(
    lemma: Optional[str] = None,
    samples: Optional[int] = None,
    seed: Optional[int] = None,
    resolutions: Sequence[int] = DEFAULT_RESOLUTIONS,
    box: float = 2.0 * np.pi,
    kmax: Optional[int] = None,
    gamma: float = 2.0,
) -> List[LemmaVerdict]:
    """
    Run the inequality suite.

    Exact inequalities (anisotropic interpolation, pointwise product, the two
    interpolation checks and the Riesz bound at p = 2) are evaluated on the
    coarsest resolution against their asserted bound. The estimates with unknown
    constants (product, Riesz at p = 4, commutator) are evaluated on every
    resolution and judged by whether their per-resolution maxima grow as the
    refined grids resolve more of each sample.

    Args:
        lemma (Optional[str]): One id from LEMMAS; None runs all of them
        samples (Optional[int]): Family size; None uses each lemma's default
        seed (Optional[int]): Master seed; defaults to settings.lemma_seed
        resolutions (Sequence[int]): Square grid sizes
        box (float): Box side length
        kmax (Optional[int]): Fixed mode patch half-width; None scales it as n // 6
        gamma (float): Spectral decay of the random family

    Returns:
        List[LemmaVerdict]: One verdict per checker run, in a fixed order

    Raises:
        ParameterError: If the lemma id is unknown
    """
    if lemma is not None and lemma not in LEMMAS:
        raise ParameterError(f"unknown lemma {lemma!r}; choose from {', '.join(LEMMAS)}")
    seed = settings.lemma_seed if seed is None else seed
    selected = [lemma] if lemma is not None else list(LEMMAS)
    coarse = Grid(resolutions[0], resolutions[0], box, box)

    verdicts: List[LemmaVerdict] = []
    for name in selected:
        default_count, family_index = LEMMAS[name]
        count = samples if samples is not None else default_count
        family = SampleFamily(seed, family_index, resolutions, kmax=kmax, gamma=gamma)
        logger.info(f"Checking inequality {name} on {count} samples (seed {seed})")

        if name == "interpolation":
            for axis in (1, 2):
                report = check_interpolation(family.fields(coarse, count), axis, 0.2, 1.4, 0.5, 2.0)
                verdicts.append(_judge_bound(report))

        elif name == "product":
            report = check_product_estimate(
                _over_resolutions(resolutions, box, lambda g: family.fields(g, count, 0)),
                _over_resolutions(resolutions, box, lambda g: family.fields(g, count, 1)),
                0.5,
                0.5,
            )
            verdicts.append(_judge_stability(report))

        elif name == "riesz":
            verdicts.append(_judge_bound(check_riesz_lp(family.fields(coarse, count), 2.0)))
            report = check_riesz_lp(
                _over_resolutions(resolutions, box, lambda g: family.fields(g, count)), 4.0
            )
            verdicts.append(_judge_stability(report))

        elif name == "commutator":
            report = check_commutator(
                _over_resolutions(resolutions, box, lambda g: family.fields(g, count, 0)),
                _over_resolutions(resolutions, box, lambda g: family.fields(g, count, 1)),
                2.0,
                0.6,
            )
            verdicts.append(_judge_stability(report))

        elif name == "pointwise-product":
            for axis in (1, 2):
                for r in (0.5, 1.0, 1.7):
                    report = check_pointwise_product(
                        family.fields(coarse, count, 0), family.fields(coarse, count, 1), axis, r
                    )
                    verdicts.append(_judge_bound(report))

        elif name == "sobolev-interpolation":
            report = check_sobolev_interpolation(family.fields(coarse, count), 0.5, 2.0)
            verdicts.append(_judge_bound(report))

        elif name == "lp-interpolation":
            for p in (4.0, 8.0):
                verdicts.append(_judge_bound(check_lp_interpolation(family.fields(coarse, count), p)))

    for verdict in verdicts:
        level = logging.INFO if verdict.passed else logging.ERROR
        logger.log(
            level,
            f"{verdict.report.lemma} {verdict.report.params}: max ratio "
            f"{verdict.report.max_ratio:.6g} ({verdict.criterion}) -> "
            f"{'passed' if verdict.passed else 'FAILED'}",
        )
    return verdicts
