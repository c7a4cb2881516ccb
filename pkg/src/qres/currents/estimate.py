"""Epsilon schedules and limit extrapolation for current pairings.

Every pairing is computed on a decreasing geometric ladder of radii.  The
estimate keeps the full ladder (for convergence diagnostics and CSV export),
a quadratic-in-epsilon least-squares extrapolation to zero, and a convergence
verdict based on the decay of successive differences.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence, Tuple

import numpy as np

from ..qcore import Quat

# a difference below this times the value scale counts as converged noise
ZERO_FLOOR = 1e-12


@dataclass(frozen=True)
class EpsilonSchedule:
    """Geometric ladder eps0 * ratio^k, k = 0 .. count-1."""

    eps0: float
    ratio: float = 0.7
    count: int = 12

    def __post_init__(self):
        if not self.eps0 > 0:
            raise ValueError("eps0 must be positive")
        if not 0.0 < self.ratio < 1.0:
            raise ValueError("ratio must lie in (0, 1)")
        if self.count < 3:
            raise ValueError("need at least 3 rungs")

    @classmethod
    def for_radius(cls, R: float, ratio: float = 0.7,
                   count: int = 12) -> "EpsilonSchedule":
        """Default ladder for a test form supported in radius R."""
        return cls(0.5 * float(R), ratio, count)

    def values(self) -> Tuple[float, ...]:
        return tuple(self.eps0 * self.ratio ** k for k in range(self.count))


@dataclass(frozen=True)
class CurrentEstimate:
    """Result of an epsilon-limit computation."""

    epsilons: Tuple[float, ...]
    values: Tuple[Quat, ...]
    extrapolated: Quat
    converged: bool
    diff_ratios: Tuple[float, ...]
    part: str = "(1,0)"
    notes: Tuple[str, ...] = ()

    def rows(self):
        """(epsilon, re1, im1, re_j, im_j) per rung, for tabular export."""
        out = []
        for eps, v in zip(self.epsilons, self.values):
            z1, z2 = complex(v.z1), complex(v.z2)
            out.append((eps, z1.real, z1.imag, z2.real, z2.imag))
        return out


def _extrapolate(epsilons: Sequence[float], values: Sequence[Quat]) -> Quat:
    m = min(5, len(values))
    if m < 3:
        return values[-1]
    eps = np.array(epsilons[-m:], dtype=float)
    a = np.stack([np.ones(m), eps, eps * eps], axis=1).astype(complex)
    b = np.array([[complex(v.z1), complex(v.z2)] for v in values[-m:]],
                 dtype=complex)
    coef, *_ = np.linalg.lstsq(a, b, rcond=None)
    return Quat(complex(coef[0, 0]), complex(coef[0, 1]))


def finalize(epsilons: Sequence[float], values: Sequence[Quat],
             part: str = "(1,0)",
             notes: Sequence[str] = ()) -> CurrentEstimate:
    """Assemble the estimate: extrapolate and judge convergence.

    Converged means the last few successive differences decay with ratio
    below 0.8, or have hit the zero floor relative to the value scale.
    """
    if len(epsilons) != len(values):
        raise ValueError("epsilons and values must align")
    if not values:
        raise ValueError("no values to finalize")
    norms = [v.norm() for v in values]
    scale = max(1.0, max(norms))
    floor = ZERO_FLOOR * scale
    diffs = [(values[i + 1] - values[i]).norm() for i in range(len(values) - 1)]
    ratios = tuple(diffs[i + 1] / max(diffs[i], 1e-300)
                   for i in range(len(diffs) - 1))
    window = min(4, len(ratios))
    if len(values) >= 5 and window > 0:
        tail_ok = []
        for i in range(len(ratios) - window, len(ratios)):
            tail_ok.append(ratios[i] < 0.8 or diffs[i + 1] < floor)
        converged = all(tail_ok)
    else:
        converged = False
    return CurrentEstimate(
        epsilons=tuple(float(e) for e in epsilons),
        values=tuple(values),
        extrapolated=_extrapolate(epsilons, values),
        converged=converged,
        diff_ratios=ratios,
        part=part,
        notes=tuple(notes),
    )
