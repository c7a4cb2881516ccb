"""Compactly supported test forms for current pairings.

A coefficient profile is a polynomial in (z1, z1bar, z2, z2bar) times a smooth
cutoff bump in one of three radii: the full modulus |q|, or |z1| or |z2|
alone.  Every profile vanishes identically outside a known radius, which the
integrators use to truncate their domains exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from ..errors import ParseError
from ..parsing import parse_poly
from ..symfun import ConjPoly

RADIAL_KINDS = ("q", "z1", "z2")


def bump(t):
    """Standard smooth bump: exp(1 - 1/(1 - t^2)) for |t| < 1, else 0.

    Normalised so bump(0) == 1.  Vectorised; the argument may be any real
    array."""
    t = np.asarray(t, dtype=float)
    out = np.zeros(t.shape)
    inside = np.abs(t) < 1.0
    ti = t[inside]
    out[inside] = np.exp(1.0 - 1.0 / (1.0 - ti * ti))
    if out.ndim == 0:
        return float(out)
    return out


@dataclass(frozen=True)
class Profile:
    """One test-form coefficient: poly(z1, z1bar, z2, z2bar) * bump(r / R)."""

    poly: ConjPoly
    R: float
    radial: str = "q"

    def __post_init__(self):
        if self.radial not in RADIAL_KINDS:
            raise ValueError(f"unknown radial kind {self.radial!r}")
        if not self.R > 0:
            raise ValueError("support radius must be positive")

    @classmethod
    def bump_only(cls, R: float, radial: str = "q") -> "Profile":
        return cls(ConjPoly.one(), float(R), radial)

    def _radius(self, Z1, Z2):
        if self.radial == "q":
            return np.sqrt(np.abs(Z1) ** 2 + np.abs(Z2) ** 2)
        if self.radial == "z1":
            return np.abs(Z1)
        return np.abs(Z2)

    def eval(self, Z1, Z2):
        Z1 = np.asarray(Z1, dtype=complex)
        Z2 = np.asarray(Z2, dtype=complex)
        return self.poly.eval_numeric(Z1, Z2) * bump(self._radius(Z1, Z2) / self.R)

    def conjugated(self) -> "Profile":
        return Profile(self.poly.conjugate(), self.R, self.radial)

    def support_lambda(self, eta):
        """Radial extent of the support along the chart ray at angle eta."""
        eta = np.asarray(eta, dtype=float)
        if self.radial == "q":
            return np.full(eta.shape, self.R)
        if self.radial == "z1":
            return self.R / np.maximum(np.cos(eta), 1e-12)
        return self.R / np.maximum(np.sin(eta), 1e-12)


def _support_union(profiles, eta):
    out = np.zeros(np.asarray(eta, dtype=float).shape)
    for p in profiles:
        if p is not None:
            out = np.maximum(out, p.support_lambda(eta))
    return out


def _support_radius(profiles) -> float:
    rs = [p.R for p in profiles if p is not None]
    if not rs:
        raise ValueError("test form has no nonzero coefficient")
    return max(rs)


@dataclass(frozen=True)
class TestForm2:
    """2-form test data: coefficients of dz1^dz1bar, dz1^dz2bar, dz2^dz1bar,
    dz2^dz2bar in that order.  None means the coefficient is zero."""

    __test__ = False  # pytest: data class, not a test case

    phi11: Optional[Profile] = None
    phi12: Optional[Profile] = None
    phi21: Optional[Profile] = None
    phi22: Optional[Profile] = None

    @property
    def coefficients(self):
        return (self.phi11, self.phi12, self.phi21, self.phi22)

    @property
    def is_zero(self) -> bool:
        return all(p is None for p in self.coefficients)

    @property
    def support_radius(self) -> float:
        return _support_radius(self.coefficients)

    def support_lambda(self, eta):
        return _support_union(self.coefficients, eta)


@dataclass(frozen=True)
class TestForm3:
    """3-form test data: psi1 rides dz1bar^dz2^dz2bar, psi2 rides
    dz1^dz1bar^dz2bar."""

    __test__ = False  # pytest: data class, not a test case

    psi1: Optional[Profile] = None
    psi2: Optional[Profile] = None

    @property
    def coefficients(self):
        return (self.psi1, self.psi2)

    @property
    def is_zero(self) -> bool:
        return all(p is None for p in self.coefficients)

    @property
    def support_radius(self) -> float:
        return _support_radius(self.coefficients)

    def support_lambda(self, eta):
        return _support_union(self.coefficients, eta)


def parse_profile(text: str, R: float, radial: str = "q") -> Optional[Profile]:
    """Parse a coefficient spec: '0', 'bump', or 'POLY*bump'."""
    s = text.strip()
    if s in ("", "0"):
        return None
    if s == "bump":
        return Profile.bump_only(R, radial)
    if s.endswith("*bump"):
        return Profile(parse_poly(s[: -len("*bump")]), float(R), radial)
    raise ParseError("expected '0', 'bump', or 'POLY*bump'", 0)
