"""Symmetric one-dimensional coordinate laws.

Each law is represented by its magnitude tail together with an independent
random sign, so the distribution of a coordinate is automatically symmetric.
The central object is the budget function

    G(u) = -log P(|X| >= u),

which is convex for the laws supported here.  Solvers in the witness module
consume the closed-form pieces exposed here: tails, moments of any real
order r >= 1, G, its slope, and the inverses needed for water-filling.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Tuple

import numpy as np
from scipy import integrate, optimize, special

_SQRT2 = math.sqrt(2.0)
_SQRT_2_PI = math.sqrt(2.0 / math.pi)


class LawError(ValueError):
    """Invalid coordinate-law construction or query."""


def _check_level(u: float) -> float:
    u = float(u)
    if u < 0 or not math.isfinite(u):
        raise LawError(f"tail level must be finite and >= 0, got {u}")
    return u


def _check_order(r: float) -> float:
    r = float(r)
    if r < 1 or not math.isfinite(r):
        raise LawError(f"moment order must be finite and >= 1, got {r}")
    return r


class CoordinateLaw:
    """Base interface; concrete laws override everything below."""

    kind: str = "abstract"

    # -- distribution ------------------------------------------------------
    def tail(self, u: float) -> float:
        """P(|X| >= u)."""
        raise NotImplementedError

    def moment(self, r: float) -> float:
        """||X||_r = (E|X|^r)^(1/r)."""
        raise NotImplementedError

    def abs_moment(self, r: float) -> float:
        """E|X|^r."""
        return self.moment(r) ** r

    def sample_magnitudes(self, rng: np.random.Generator, m: int) -> np.ndarray:
        raise NotImplementedError

    # -- budget geometry (used by the witness solvers) ---------------------
    def budget(self, u: float) -> float:
        """G(u) = -log tail(u); +inf where the tail vanishes."""
        t = self.tail(u)
        return math.inf if t <= 0.0 else -math.log(t)

    def free_level(self) -> float:
        """Largest u with G(u) = 0 (levels below cost no budget)."""
        return 0.0

    def level_for_budget(self, b: float) -> float:
        """Largest u with G(u) <= b."""
        raise NotImplementedError

    def slope_inverse(self, y: float, cap: float) -> float:
        """argmax_a { y*a - G(a) } clipped to [free_level, cap].

        This is the water-filling primitive: (G')^{-1}(y) for smooth G,
        with kinks resolved toward the larger level.
        """
        raise NotImplementedError

    # -- serialization -----------------------------------------------------
    def spec(self) -> dict:
        raise NotImplementedError

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        return f"{type(self).__name__}({self.spec()})"


@dataclass(frozen=True, repr=False)
class GaussianLaw(CoordinateLaw):
    """Standard normal coordinate."""

    kind: str = field(default="gaussian", init=False)

    def tail(self, u: float) -> float:
        return float(special.erfc(_check_level(u) / _SQRT2))

    def moment(self, r: float) -> float:
        r = _check_order(r)
        return _SQRT2 * (special.gamma((r + 1) / 2) / math.sqrt(math.pi)) ** (1 / r)

    def sample_magnitudes(self, rng, m):
        return np.abs(rng.standard_normal(m))

    def budget_slope(self, u: float) -> float:
        # d/du [-log erfc(u/sqrt2)] = sqrt(2/pi) exp(-u^2/2)/erfc(u/sqrt2)
        return _SQRT_2_PI * math.exp(-u * u / 2) / special.erfc(u / _SQRT2)

    def level_for_budget(self, b: float) -> float:
        return float(_SQRT2 * special.erfcinv(math.exp(-b)))

    def slope_inverse(self, y: float, cap: float) -> float:
        if y <= self.budget_slope(0.0):
            return 0.0
        if y >= self.budget_slope(cap):
            return cap
        return float(optimize.brentq(lambda a: self.budget_slope(a) - y, 0.0, cap, xtol=1e-13))

    def spec(self) -> dict:
        return {"kind": "gaussian"}


@dataclass(frozen=True, repr=False)
class SymmetricExponentialLaw(CoordinateLaw):
    """Two-sided exponential magnitude: P(|X| >= u) = exp(-rate*u).

    rate=1 matches the canonical double-exponential normalization
    (||X||_2 = sqrt(2)); rate=sqrt(2) gives unit variance.
    """

    rate: float = 1.0
    kind: str = field(default="symmetric_exponential", init=False)

    def __post_init__(self):
        if not (self.rate > 0 and math.isfinite(self.rate)):
            raise LawError(f"rate must be positive, got {self.rate}")

    def tail(self, u: float) -> float:
        return math.exp(-self.rate * _check_level(u))

    def moment(self, r: float) -> float:
        r = _check_order(r)
        return float(special.gamma(r + 1) ** (1 / r) / self.rate)

    def sample_magnitudes(self, rng, m):
        return rng.exponential(1.0 / self.rate, m)

    def level_for_budget(self, b: float) -> float:
        return b / self.rate

    def slope_inverse(self, y: float, cap: float) -> float:
        # G is linear with slope `rate`: the maximizer is bang-bang.
        return 0.0 if y < self.rate else cap

    def spec(self) -> dict:
        return {"kind": "symmetric_exponential", "rate": self.rate}


@dataclass(frozen=True, repr=False)
class RademacherLaw(CoordinateLaw):
    """Random sign: |X| = 1 almost surely."""

    kind: str = field(default="rademacher", init=False)

    def tail(self, u: float) -> float:
        return 1.0 if _check_level(u) <= 1.0 else 0.0

    def moment(self, r: float) -> float:
        _check_order(r)
        return 1.0

    def sample_magnitudes(self, rng, m):
        return np.ones(m)

    def free_level(self) -> float:
        return 1.0

    def level_for_budget(self, b: float) -> float:
        return 1.0

    def slope_inverse(self, y: float, cap: float) -> float:
        # budget is free up to 1 and infinite beyond
        return min(1.0, cap) if cap > 0 else 0.0

    def spec(self) -> dict:
        return {"kind": "rademacher"}


@dataclass(frozen=True, repr=False)
class TabulatedTailLaw(CoordinateLaw):
    """Law given by a tabulated convex budget function.

    ``grid_u``/``grid_g`` tabulate G(u) = -log P(|X| >= u); G is interpolated
    linearly between grid points (the tail is log-linear there) and the last
    slope extends beyond the grid, so the tail stays sub-exponential and
    convexity of the tabulation is preserved.
    """

    grid_u: Tuple[float, ...]
    grid_g: Tuple[float, ...]
    kind: str = field(default="canonical_convex_tail", init=False)

    def __post_init__(self):
        u = np.asarray(self.grid_u, dtype=float)
        g = np.asarray(self.grid_g, dtype=float)
        if u.ndim != 1 or u.shape != g.shape or u.size < 2:
            raise LawError("tabulation needs matching 1-D grids with >= 2 points")
        if u[0] != 0.0 or g[0] != 0.0:
            raise LawError("tabulation must start at (0, 0)")
        if np.any(np.diff(u) <= 0):
            raise LawError("grid levels must be strictly increasing")
        if np.any(g < 0) or np.any(np.diff(g) < 0):
            raise LawError("G must be nonnegative and nondecreasing")
        slopes = np.diff(g) / np.diff(u)
        if np.any(np.diff(slopes) < -1e-12):
            raise LawError("G must be convex (nondecreasing finite-difference slopes)")
        if slopes[-1] <= 0:
            raise LawError("final slope must be positive (integrable tail)")
        object.__setattr__(self, "_u", u)
        object.__setattr__(self, "_g", g)
        object.__setattr__(self, "_slopes", slopes)

    def _G(self, u: np.ndarray) -> np.ndarray:
        u = np.asarray(u, dtype=float)
        gu = np.interp(u, self._u, self._g)
        over = u > self._u[-1]
        if np.any(over):
            gu = np.where(over, self._g[-1] + self._slopes[-1] * (u - self._u[-1]), gu)
        return gu

    def tail(self, u: float) -> float:
        return float(np.exp(-self._G(_check_level(u))))

    def budget(self, u: float) -> float:
        return float(self._G(u))

    def abs_moment(self, r: float) -> float:
        r = _check_order(r)
        # E|X|^r = int_0^inf r u^(r-1) exp(-G(u)) du, split at the grid knots
        total = 0.0
        knots = list(self._u)
        for a, b in zip(knots[:-1], knots[1:]):
            val, _ = integrate.quad(lambda x: r * x ** (r - 1) * math.exp(-self._G(x)), a, b)
            total += val
        tail_val, _ = integrate.quad(
            lambda x: r * x ** (r - 1) * math.exp(-self._G(x)), knots[-1], np.inf
        )
        return total + tail_val

    def moment(self, r: float) -> float:
        r = _check_order(r)
        return self.abs_moment(r) ** (1 / r)

    def sample_magnitudes(self, rng, m):
        return self.level_for_budget_vec(rng.exponential(1.0, m))

    def free_level(self) -> float:
        nz = np.nonzero(self._g > 0)[0]
        return float(self._u[nz[0] - 1]) if nz.size else float(self._u[-1])

    def level_for_budget_vec(self, b: np.ndarray) -> np.ndarray:
        b = np.asarray(b, dtype=float)
        out = np.interp(b, self._g, self._u)
        over = b > self._g[-1]
        if np.any(over):
            out = np.where(over, self._u[-1] + (b - self._g[-1]) / self._slopes[-1], out)
        return out

    def level_for_budget(self, b: float) -> float:
        return float(self.level_for_budget_vec(b))

    def slope_inverse(self, y: float, cap: float) -> float:
        # piecewise-linear G: take the right knot of the last piece with slope <= y
        if y < self._slopes[0]:
            best = self.free_level()
        elif y >= self._slopes[-1]:
            best = cap
        else:
            idx = np.searchsorted(self._slopes, y, side="right")
            best = float(self._u[idx])
        return min(max(best, self.free_level()), cap)

    def spec(self) -> dict:
        return {
            "kind": "canonical_convex_tail",
            "grid_u": list(self._u),
            "grid_g": list(self._g),
        }


def law_from_spec(spec: dict) -> CoordinateLaw:
    kind = spec.get("kind")
    if kind == "gaussian":
        return GaussianLaw()
    if kind == "symmetric_exponential":
        return SymmetricExponentialLaw(rate=float(spec.get("rate", 1.0)))
    if kind == "rademacher":
        return RademacherLaw()
    if kind == "canonical_convex_tail":
        return TabulatedTailLaw(tuple(spec["grid_u"]), tuple(spec["grid_g"]))
    raise LawError(f"unknown coordinate law kind: {kind!r}")


def isotropic_exponential() -> SymmetricExponentialLaw:
    """Exponential coordinate scaled to unit variance (rate sqrt(2))."""
    return SymmetricExponentialLaw(rate=_SQRT2)
