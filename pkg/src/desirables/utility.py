"""Strictly increasing utility functions with exact inverses where closed forms exist.

Every utility maps rewards from an open interval ``(domain_lo, inf)`` to the
reals and is strictly increasing there.  ``inverse`` undoes ``eval`` exactly
for the closed-form kinds and by bracketed bisection for composed kinds.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError, ImageError

__all__ = [
    "Utility",
    "Linear",
    "LogShift",
    "Sqrt",
    "PowerDiscounted",
    "Composed",
    "PhiScale",
    "PhiPower",
    "PhiPoly",
    "PhiTable",
    "AdmissibilityReport",
    "audit_admissibility",
]

# Bisection fallback: absolute tolerance on the utility value and iteration cap.
_BISECT_TOL = 1e-12
_BISECT_MAX_ITER = 200


class Utility:
    """Base class for utility functions u with domain (domain_lo, inf)."""

    kind: str = "abstract"
    #: Exclusive lower bound of the valid reward domain.
    domain_lo: float = -math.inf
    #: True when the kind needs strictly positive arguments and gambles must
    #: be evaluated on wealth-shifted rewards w + f.
    needs_wealth_shift: bool = False
    #: Exclusive lower bound of the image u((domain_lo, inf)); -inf if unbounded.
    image_lo: float = -math.inf

    def eval(self, x: float) -> float:
        """Utility of reward ``x``.  Raises DomainError when x <= domain_lo."""
        self._check_domain(x)
        return self._eval(x)

    def inverse(self, v: float) -> float:
        """Reward whose utility equals ``v``.  Raises ImageError when v is not attained."""
        self._check_image(v)
        return self._inverse(v)

    def _check_domain(self, x: float) -> None:
        if not x > self.domain_lo:
            raise DomainError(
                f"{self.kind}: reward {x!r} outside domain x > {self.domain_lo!r}"
            )

    def _check_image(self, v: float) -> None:
        if not v > self.image_lo:
            raise ImageError(
                f"{self.kind}: value {v!r} outside image v > {self.image_lo!r}"
            )

    def _eval(self, x: float) -> float:
        raise NotImplementedError

    def _inverse(self, v: float) -> float:
        raise NotImplementedError


@dataclass(frozen=True)
class Linear(Utility):
    """Identity utility u(x) = x."""

    kind = "linear"
    domain_lo = -math.inf
    image_lo = -math.inf

    def _eval(self, x: float) -> float:
        return float(x)

    def _inverse(self, v: float) -> float:
        return float(v)


@dataclass(frozen=True)
class LogShift(Utility):
    """Shifted logarithm u(x) = log(1 + x) on x > -1."""

    kind = "log_shift"
    domain_lo = -1.0
    image_lo = -math.inf

    def _eval(self, x: float) -> float:
        return math.log1p(x)

    def _inverse(self, v: float) -> float:
        return math.expm1(v)


@dataclass(frozen=True)
class Sqrt(Utility):
    """Square-root utility u(x) = sqrt(x) on x > 0."""

    kind = "sqrt"
    domain_lo = 0.0
    image_lo = 0.0

    def _eval(self, x: float) -> float:
        return math.sqrt(x)

    def _inverse(self, v: float) -> float:
        return v * v


@dataclass(frozen=True)
class PowerDiscounted(Utility):
    """Power-family utility u(x) = (x^(1-alpha) - alpha) / (1 - alpha) on x > 0.

    ``alpha`` in [0, 1) sets the curvature: alpha = 0 is the identity, and as
    alpha -> 1 the values approach log(x) + 1.  u(1) = 1 for every alpha.
    Because positive arguments are required, gambles are evaluated on
    wealth-shifted rewards (see :func:`desirables.gamble.transform`).
    """

    alpha: float = 0.0

    kind = "power_discounted"
    domain_lo = 0.0
    needs_wealth_shift = True

    def __post_init__(self):
        if not 0.0 <= self.alpha < 1.0:
            raise ValueError(f"alpha must lie in [0, 1), got {self.alpha!r}")

    @property
    def image_lo(self) -> float:  # type: ignore[override]
        # x -> 0+ limit of (x^(1-alpha) - alpha)/(1 - alpha).
        return -self.alpha / (1.0 - self.alpha)

    def _eval(self, x: float) -> float:
        b = 1.0 - self.alpha
        return (x**b - self.alpha) / b

    def _inverse(self, v: float) -> float:
        b = 1.0 - self.alpha
        return (v * b + self.alpha) ** (1.0 / b)


class _PhiBase:
    """Strictly increasing reparameterization with phi(0) = 0, applied on top of a utility."""

    form: str = "abstract"

    def __call__(self, w: float) -> float:
        raise NotImplementedError


@dataclass(frozen=True)
class PhiScale(_PhiBase):
    """phi(w) = c * w with c > 0."""

    c: float

    form = "scale"

    def __post_init__(self):
        if not self.c > 0:
            raise ValueError(f"scale factor must be positive, got {self.c!r}")

    def __call__(self, w: float) -> float:
        return self.c * w


@dataclass(frozen=True)
class PhiPower(_PhiBase):
    """Sign-preserving power phi(w) = sign(w) * |w|^p with p > 0."""

    p: float

    form = "power"

    def __post_init__(self):
        if not self.p > 0:
            raise ValueError(f"power exponent must be positive, got {self.p!r}")

    def __call__(self, w: float) -> float:
        return math.copysign(abs(w) ** self.p, w)


@dataclass(frozen=True)
class PhiPoly(_PhiBase):
    """Polynomial phi(w) = sum_i coeffs[i] * w^i with coeffs[0] = 0.

    Monotonicity is not validated here; audits report non-monotone choices.
    """

    coeffs: tuple[float, ...]

    form = "poly"

    def __post_init__(self):
        coeffs = tuple(float(c) for c in self.coeffs)
        object.__setattr__(self, "coeffs", coeffs)
        if not coeffs or coeffs[0] != 0.0:
            raise ValueError("polynomial needs a zero constant term so that phi(0) = 0")

    def __call__(self, w: float) -> float:
        acc = 0.0
        for c in reversed(self.coeffs):
            acc = acc * w + c
        return acc


@dataclass(frozen=True)
class PhiTable(_PhiBase):
    """Tabulated monotone map, linear inside the table and linearly extrapolated outside.

    The table must bracket 0 and interpolate phi(0) = 0.
    """

    xs: tuple[float, ...]
    ys: tuple[float, ...]

    form = "table"

    def __post_init__(self):
        xs = tuple(float(v) for v in self.xs)
        ys = tuple(float(v) for v in self.ys)
        object.__setattr__(self, "xs", xs)
        object.__setattr__(self, "ys", ys)
        if len(xs) != len(ys) or len(xs) < 2:
            raise ValueError("table needs matching x/y sequences of length >= 2")
        if any(b <= a for a, b in zip(xs, xs[1:])):
            raise ValueError("table x values must be strictly increasing")
        if any(b <= a for a, b in zip(ys, ys[1:])):
            raise ValueError("table y values must be strictly increasing")
        if not xs[0] <= 0.0 <= xs[-1] or abs(self(0.0)) > 1e-12:
            raise ValueError("table must bracket 0 with phi(0) = 0")

    def __call__(self, w: float) -> float:
        xs, ys = self.xs, self.ys
        if w <= xs[0]:
            i = 0
        elif w >= xs[-2]:
            i = len(xs) - 2
        else:
            i = int(np.searchsorted(xs, w, side="right")) - 1
        slope = (ys[i + 1] - ys[i]) / (xs[i + 1] - xs[i])
        return ys[i] + slope * (w - xs[i])


@dataclass(frozen=True)
class Composed(Utility):
    """Composition phi(base(x)) of an increasing phi with phi(0) = 0 over a base utility.

    ``inverse`` solves phi(w) = v for w by bracketed bisection (bracket
    expansion, 1e-12 absolute tolerance, 200 iterations) and then applies the
    base's closed-form inverse.
    """

    base: Utility
    phi: _PhiBase

    kind = "composed"

    @property
    def domain_lo(self) -> float:  # type: ignore[override]
        return self.base.domain_lo

    @property
    def needs_wealth_shift(self) -> bool:  # type: ignore[override]
        return self.base.needs_wealth_shift

    @property
    def image_lo(self) -> float:  # type: ignore[override]
        lo = self.base.image_lo
        return self.phi(lo) if math.isfinite(lo) else -math.inf

    def _eval(self, x: float) -> float:
        return self.phi(self.base._eval(x))

    def _inverse(self, v: float) -> float:
        w = self._bisect_phi(v)
        return self.base.inverse(w)

    def _bisect_phi(self, v: float) -> float:
        base_lo = self.base.image_lo
        lo = base_lo + 1e-9 if math.isfinite(base_lo) else -1.0
        hi = max(lo + 1.0, 1.0)
        # Expand the bracket until phi(lo) <= v <= phi(hi).
        for _ in range(200):
            if self.phi(hi) >= v:
                break
            hi = hi * 2 if hi > 0 else hi / 2 + 1.0
        else:
            raise ImageError(f"composed: value {v!r} not bracketed from above")
        for _ in range(200):
            if self.phi(lo) <= v:
                break
            if math.isfinite(base_lo):
                lo = base_lo + (lo - base_lo) / 2
            else:
                lo = lo * 2 if lo < 0 else lo / 2 - 1.0
        else:
            raise ImageError(f"composed: value {v!r} not bracketed from below")
        # A width-based stop reaches 1e-12 on v comfortably within the
        # iteration cap and keeps the round-trip tight even where phi is flat.
        for _ in range(_BISECT_MAX_ITER):
            mid = 0.5 * (lo + hi)
            if (hi - lo) <= 1e-14 * max(1.0, abs(mid)):
                return mid
            if self.phi(mid) - v < 0:
                lo = mid
            else:
                hi = mid
        return 0.5 * (lo + hi)


@dataclass(frozen=True)
class AdmissibilityReport:
    """Numerical audit of a utility on an evaluation grid.

    ``zero_normalized`` is None when 0 lies outside the domain, in which case
    the normalization requirement does not apply.  ``image_interval`` is
    derived from strict monotonicity: a continuous strictly increasing map
    sends an interval to an interval.
    """

    strictly_increasing: bool
    zero_normalized: bool | None
    image_interval: bool
    grid_lo: float
    grid_hi: float
    grid_n: int
    violations: tuple[float, ...] = field(default=())


def audit_admissibility(
    u: Utility, grid_n: int, lo: float | None = None, hi: float | None = None
) -> AdmissibilityReport:
    """Audit strict monotonicity, zero normalization, and image convexity on a grid.

    The default window is (domain_lo + 0.01, 100), or [-100, 100] when the
    domain is unbounded below.  Failures are reported, never raised.
    """
    if grid_n < 3:
        raise ValueError(f"grid_n must be at least 3, got {grid_n}")
    if lo is None:
        lo = u.domain_lo + 0.01 if math.isfinite(u.domain_lo) else -100.0
    if hi is None:
        hi = max(100.0, lo + 1.0)
    grid = np.linspace(lo, hi, grid_n)
    values = np.array([u.eval(float(x)) for x in grid])
    increasing = bool(np.all(np.diff(values) > 0))
    bad = tuple(float(g) for g, d in zip(grid[1:], np.diff(values)) if d <= 0)
    zero_norm = abs(u.eval(0.0)) <= 1e-12 if u.domain_lo < 0 else None
    return AdmissibilityReport(
        strictly_increasing=increasing,
        zero_normalized=zero_norm,
        image_interval=increasing,
        grid_lo=float(lo),
        grid_hi=float(hi),
        grid_n=grid_n,
        violations=bad,
    )
