"""Cusp-torus arithmetic: natural slope, slope lengths, surgery windows,
genus bounds, and the per-knot statistics derived from them.

Inputs are measured hyperbolic geometry, so everything here is floating
point. Comparisons use an explicit 1e-9 tolerance; fixture checks in the
tests use 1e-3 because published values carry 4-5 digits.
"""

import math
from dataclasses import dataclass, field

import warnings

_TOL = 1e-9

# fillings with |p| above this bound are never exceptional; quoted from
# the surgery literature, exposed as data rather than recomputed
MAX_EXCEPTIONAL_P = 8

# soft validation bounds for knot cusps; violations warn, not raise,
# since ingested rows may describe other cusped manifolds
MERIDIAN_RANGE = (1.0, 6.0)
MIN_VOLUME = 2.0298
MAX_INJ = 1.82


class GeometryWarning(UserWarning):
    """Geometry outside the soft bounds expected of a knot complement."""


def parse_complex(text):
    """Parse 'a+bi' / 'a-bi' (no spaces), or a bare real."""
    try:
        return complex(text.strip().replace("i", "j"))
    except ValueError:
        raise ValueError("bad complex number %r" % text) from None


@dataclass(frozen=True)
class CuspShape:
    """Maximal cusp-torus lattice: real longitude length and complex
    meridian translation, normalized so Im(meridian) > 0."""

    longitude: float
    meridian: complex
    trusted: bool = field(default=False, compare=False, repr=False)

    def __post_init__(self):
        if not self.longitude > 0:
            raise ValueError("longitude must be positive, got %r" % self.longitude)
        if not self.meridian.imag > 0:
            raise ValueError(
                "meridian must have positive imaginary part, got %r" % self.meridian
            )
        if not self.trusted:
            lo, hi = MERIDIAN_RANGE
            if not lo - _TOL <= abs(self.meridian) <= hi + _TOL:
                warnings.warn(
                    "|meridian| = %.4f outside [%g, %g]" % (abs(self.meridian), lo, hi),
                    GeometryWarning,
                    stacklevel=2,
                )


@dataclass(frozen=True)
class KnotGeom:
    """Cusp shape plus volume, injectivity radius, and (optionally) the
    knot signature."""

    cusp: CuspShape
    volume: float
    inj: float
    sigma: int | None = None
    trusted: bool = field(default=False, compare=False, repr=False)

    def __post_init__(self):
        if not self.volume > 0:
            raise ValueError("volume must be positive, got %r" % self.volume)
        if not self.inj > 0:
            raise ValueError("injectivity radius must be positive, got %r" % self.inj)
        if self.sigma is not None and self.sigma % 2:
            raise ValueError("signature must be even, got %r" % self.sigma)
        if not self.trusted:
            if self.volume <= MIN_VOLUME:
                warnings.warn(
                    "volume %.4f not above %.4f" % (self.volume, MIN_VOLUME),
                    GeometryWarning,
                    stacklevel=2,
                )
            if self.inj > MAX_INJ:
                warnings.warn(
                    "injectivity radius %.4f above %.2f" % (self.inj, MAX_INJ),
                    GeometryWarning,
                    stacklevel=2,
                )

    def _require_sigma(self):
        if self.sigma is None:
            raise ValueError("signature not present in this geometry record")
        return self.sigma


def natural_slope(c):
    """Re(longitude/meridian) = longitude * Re(meridian) / |meridian|^2."""
    m = abs(c.meridian)
    if m == 0:
        raise ValueError("meridian is zero")
    return c.longitude * c.meridian.real / (m * m)


def slope_length(c, p, q):
    """Euclidean length |p*longitude + q*meridian| of the (p,q) filling
    curve on the cusp torus."""
    if p == 0 and q == 0:
        raise ValueError("(0, 0) is not a slope")
    return abs(p * c.longitude + q * c.meridian)


@dataclass(frozen=True)
class Interval:
    lo: float
    hi: float

    def __contains__(self, x):
        return self.lo <= x <= self.hi

    @property
    def width(self):
        return self.hi - self.lo

    @property
    def center(self):
        return (self.lo + self.hi) / 2


def exceptional_window(slope, p):
    """Closed interval of q/p values that can possibly be exceptional for
    a given integer p >= 1: every slope outside it has length > 6."""
    if p < 1:
        raise ValueError("p must be a positive integer, got %r" % p)
    return Interval(-slope - 6 / p, -slope + 6 / p)


def surgery_hyperbolic_certificate(g, p, q, c1):
    """True when (q/p) surgery is certified hyperbolic: either |p| exceeds
    the exceptional bound, or q/p sits outside the slope window widened by
    the c1 error term. The boundary counts as uncertified."""
    sigma = g._require_sigma()
    if p == 0:
        raise ValueError("p must be nonzero")
    if math.gcd(p, q) != 1:
        raise ValueError("(%d, %d) is not a primitive slope" % (p, q))
    if abs(p) > MAX_EXCEPTIONAL_P:
        return True
    lhs = abs(q / p + 2 * sigma)
    rhs = 6 / abs(p) + c1 * g.volume / g.inj**3
    return lhs > rhs + _TOL


def genus_lower_bound(slope, integer=False):
    """Seifert-genus lower bound |slope|/(4*pi) + 1/2, optionally rounded
    up to the integer genus it implies."""
    value = abs(slope) / (4 * math.pi) + 0.5
    if integer:
        return math.ceil(value - _TOL)
    return value


def g4_lower_bound(g, c1):
    """Topological 4-genus lower bound |slope|/4 - (c1/4) * vol / inj^3.

    May be negative; callers clamp at zero when quoting it as a genus."""
    slope = natural_slope(g.cusp)
    return abs(slope) / 4 - (c1 / 4) * g.volume / g.inj**3


def c1_statistic(g, residual_only=False):
    """|2*sigma - slope| * inj^3 / vol, the normalized defect of the
    slope-signature correlation; residual_only skips the normalization."""
    sigma = g._require_sigma()
    residual = abs(2 * sigma - natural_slope(g.cusp))
    if residual_only:
        return residual
    return residual * g.inj**3 / g.volume


def normalized_signature(g):
    """sigma / sqrt(vol)."""
    sigma = g._require_sigma()
    return sigma / math.sqrt(g.volume)


def closest_even_integer(s):
    """Nearest even integer, ties toward the smaller absolute value."""
    k = math.floor(s / 2)
    lo, hi = 2 * k, 2 * k + 2
    d_lo, d_hi = s - lo, hi - s
    if abs(d_lo - d_hi) <= _TOL:
        return lo if abs(lo) < abs(hi) else hi
    return lo if d_lo < d_hi else hi
