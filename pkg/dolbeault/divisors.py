"""
Exact line bundle arithmetic on the genus-1 curve.

A line bundle is a degree together with a point of the Jacobian, stored as
a pair of Fractions taken mod 1. Twisting by K^{1/2} uses the trivial spin
structure, so it changes nothing on the torus.
"""
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Tuple

from core.exceptions import PreconditionError, UnsupportedGenusError

SUPPORTED_GENERA = (0, 1, 2)
COMPLEXES = ('dolbeault', 'moduli', 'fueter', 'transversality')

TWO_TORSION = tuple((Fraction(a, 2), Fraction(b, 2)) for a in (0, 1) for b in (0, 1))


def _as_class(value) -> Tuple[Fraction, Fraction]:
    x, y = value
    return (Fraction(x).limit_denominator(10 ** 6) % 1, Fraction(y).limit_denominator(10 ** 6) % 1)


@dataclass(frozen=True)
class LineBundle:
    degree: int
    jacobian_class: Tuple[Fraction, Fraction] = (Fraction(0), Fraction(0))

    def __post_init__(self):
        object.__setattr__(self, 'jacobian_class', _as_class(self.jacobian_class))

    @property
    def is_trivial(self) -> bool:
        return self.degree == 0 and self.jacobian_class == (0, 0)

    def __mul__(self, other: 'LineBundle') -> 'LineBundle':
        cx, cy = self.jacobian_class
        ox, oy = other.jacobian_class
        return LineBundle(self.degree + other.degree, (cx + ox, cy + oy))

    def inverse(self) -> 'LineBundle':
        cx, cy = self.jacobian_class
        return LineBundle(-self.degree, (-cx, -cy))

    def __truediv__(self, other: 'LineBundle') -> 'LineBundle':
        return self * other.inverse()

    def __pow__(self, k: int) -> 'LineBundle':
        cx, cy = self.jacobian_class
        return LineBundle(k * self.degree, (k * cx, k * cy))

    def h0(self) -> int:
        """Sections on the elliptic curve: deg if positive, 1 on O, else 0."""
        if self.degree > 0:
            return self.degree
        return 1 if self.is_trivial else 0

    def h1(self) -> int:
        """By Serre duality with trivial canonical bundle."""
        return self.inverse().h0()

    def float_class(self) -> Tuple[float, float]:
        return (float(self.jacobian_class[0]), float(self.jacobian_class[1]))


def riemann_roch_expected(genus: int, degrees: List[int], complex_name: str = 'dolbeault') -> int:
    """
    Euler characteristic of one of the deformation complexes.

    dolbeault       sum over summands of deg + 1 - g
    moduli          g - 1 + 2d for the single degree d
    fueter          chi(O) - chi(F) - chi(N^2) with deg F = 2g - 2 - 2k; equals 1 - g, so zero on the torus
    transversality  2(-2d + 2 - g) - 1
    """
    if genus not in SUPPORTED_GENERA:
        raise UnsupportedGenusError(f"genus {genus} is not supported (expected one of {SUPPORTED_GENERA})")
    if complex_name not in COMPLEXES:
        raise PreconditionError(f"unknown complex {complex_name!r}")
    if complex_name == 'dolbeault':
        return sum(d + 1 - genus for d in degrees)
    if len(degrees) != 1:
        raise PreconditionError(f"the {complex_name} complex takes a single degree")
    d = degrees[0]
    if complex_name == 'moduli':
        return genus - 1 + 2 * d
    if complex_name == 'fueter':
        chi_trivial = 1 - genus
        chi_f = (2 * genus - 2 - 2 * d) + 1 - genus
        chi_square = 2 * d + 1 - genus
        return chi_trivial - chi_f - chi_square
    return 2 * (-2 * d + 2 - genus) - 1


@dataclass(frozen=True)
class FueterReport:
    exists: bool
    witness: Optional[LineBundle]
    search_cap: int
    candidates_checked: int


def _split_summands(m: int, jacobian_class) -> Tuple[LineBundle, LineBundle]:
    if m < 0:
        raise PreconditionError(f"write E = M + M^-1 with deg M >= 0, got {m}")
    M = LineBundle(m, jacobian_class)
    return M, M.inverse()


def fueter_search(m: int, jacobian_class) -> FueterReport:
    """
    Look for N of degree k >= 0 with h0(N^2) > 0 and h0(E (x) N^-1) > 0,
    E = M + M^-1.

    The degree search stops at h0(E) + 2g - 2 = h0(E). Within each degree
    h0 only jumps on the 2-torsion points and on the classes of M and M^-1,
    so those are the only candidates that need checking.
    """
    M, M_inv = _split_summands(m, jacobian_class)
    cap = M.h0() + M_inv.h0()
    special = {M.jacobian_class, M_inv.jacobian_class, *TWO_TORSION}
    checked = 0
    for k in range(cap + 1):
        for cls in sorted(special):
            N = LineBundle(k, cls)
            checked += 1
            if (N ** 2).h0() > 0 and ((M / N).h0() + (M_inv / N).h0()) > 0:
                return FueterReport(True, N, cap, checked)
    return FueterReport(False, None, cap, checked)


def fueter_obstruction_exists(m: int, jacobian_class) -> bool:
    """
    Whether Fueter data can exist for E = M + M^-1 on the torus.

    Exact case analysis: for m > 0 take N = M; for m = 0 the degree-0
    candidate N must be 2-torsion and equal to M, so M^2 must be trivial;
    positive k would need deg(M N^-1) = -k >= 0.
    """
    return fueter_search(m, jacobian_class).exists
