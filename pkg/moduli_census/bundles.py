"""
Inputs and outputs of the moduli census.

A BundleSpec fixes the background SL(2, C) bundle E over a surface of genus
0, 1 or 2, the degree d of L and the chamber sign(d - tau). A
ModuliDescription is what the census says about M_hol(d, E) there.
"""
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Optional, Tuple, Union

from core.exceptions import PreconditionError, UnsupportedGenusError

SUPPORTED_GENERA = (0, 1, 2)
KINDS = ('split', 'atiyah_E0', 'stable_generic')
CLASS_FLAGS = ('generic', 'two_torsion', 'trivial', 'nongeneric')

# Representative Jacobian classes of A for the genus-1 split flags
FLAG_CLASSES = {
    'generic': (Fraction(1, 3), Fraction(0)),
    'two_torsion': (Fraction(1, 2), Fraction(0)),
    'trivial': (Fraction(0), Fraction(0)),
}

STATUSES = (
    'empty',
    'points',
    'projective_space',
    'projective_bundle',
    'curve',
    'affine_line_with_CP1_compactification',
    'noncompact_fibration',
)

TRANSCRIBED = 'paper-transcribed'
COMPUTED = 'computed'

UNDEFINED_WALL = 'undefined(b1=1 wall-crossing)'
UNDEFINED_NONCOMPACT = 'undefined(noncompact)'


@dataclass(frozen=True)
class BundleSpec:
    """
    genus 0: kind 'split', E = O(k) + O(-k) with k = param >= 0
    genus 1: kind 'split', E = A + A^-1 with deg A = param >= 0 and the
             class of A given by class_flag; or kind 'atiyah_E0'
    genus 2: kind 'stable_generic'
    """
    genus: int
    kind: str
    d: int
    sign: int = -1
    param: int = 0
    class_flag: str = 'generic'

    def __post_init__(self):
        if self.genus not in SUPPORTED_GENERA:
            raise UnsupportedGenusError(f"genus {self.genus} is not supported (expected one of {SUPPORTED_GENERA})")
        if self.kind not in KINDS:
            raise PreconditionError(f"unknown bundle kind {self.kind!r}")
        if self.kind == 'atiyah_E0' and self.genus != 1:
            raise PreconditionError("the Atiyah bundle E0 only exists on genus 1")
        if self.kind == 'stable_generic' and self.genus < 2:
            raise PreconditionError("stable_generic needs genus at least 2")
        if self.kind == 'split' and self.genus == 0 and self.class_flag != 'generic':
            raise PreconditionError("genus-0 split bundles have no Jacobian class")
        if self.sign not in (-1, 0, 1):
            raise PreconditionError(f"sign of d - tau must be -1, 0 or 1, got {self.sign}")
        if self.param < 0:
            raise PreconditionError(f"split parameter must be non-negative, got {self.param}")
        if self.class_flag not in CLASS_FLAGS:
            raise PreconditionError(f"unknown class flag {self.class_flag!r}")
        if self.class_flag == 'nongeneric' and self.kind != 'stable_generic':
            raise PreconditionError("the nongeneric flag applies to stable_generic bundles")

    @property
    def effective_degree(self) -> int:
        """d in the chamber d - tau < 0; the other chamber is read through (L, a, b) -> (L*, b, a)."""
        return self.d if self.sign < 0 else -self.d

    @property
    def is_generic(self) -> bool:
        if self.kind == 'stable_generic':
            return self.class_flag == 'generic'
        return self.kind == 'split' and self.param == 0 and self.class_flag == 'generic'

    @property
    def label(self) -> str:
        if self.kind == 'split':
            if self.genus == 0:
                return f"split_k{self.param}"
            return f"split_m{self.param}_{self.class_flag}"
        return self.kind

    def with_degree(self, d: int, sign: Optional[int] = None) -> 'BundleSpec':
        return replace(self, d=d, sign=self.sign if sign is None else sign)


@dataclass(frozen=True)
class ModuliDescription:
    status: str
    dimC: Optional[int]
    euler: int
    sw: Union[int, str, None] = None
    compact: bool = True
    fueter_present: bool = False
    provenance: str = COMPUTED
    euler_of: str = 'moduli'
    count: Optional[int] = None
    base: Optional[str] = None
    base_dimC: Optional[int] = None
    fiber_dimC: Optional[int] = None
    curve_genus: Optional[int] = None
    notes: Tuple[str, ...] = field(default=())

    def __post_init__(self):
        if self.status not in STATUSES:
            raise PreconditionError(f"unknown moduli status {self.status!r}")

    @property
    def is_empty(self) -> bool:
        return self.status == 'empty'

    @property
    def label(self) -> str:
        if self.status == 'points':
            return f"points({self.count})"
        if self.status == 'projective_space':
            return f"projective_space({self.fiber_dimC})"
        if self.status == 'projective_bundle':
            return f"projective_bundle(CP^{self.fiber_dimC} over {self.base})"
        if self.status == 'curve':
            return f"curve({self.curve_genus})"
        if self.status == 'noncompact_fibration':
            return f"noncompact_fibration(base_dimC={self.base_dimC} fiber_dimC={self.fiber_dimC})"
        return self.status

    def shape(self) -> tuple:
        """Everything but provenance and notes, for comparing two derivations."""
        return (self.status, self.dimC, self.euler, self.compact, self.count,
                self.base, self.base_dimC, self.fiber_dimC, self.curve_genus)


def empty(provenance=COMPUTED) -> ModuliDescription:
    return ModuliDescription('empty', None, 0, compact=True, provenance=provenance)


def points(count, provenance=COMPUTED) -> ModuliDescription:
    return ModuliDescription('points', 0, count, count=count, provenance=provenance)


def projective_space(k, provenance=COMPUTED) -> ModuliDescription:
    return ModuliDescription('projective_space', k, k + 1, fiber_dimC=k, provenance=provenance)


def projective_bundle_over_jacobian(genus, d, fiber_dimC, provenance=COMPUTED) -> ModuliDescription:
    """P(V) over J^d; the Jacobian torus has Euler characteristic 0."""
    return ModuliDescription(
        'projective_bundle', genus + fiber_dimC, 0,
        base=f"J^{d}", base_dimC=genus, fiber_dimC=fiber_dimC, provenance=provenance,
    )


def noncompact_fibration(base_dimC, fiber_dimC, compactification_euler, provenance=COMPUTED, notes=()) -> ModuliDescription:
    return ModuliDescription(
        'noncompact_fibration', base_dimC + fiber_dimC, compactification_euler,
        compact=False, fueter_present=True, provenance=provenance, euler_of='compactification',
        base_dimC=base_dimC, fiber_dimC=fiber_dimC, notes=tuple(notes),
    )
