"""
Grid-sampled sections of degree-d line bundles on the torus.

Values are stored as plain periodic arrays; the quasi-periodic wrap rule
psi(x, y + 1) = exp(-2 pi i d x) psi(x, y) is carried by the seam links of
the connection the field is paired with.
"""
from dataclasses import dataclass

import numpy as np

from core.exceptions import PreconditionError


@dataclass(frozen=True, eq=False)
class TwistedField:
    degree: int
    values: np.ndarray

    def __post_init__(self):
        values = np.asarray(self.values, dtype=complex)
        if values.ndim != 2 or values.shape[0] != values.shape[1]:
            raise PreconditionError(f"field values must be a square grid array, got shape {values.shape}")
        object.__setattr__(self, 'values', values)

    @property
    def n(self) -> int:
        return self.values.shape[0]

    def l2_norm(self) -> float:
        return float(np.sqrt(np.sum(np.abs(self.values) ** 2) / self.n ** 2))

    def sup_norm(self) -> float:
        return float(np.max(np.abs(self.values)))

    def modulus(self) -> np.ndarray:
        return np.abs(self.values)

    def normalize(self) -> 'TwistedField':
        """Rescale to unit L2 norm."""
        norm = self.l2_norm()
        if norm == 0.0:
            raise PreconditionError("cannot normalize the zero field")
        return TwistedField(self.degree, self.values / norm)

    def scaled(self, factor) -> 'TwistedField':
        """Pointwise product with a scalar or a grid array; degree is unchanged."""
        return TwistedField(self.degree, self.values * factor)

    def is_zero(self) -> bool:
        return not np.any(self.values)


def zero_field(n, degree) -> TwistedField:
    return TwistedField(degree, np.zeros((n, n), dtype=complex))


def constant_field(n, value, degree=0) -> TwistedField:
    return TwistedField(degree, np.full((n, n), value, dtype=complex))
