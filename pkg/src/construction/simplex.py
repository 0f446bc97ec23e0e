"""Coefficient matrices for the measurement templates.

Each row of the matrix is the coefficient block c_{i,k} of one template
vector. Rows must have a fixed negative pairwise inner product and every
column must sum to zero; the rows of a centred regular simplex do both.
"""

from dataclasses import dataclass

import numpy as np

from ..errors import PreconditionError


@dataclass(frozen=True, eq=False)
class CoefficientMatrix:
    """m rows in dimension m - 1 with constant pairwise inner product."""
    rows: np.ndarray
    pairwise: float

    @property
    def m(self) -> int:
        return self.rows.shape[0]

    def gram(self) -> np.ndarray:
        return self.rows @ self.rows.T

    def pairwise_error(self) -> float:
        """Largest deviation of an off-diagonal Gram entry from the target."""
        if self.m < 2:
            return 0.0
        gram = self.gram()
        off = gram[~np.eye(self.m, dtype=bool)]
        return float(np.max(np.abs(off - self.pairwise)))

    def column_sum_error(self) -> float:
        if self.rows.shape[1] == 0:
            return 0.0
        return float(np.max(np.abs(self.rows.sum(axis=0))))

    def norm_error(self) -> float:
        """Deviation of the squared row norms from -pairwise * (m - 1)."""
        expected = -self.pairwise * (self.m - 1)
        return float(np.max(np.abs(np.sum(self.rows ** 2, axis=1) - expected)))

    def satisfies(self, tol: float) -> bool:
        return self.pairwise_error() <= tol and self.column_sum_error() <= tol


def simplex_rows(m: int, pairwise: float) -> CoefficientMatrix:
    """Vertices of a centred regular (m-1)-simplex scaled to the given inner product.

    Built column by column: the pivot row takes -(r-1)y and the r-1 rows
    below it take y, which zeroes the column sum and fixes the pivot's
    inner products; the remaining rows then form a smaller simplex with
    target pairwise - y^2. For m=2 and m=3 with pairwise=-2 this gives the
    matrices (-sqrt2, sqrt2) and ((-2, 0), (1, -sqrt3), (1, sqrt3)).
    """
    if m < 1:
        raise PreconditionError(f"simplex needs m >= 1 rows, got {m}")
    if pairwise >= 0:
        raise PreconditionError(f"pairwise inner product must be negative, got {pairwise}")

    rows = np.zeros((m, m - 1))
    target = float(pairwise)
    for col in range(m - 1):
        below = m - col - 1
        y = np.sqrt(-target / below)
        rows[col, col] = -below * y
        rows[col + 1:, col] = y
        target -= y * y

    return CoefficientMatrix(rows=rows, pairwise=float(pairwise))
