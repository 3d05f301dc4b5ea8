"""Linear subspaces of projective space over a finite field.

A subspace is stored both ways at once: a canonical echelon basis of the
vectors spanning it and a canonical echelon basis of the linear forms
cutting it out.  The two presentations annihilate each other, which makes
the dual-space involution literally a swap of the two matrices.
"""

from __future__ import annotations

import numpy as np

from .. import _kernels
from ..errors import DimensionMismatch
from ..exactlin import FieldMatrix, FiniteField


def _echelon(field: FiniteField, rows):
    """Canonical RREF rows over the field; drops zero rows."""
    arr = np.asarray(rows, dtype=np.int64)
    if arr.size == 0:
        return np.zeros((0, arr.shape[1] if arr.ndim == 2 else 0),
                        dtype=np.int64)
    if field.k == 1:
        r, _ = _kernels.rref(arr % field.p, field.p)
        return r
    mat = FieldMatrix(field, arr)
    rank, _ = mat.rank_kernel()
    rows_py = [list(map(int, row)) for row in arr]
    reduced = _rref_ext(field, rows_py)
    return np.asarray(reduced[:rank], dtype=np.int64)


def _rref_ext(field: FiniteField, rows):
    m = len(rows)
    if m == 0:
        return rows
    n = len(rows[0])
    r = 0
    for c in range(n):
        if r >= m:
            break
        sel = next((i for i in range(r, m) if rows[i][c] != 0), None)
        if sel is None:
            continue
        rows[r], rows[sel] = rows[sel], rows[r]
        inv = field.inv(rows[r][c])
        rows[r] = [field.mul(inv, x) for x in rows[r]]
        for i in range(m):
            if i != r and rows[i][c] != 0:
                coef = rows[i][c]
                rows[i] = [field.sub(x, field.mul(coef, y))
                           for x, y in zip(rows[i], rows[r])]
        r += 1
    return [row for row in rows if any(x != 0 for x in row)]


def _nullspace(field: FiniteField, rows, width: int):
    if len(rows) == 0:
        return np.eye(width, dtype=np.int64)
    if field.k == 1:
        return _kernels.nullspace(np.asarray(rows, dtype=np.int64) % field.p,
                                  field.p)
    _, basis = FieldMatrix(field, rows).rank_kernel()
    return np.asarray([list(v) for v in basis], dtype=np.int64).reshape(
        -1, width)


class LinearSubspace:
    """A linear subspace of P^{ambient-1} over a finite field."""

    def __init__(self, field: FiniteField, ambient: int, points, forms):
        self.field = field
        self.ambient = int(ambient)
        self.points = np.asarray(points, dtype=np.int64).reshape(
            -1, self.ambient)
        self.forms = np.asarray(forms, dtype=np.int64).reshape(
            -1, self.ambient)
        if self.points.shape[0] + self.forms.shape[0] != self.ambient:
            raise DimensionMismatch("span rank + form rank must equal "
                                    "the ambient dimension")

    # constructors -----------------------------------------------------
    @classmethod
    def from_points(cls, field: FiniteField, ambient: int, pts
                    ) -> "LinearSubspace":
        basis = _echelon(field, [list(p) for p in pts])
        if basis.shape[0] and basis.shape[1] != ambient:
            raise DimensionMismatch("point length != ambient dimension")
        forms = _nullspace(field, basis, ambient)
        forms = _echelon(field, forms)
        return cls(field, ambient, basis, forms)

    @classmethod
    def from_forms(cls, field: FiniteField, ambient: int, forms
                   ) -> "LinearSubspace":
        cut = _echelon(field, [list(f) for f in forms])
        if cut.shape[0] and cut.shape[1] != ambient:
            raise DimensionMismatch("form length != ambient dimension")
        pts = _echelon(field, _nullspace(field, cut, ambient))
        return cls(field, ambient, pts, cut)

    @classmethod
    def whole(cls, field: FiniteField, ambient: int) -> "LinearSubspace":
        return cls.from_forms(field, ambient, [])

    # properties --------------------------------------------------------
    @property
    def projective_dim(self) -> int:
        """Dimension as a projective subspace; -1 for the empty space."""
        return self.points.shape[0] - 1

    def contains_point(self, pt) -> bool:
        f = self.field
        vec = [int(x) % f.q for x in pt]
        if f.k == 1:
            vals = (self.forms @ np.asarray(vec)) % f.p
            return not np.any(vals)
        for row in self.forms:
            acc = 0
            for a, x in zip(row, vec):
                acc = f.add(acc, f.mul(int(a), x))
            if acc != 0:
                return False
        return True

    def __eq__(self, other):
        return (isinstance(other, LinearSubspace)
                and self.field == other.field
                and self.ambient == other.ambient
                and self.points.shape == other.points.shape
                and np.array_equal(self.points, other.points))

    def __repr__(self):
        return (f"LinearSubspace(P^{self.ambient - 1}, "
                f"dim={self.projective_dim}, q={self.field.q})")

    def to_json(self) -> dict:
        return {
            "ambient": self.ambient,
            "field": self.field.describe(),
            "points": [[int(x) for x in row] for row in self.points],
            "forms": [[int(x) for x in row] for row in self.forms],
        }


def annihilator(sub: LinearSubspace) -> LinearSubspace:
    """The dual subspace under the volume-form pairing.

    In star coordinates the pairing is the plain dot product, so the dual
    of a span is cut by its vectors as forms and vice versa; the involution
    annihilator(annihilator(x)) == x holds bit for bit.
    """
    return LinearSubspace(sub.field, sub.ambient, sub.forms, sub.points)


def span_of_points(field: FiniteField, ambient: int, pts) -> LinearSubspace:
    """Convenience wrapper: the projective span of the given points."""
    return LinearSubspace.from_points(field, ambient, pts)
