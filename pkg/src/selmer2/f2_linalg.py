"""Dense linear algebra over the two-element field.

Vectors are immutable bit tuples; matrices are row lists.  Row reduction uses
leftmost-pivot reduced echelon form so kernel bases are reproducible across
runs (regression tests compare bases, not just dimensions).  Sizes here stay
below ~50x50; rows are packed into Python ints internally.
"""
from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class F2Vector:
    """A vector over F2 with entries in {0, 1}."""

    bits: tuple[int, ...]

    def __post_init__(self):
        if any(b not in (0, 1) for b in self.bits):
            raise ValueError("entries must be 0 or 1")

    @property
    def len(self) -> int:
        return len(self.bits)

    def __len__(self) -> int:
        return len(self.bits)

    def __add__(self, other: "F2Vector") -> "F2Vector":
        if len(other) != len(self):
            raise ValueError("length mismatch")
        return F2Vector(tuple(a ^ b for a, b in zip(self.bits, other.bits)))

    def is_zero(self) -> bool:
        return not any(self.bits)

    def mask(self) -> int:
        """Packed form: bit i of the int is entry i."""
        m = 0
        for i, b in enumerate(self.bits):
            if b:
                m |= 1 << i
        return m

    @staticmethod
    def from_mask(mask: int, n: int) -> "F2Vector":
        return F2Vector(tuple((mask >> i) & 1 for i in range(n)))


@dataclass(frozen=True)
class F2Matrix:
    """Matrix over F2, stored as a tuple of equal-length F2Vector rows."""

    rows: tuple[F2Vector, ...]
    ncols: int

    def __post_init__(self):
        for r in self.rows:
            if len(r) != self.ncols:
                raise ValueError("ragged matrix")

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @staticmethod
    def from_rows(rows) -> "F2Matrix":
        rows = tuple(r if isinstance(r, F2Vector) else F2Vector(tuple(r)) for r in rows)
        if not rows:
            raise ValueError("cannot infer width of an empty matrix; use from_rows_ncols")
        return F2Matrix(rows, len(rows[0]))

    @staticmethod
    def from_rows_ncols(rows, ncols: int) -> "F2Matrix":
        rows = tuple(r if isinstance(r, F2Vector) else F2Vector(tuple(r)) for r in rows)
        return F2Matrix(rows, ncols)

    def mul_vector(self, v: F2Vector) -> F2Vector:
        if len(v) != self.ncols:
            raise ValueError("length mismatch")
        vm = v.mask()
        return F2Vector(tuple(bin(r.mask() & vm).count("1") & 1 for r in self.rows))


def _echelon(masks: list[int]):
    """Reduced row echelon form on packed rows; leftmost pivot first.

    Returns (pivot_col -> reduced row mask) in insertion order of pivots.
    """
    pivots: dict[int, int] = {}
    for m in masks:
        for col, pm in pivots.items():
            if (m >> col) & 1:
                m ^= pm
        if m == 0:
            continue
        col = (m & -m).bit_length() - 1
        for c2, pm in list(pivots.items()):
            if (pm >> col) & 1:
                pivots[c2] = pm ^ m
        pivots[col] = m
    return dict(sorted(pivots.items()))


def rank(m: F2Matrix) -> int:
    """Row rank over F2."""
    return len(_echelon([r.mask() for r in m.rows]))


def kernel(m: F2Matrix) -> list[F2Vector]:
    """Basis of {v : m v = 0}, deterministic (free columns in increasing order).

    Satisfies rank(m) + len(kernel(m)) == m.ncols.
    """
    n = m.ncols
    piv = _echelon([r.mask() for r in m.rows])
    free = [c for c in range(n) if c not in piv]
    basis = []
    for fc in free:
        bits = [0] * n
        bits[fc] = 1
        for col, pm in piv.items():
            if (pm >> fc) & 1:
                bits[col] = 1
        basis.append(F2Vector(tuple(bits)))
    return basis


def quotient_coordinates(v: F2Vector, subspace_basis) -> F2Vector:
    """Coordinates of v in a fixed complement of span(subspace_basis).

    The subspace is echelonized with leftmost pivots; the representative has
    all pivot coordinates cleared, so inputs differing by a subspace element
    map to the same output.
    """
    piv = _echelon([b.mask() for b in subspace_basis])
    if any(len(b) != len(v) for b in subspace_basis):
        raise ValueError("dimension mismatch")
    m = v.mask()
    for col, pm in piv.items():
        if (m >> col) & 1:
            m ^= pm
    return F2Vector.from_mask(m, len(v))
