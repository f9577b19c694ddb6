"""Presentation matrices: syzygies, minimal presentations, generalized rows,
and matrix rank modulo a linear ideal."""

from __future__ import annotations

from typing import Optional, Sequence

from .groebner import (
    exact_divide,
    module_groebner,
    module_normal_form,
    normal_form,
    syzygy_generators,
)
from .ideals import Ideal
from .polyring import PolyRing, Polynomial

__all__ = [
    "PresentationMatrix",
    "syzygy_matrix",
    "minimal_presentation",
    "is_linear_presentation",
    "rank_modulo_linear_ideal",
    "parse_matrix_rows",
]


class PresentationMatrix:
    """A homogeneous matrix whose columns are syzygies of attached generators.

    Rows correspond to generators; column j is homogeneous of a single twist
    ``column_degrees[j]``, meaning entry (i, j) is zero or homogeneous of
    degree column_degrees[j] - generator_degrees[i].
    """

    def __init__(self, generators: Sequence[Polynomial], columns: Sequence[Sequence[Polynomial]]):
        if not generators:
            raise ValueError("need at least one generator row")
        ring = generators[0].ring
        self.ring = ring
        self.generators = tuple(generators)
        self.columns = tuple(tuple(c) for c in columns)
        self.row_count = len(self.generators)
        self.generator_degrees = []
        for g in self.generators:
            hom, deg = g.homogeneity()
            if not hom or deg is None:
                raise ValueError("generators must be nonzero and homogeneous")
            self.generator_degrees.append(deg)
        self.column_degrees = []
        for j, col in enumerate(self.columns):
            if len(col) != self.row_count:
                raise ValueError(f"column {j} has wrong length")
            twist = None
            for i, entry in enumerate(col):
                hom, deg = entry.homogeneity()
                if not hom:
                    raise ValueError(f"entry ({i},{j}) is not homogeneous")
                if deg is None:
                    continue
                t = deg + self.generator_degrees[i]
                if twist is None:
                    twist = t
                elif twist != t:
                    raise ValueError(f"column {j} mixes twists {twist} and {t}")
            if twist is None:
                raise ValueError(f"column {j} is zero")
            self.column_degrees.append(twist)
        self._validate_syzygies()

    def _validate_syzygies(self):
        zero = self.ring.zero()
        for j, col in enumerate(self.columns):
            acc = zero
            for g, entry in zip(self.generators, col):
                acc = acc + g * entry
            if not acc.is_zero():
                raise ValueError(f"column {j} is not a syzygy of the generators")

    # -- access --------------------------------------------------------------

    def entry(self, i: int, j: int) -> Polynomial:
        return self.columns[j][i]

    def row(self, i: int):
        return tuple(col[i] for col in self.columns)

    def column_count(self) -> int:
        return len(self.columns)

    def entries_max_degree(self) -> int:
        return max(
            (e.total_degree() for col in self.columns for e in col if not e.is_zero()),
            default=0,
        )

    # -- generalized rows ----------------------------------------------------

    def generalized_row(self, coords: Sequence):
        """The coords-weighted combination of rows: (sum_i q_i * A[i][j])_j."""
        F = self.ring.field
        if len(coords) != self.row_count:
            raise ValueError(
                f"point has {len(coords)} coordinates, matrix has {self.row_count} rows"
            )
        if all(F.is_zero(c) for c in coords):
            raise ValueError("point coordinates are all zero")
        out = []
        for col in self.columns:
            acc = self.ring.zero()
            for q, entry in zip(coords, col):
                if not F.is_zero(q):
                    acc = acc + entry.scale(q)
            out.append(acc)
        return tuple(out)

    def generalized_row_ideal(self, coords: Sequence) -> Ideal:
        return Ideal(self.ring, [p for p in self.generalized_row(coords) if not p.is_zero()])


def syzygy_matrix(gens: Sequence[Polynomial]) -> PresentationMatrix:
    """The full first syzygy module of ``gens`` as a presentation matrix."""
    for g in gens:
        hom, deg = g.homogeneity()
        if not hom or deg is None:
            raise ValueError("generators must be nonzero and homogeneous")
    columns = syzygy_generators(list(gens))
    columns = _sorted_columns(gens, columns)
    return PresentationMatrix(gens, columns)


def _column_degree(gens, col):
    for g, entry in zip(gens, col):
        if not entry.is_zero():
            return entry.total_degree() + g.total_degree()
    raise ValueError("zero syzygy column")


def _sorted_columns(gens, columns):
    return sorted(
        (c for c in columns if any(not e.is_zero() for e in c)),
        key=lambda c: (_column_degree(gens, c), [str(e) for e in c]),
    )


def _column_to_module(col):
    v = {}
    for i, p in enumerate(col):
        for m, c in p.coeffs.items():
            v[(i, m)] = c
    return v


def minimize_columns(gens, columns):
    """Keep a minimal generating subset of syzygy columns.

    Columns are processed by increasing twist; one is kept iff it is not in
    the module generated by the columns already kept (graded Nakayama).
    """
    ring = gens[0].ring
    order = ring.default_order
    F = ring.field
    kept = []
    kept_vecs = []
    gb = []
    for col in _sorted_columns(gens, columns):
        v = _column_to_module(col)
        if gb and not module_normal_form(v, gb, order, F):
            continue
        kept.append(col)
        kept_vecs.append(v)
        gb = module_groebner(kept_vecs, order, F)
    return kept


def minimal_presentation(I: Ideal):
    """(minimal generators, minimal presentation matrix) of a homogeneous ideal.

    The generators are minimalized first, so the raw syzygy matrix has no
    constant entries; the columns are then pruned to a minimal generating
    set of the syzygy module.
    """
    gens = I.minimal_generators()
    if not gens:
        raise ValueError("cannot present the zero ideal")
    columns = syzygy_generators(gens)
    columns = prune_constant_entries(gens, columns)[1]
    columns = minimize_columns(gens, columns)
    return gens, PresentationMatrix(gens, columns)


def prune_constant_entries(gens, columns):
    """Eliminate rows/columns at nonzero-constant entries.

    For an externally supplied matrix over a non-minimal generating set,
    repeatedly pick the smallest (row, column) position holding a nonzero
    constant and prune it by elementary operations preserving homogeneity.
    Returns (generators, columns) with every surviving entry of positive
    degree or zero.
    """
    F = gens[0].ring.field
    gens = list(gens)
    columns = [list(c) for c in columns]
    while True:
        pivot = None
        for i in range(len(gens)):
            for j in range(len(columns)):
                e = columns[j][i]
                if not e.is_zero() and e.total_degree() == 0:
                    pivot = (i, j)
                    break
            if pivot:
                break
        if pivot is None:
            break
        i, j = pivot
        c = next(iter(columns[j][i].coeffs.values()))
        pivot_col = columns[j]
        inv = F.inv(c)
        for jj in range(len(columns)):
            if jj == j:
                continue
            e = columns[jj][i]
            if e.is_zero():
                continue
            factor = e.scale(F.neg(inv))
            columns[jj] = [
                a + factor * b for a, b in zip(columns[jj], pivot_col)
            ]
        del columns[j]
        for col in columns:
            del col[i]
        del gens[i]
        columns = [c for c in columns if any(not e.is_zero() for e in c)]
    return gens, [tuple(c) for c in columns]


def is_linear_presentation(I: Ideal) -> bool:
    """True iff the minimal presentation of I has only linear nonzero entries."""
    gens = I.minimal_generators()
    degs = {g.total_degree() for g in gens}
    if len(degs) != 1:
        raise ValueError("ideal is not equigenerated")
    _, matrix = minimal_presentation(I)
    return all(
        e.is_zero() or e.total_degree() == 1 for col in matrix.columns for e in col
    )


# ---------------------------------------------------------------------------
# Rank modulo a linear prime
# ---------------------------------------------------------------------------


def rank_modulo_linear_ideal(A: PresentationMatrix, L: Ideal) -> int:
    """Rank of A over the residue field of the linear prime L.

    The reduced GB of L rewrites each pivot variable in terms of the rest;
    substituting gives a matrix over the subring of free variables, whose
    rank over the fraction field is computed by fraction-free (Bareiss)
    Gaussian elimination -- entirely exact.
    """
    if L.ring != A.ring:
        raise ValueError("ideal and matrix live in different rings")
    if L.is_unit():
        raise ValueError("cannot reduce modulo the unit ideal")
    if not L.is_linear():
        raise ValueError("rank reduction requires a linear ideal")
    gb = list(L.groebner())
    rows = []
    for i in range(A.row_count):
        rows.append(
            [normal_form(A.entry(i, j), gb, L.groebner().order) for j in range(A.column_count())]
        )
    return _bareiss_rank(rows, A.ring)


def _bareiss_rank(rows, ring: PolyRing) -> int:
    rows = [list(r) for r in rows]
    nrows = len(rows)
    ncols = len(rows[0]) if rows else 0
    rank = 0
    prev = ring.one()
    r = 0
    for c in range(ncols):
        pivot_row = None
        for rr in range(r, nrows):
            if not rows[rr][c].is_zero():
                pivot_row = rr
                break
        if pivot_row is None:
            continue
        rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
        piv = rows[r][c]
        for rr in range(r + 1, nrows):
            for cc in range(c + 1, ncols):
                num = piv * rows[rr][cc] - rows[rr][c] * rows[r][cc]
                rows[rr][cc] = exact_divide(num, prev) if not num.is_zero() else num
            rows[rr][c] = ring.zero()
        prev = piv
        rank += 1
        r += 1
        if r == nrows:
            break
    return rank


# ---------------------------------------------------------------------------
# Matrix text format: one row per line, comma-separated polynomial entries.
# ---------------------------------------------------------------------------


def parse_matrix_rows(ring: PolyRing, text: str):
    """Parse the golden-input matrix format into a list of rows of polynomials."""
    rows = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        try:
            rows.append([ring.parse(part) for part in line.split(",")])
        except ValueError as exc:
            raise ValueError(f"matrix line {lineno}: {exc}") from exc
    if not rows:
        raise ValueError("matrix file contains no rows")
    width = {len(r) for r in rows}
    if len(width) != 1:
        raise ValueError("matrix rows have inconsistent lengths")
    return rows


def matrix_from_rows(generators, rows) -> PresentationMatrix:
    """Build a presentation matrix from row-major entries; validates syzygies."""
    if len(rows) != len(generators):
        raise ValueError("row count does not match generator count")
    ncols = len(rows[0])
    columns = [tuple(rows[i][j] for i in range(len(rows))) for j in range(ncols)]
    return PresentationMatrix(generators, columns)
