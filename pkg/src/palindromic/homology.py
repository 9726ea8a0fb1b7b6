"""Exact homology and cohomology of finite chain complexes over Z, Q and F_p.

Everything is computed from integer Smith normal forms; no floating point is
used anywhere.  Large boundary matrices are first shrunk by eliminating unit
pivots sparsely, and the remainder goes through the dense Smith reduction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence, Union

from .intmatrix import IntegerMatrix

Coefficients = Union[str, int]  # "Z", "Q", or a prime p


class CoefficientError(ValueError):
    pass


class InternalConsistencyError(RuntimeError):
    """A computed complex violates d o d = 0 or the face identities."""


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    return all(p % d for d in range(2, math.isqrt(p) + 1))


def parse_coefficients(text: str | int) -> Coefficients:
    """Accept ``Z``, ``Q``, ``Fp:k`` (or a bare prime ``k``)."""
    if isinstance(text, int):
        p = text
    else:
        t = text.strip()
        if t.upper() in ("Z", "Q"):
            return t.upper()
        if t.lower().startswith("fp:"):
            t = t[3:]
        try:
            p = int(t)
        except ValueError:
            raise CoefficientError(f"unknown coefficients {text!r}") from None
    if not is_prime(p):
        raise CoefficientError(f"{p} is not prime")
    return p


def coefficient_label(coeff: Coefficients) -> str:
    return coeff if isinstance(coeff, str) else f"F{coeff}"


# ----------------------------------------------------------------------
# Smith normal form
# ----------------------------------------------------------------------


@dataclass
class SmithForm:
    factors: list[int]
    shape: tuple[int, int]
    left: IntegerMatrix | None = None
    right: IntegerMatrix | None = None

    @property
    def rank(self) -> int:
        return len(self.factors)

    def diagonal(self) -> IntegerMatrix:
        rows, cols = self.shape
        d = [[0] * cols for _ in range(rows)]
        for k, x in enumerate(self.factors):
            d[k][k] = x
        return IntegerMatrix(d, cols)


def smith_normal_form(m: IntegerMatrix | Sequence[Sequence[int]], transforms: bool = False) -> SmithForm:
    """Invariant factors d_1 | d_2 | ... of an integer matrix.

    With ``transforms`` the unimodular ``left`` and ``right`` matrices are kept,
    so that ``left @ m @ right == diagonal``.
    """
    if not isinstance(m, IntegerMatrix):
        m = IntegerMatrix(m)
    rows, cols = m.shape
    a = m.to_lists()
    u = [[int(i == j) for j in range(rows)] for i in range(rows)] if transforms else None
    v = [[int(i == j) for j in range(cols)] for i in range(cols)] if transforms else None
    factors = _dense_smith(a, rows, cols, u, v)
    return SmithForm(
        factors,
        (rows, cols),
        IntegerMatrix(u, rows) if transforms else None,
        IntegerMatrix(v, cols) if transforms else None,
    )


def _dense_smith(a, rows, cols, u=None, v=None) -> list[int]:
    """In-place reduction of list-of-lists ``a``; returns the nonzero diagonal."""

    def swap_rows(i, j):
        if i != j:
            a[i], a[j] = a[j], a[i]
            if u is not None:
                u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        if i != j:
            for row in a:
                row[i], row[j] = row[j], row[i]
            if v is not None:
                for row in v:
                    row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):  # row_dst += q * row_src
        rd, rs = a[dst], a[src]
        for k in range(cols):
            if rs[k]:
                rd[k] += q * rs[k]
        if u is not None:
            ud, us = u[dst], u[src]
            for k in range(rows):
                if us[k]:
                    ud[k] += q * us[k]

    def add_col(dst, src, q):  # col_dst += q * col_src
        for row in a:
            if row[src]:
                row[dst] += q * row[src]
        if v is not None:
            for row in v:
                if row[src]:
                    row[dst] += q * row[src]

    factors = []
    for t in range(min(rows, cols)):
        best = None
        for i in range(t, rows):
            row = a[i]
            for j in range(t, cols):
                x = row[j]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
                    if best[0] == 1:
                        break
            if best and best[0] == 1:
                break
        if best is None:
            break
        swap_rows(t, best[1])
        swap_cols(t, best[2])
        while True:
            p = a[t][t]
            for i in range(t + 1, rows):
                if a[i][t]:
                    add_row(i, t, -(a[i][t] // p))
            for j in range(t + 1, cols):
                if a[t][j]:
                    add_col(j, t, -(a[t][j] // p))
            # leftover remainders are smaller than |p|; move the smallest in
            cand = None
            for i in range(t + 1, rows):
                if a[i][t] and (cand is None or abs(a[i][t]) < cand[0]):
                    cand = (abs(a[i][t]), "r", i)
            for j in range(t + 1, cols):
                if a[t][j] and (cand is None or abs(a[t][j]) < cand[0]):
                    cand = (abs(a[t][j]), "c", j)
            if cand is not None:
                if cand[1] == "r":
                    swap_rows(t, cand[2])
                else:
                    swap_cols(t, cand[2])
                continue
            bad = next(
                (i for i in range(t + 1, rows) if any(a[i][j] % p for j in range(t + 1, cols))),
                None,
            )
            if bad is None:
                break
            add_row(t, bad, 1)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            if u is not None:
                u[t] = [-x for x in u[t]]
        factors.append(a[t][t])
    return factors


# ----------------------------------------------------------------------
# sparse boundary matrices
# ----------------------------------------------------------------------


@dataclass
class SparseMatrix:
    """Integer matrix stored as ``{(row, col): value}`` with explicit shape."""

    rows: int
    cols: int
    entries: dict[tuple[int, int], int] = field(default_factory=dict)

    def to_dense(self) -> IntegerMatrix:
        grid = [[0] * self.cols for _ in range(self.rows)]
        for (i, j), x in self.entries.items():
            grid[i][j] = x
        return IntegerMatrix(grid, self.cols)

    def column_sums(self) -> list[int]:
        sums = [0] * self.cols
        for (_, j), x in self.entries.items():
            sums[j] += x
        return sums

    def __matmul__(self, other: "SparseMatrix") -> "SparseMatrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        by_row: dict[int, list[tuple[int, int]]] = {}
        for (k, j), x in other.entries.items():
            by_row.setdefault(k, []).append((j, x))
        out: dict[tuple[int, int], int] = {}
        for (i, k), x in self.entries.items():
            for j, y in by_row.get(k, ()):
                out[i, j] = out.get((i, j), 0) + x * y
        return SparseMatrix(self.rows, other.cols, {key: x for key, x in out.items() if x})

    def is_zero(self) -> bool:
        return not any(self.entries.values())


def sparse_invariant_factors(m: SparseMatrix | IntegerMatrix) -> list[int]:
    """Nonzero invariant factors (units included) of a sparse integer matrix."""
    if isinstance(m, IntegerMatrix):
        m = SparseMatrix(m.rows, m.cols, {(i, j): x for i, row in enumerate(m.entries) for j, x in enumerate(row) if x})
    rows: dict[int, dict[int, int]] = {}
    cols: dict[int, set[int]] = {}
    for (i, j), x in m.entries.items():
        if x:
            rows.setdefault(i, {})[j] = x
            cols.setdefault(j, set()).add(i)

    units = 0
    progress = True
    while progress:
        progress = False
        for j in sorted(cols, key=lambda c: len(cols[c])):
            if j not in cols:
                continue
            cand = [i for i in cols[j] if abs(rows[i][j]) == 1]
            if not cand:
                continue
            pi = min(cand, key=lambda i: (len(rows[i]), i))
            prow = rows.pop(pi)
            pval = prow[j]
            for c in prow:
                cols[c].discard(pi)
            for i in list(cols[j]):
                row = rows[i]
                q = row[j] * pval  # pval is a unit, so this is row[j] / pval
                for c, x in prow.items():
                    nx = row.get(c, 0) - q * x
                    if nx:
                        if c not in row:
                            cols[c].add(i)
                        row[c] = nx
                    elif c in row:
                        del row[c]
                        cols[c].discard(i)
                if not row:
                    del rows[i]
            for c in list(prow):
                if not cols[c]:
                    del cols[c]
            cols.pop(j, None)
            units += 1
            progress = True

    rest = [1] * units
    if rows:
        rlist = sorted(rows)
        clist = sorted(cols)
        cindex = {c: k for k, c in enumerate(clist)}
        dense = [[0] * len(clist) for _ in rlist]
        for k, i in enumerate(rlist):
            for c, x in rows[i].items():
                dense[k][cindex[c]] = x
        rest += _dense_smith(dense, len(rlist), len(clist))
    return rest


# ----------------------------------------------------------------------
# chain complexes
# ----------------------------------------------------------------------


@dataclass
class ChainComplex:
    """``boundaries[r - 1]`` is d_r : C_r -> C_{r-1}, for r = 1 .. dim."""

    sizes: list[int]
    boundaries: list[SparseMatrix]

    @property
    def dimension(self) -> int:
        return len(self.sizes) - 1

    def check(self):
        for r, d in enumerate(self.boundaries, 1):
            if (d.rows, d.cols) != (self.sizes[r - 1], self.sizes[r]):
                raise InternalConsistencyError(f"d_{r} has shape {(d.rows, d.cols)}")
        for r in range(1, len(self.boundaries)):
            if not (self.boundaries[r - 1] @ self.boundaries[r]).is_zero():
                raise InternalConsistencyError(f"d_{r} o d_{r + 1} != 0")

    def euler_characteristic(self) -> int:
        return sum((-1) ** r * c for r, c in enumerate(self.sizes))


@dataclass
class HomologyResult:
    coefficients: Coefficients
    betti: list[int]
    torsion: list[list[int]]
    cohomology: bool = False

    def euler_characteristic(self) -> int:
        return sum((-1) ** r * b for r, b in enumerate(self.betti))

    def vanishes_in(self, degree: int) -> bool:
        if degree >= len(self.betti) or degree < 0:
            return True
        return self.betti[degree] == 0 and not self.torsion[degree]

    def describe(self, degree: int) -> str:
        if degree >= len(self.betti):
            return "0"
        base = coefficient_label(self.coefficients)
        b = self.betti[degree]
        parts = [base if b == 1 else f"{base}^{b}"] if b else []
        parts += [f"Z/{t}" for t in self.torsion[degree]]
        return " + ".join(parts) or "0"


def _rank_data(c: ChainComplex):
    return [sparse_invariant_factors(d) for d in c.boundaries]


def _rank_over(factors: list[int], coeff: Coefficients) -> int:
    if isinstance(coeff, int):
        return sum(1 for x in factors if x % coeff)
    return len(factors)


def homology(c: ChainComplex, coefficients: Coefficients = "Z", cohomology: bool = False) -> HomologyResult:
    """H_r (or H^r with ``cohomology``) for every degree of ``c``.

    Torsion is reported only for integer coefficients.
    """
    coeff = parse_coefficients(coefficients)
    facs = _rank_data(c)
    ranks = [0] + [_rank_over(f, coeff) for f in facs] + [0]
    betti = [c.sizes[r] - ranks[r] - ranks[r + 1] for r in range(len(c.sizes))]
    torsion: list[list[int]] = [[] for _ in c.sizes]
    if coeff == "Z":
        # torsion of H_r comes from d_{r+1}
        for r in range(len(c.sizes)):
            if r < len(facs):
                torsion[r] = [x for x in facs[r] if x > 1]
        if cohomology:
            torsion = [[]] + torsion[:-1]
    return HomologyResult(coeff, betti, torsion, cohomology)


def cohomology(c: ChainComplex, coefficients: Coefficients = "Z") -> HomologyResult:
    return homology(c, coefficients, cohomology=True)


def reduced_homology_vanishes(res: HomologyResult) -> bool:
    if not res.betti:
        return False
    first = res.betti[0] == 1 and not res.torsion[0]
    return first and all(res.vanishes_in(r) for r in range(1, len(res.betti)))


def boundary_matrices(q) -> ChainComplex:
    """Boundary operators of a built quotient complex.

    Entry (f, c) of d_r is the signed count of face positions i with d_i(c) = f.
    """
    sizes = [len(level) for level in q.faces]
    mats = []
    for r in range(1, len(sizes)):
        entries: dict[tuple[int, int], int] = {}
        for col, faces in enumerate(q.faces[r]):
            if len(faces) != r + 1:
                raise InternalConsistencyError(f"cell {col} of dim {r} has {len(faces)} faces")
            for i, f in enumerate(faces):
                entries[f, col] = entries.get((f, col), 0) + (-1) ** i
        mats.append(SparseMatrix(sizes[r - 1], sizes[r], {k: x for k, x in entries.items() if x}))
    cc = ChainComplex(sizes, mats)
    cc.check()
    return cc
