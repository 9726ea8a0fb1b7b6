"""Quotient moduli complexes built from chains of forest collapses.

A cell is an isomorphism class of a pair (top, flag) where ``top`` is an
admissible tree reachable from a maximal tree by collapse and ``flag`` is a
strictly increasing sequence of nonempty subforests F_1 < ... < F_r of top.
Its vertices are top, top/F_1, ..., top/F_r.  Decorated automorphisms that
preserve a chain fix it elementwise, so orbit cells have well-defined ordered
faces and the quotient is a Delta-complex.
"""

from __future__ import annotations

import os
from collections import Counter, defaultdict
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Sequence

from .homology import InternalConsistencyError
from .treespace import (
    AdmissibleTree,
    TreeError,
    _maximal_sigma_trees,
    canonical_form,
    collapse,
    collapse_with_map,
    enumerate_maximal_p_trees,
    forest_stabilizer,
    has_odd_edge_permutation,
    subforests,
)

WORKERS_ENV = "PALINDROMIC_WORKERS"


@dataclass(frozen=True)
class Family:
    kind: str  # "sigma" or "p_sigma"
    n: int
    p: int | None = None

    def __post_init__(self):
        if self.kind == "sigma":
            if self.n < 1:
                raise TreeError(f"rank must be >= 1, got {self.n}")
        elif self.kind == "p_sigma":
            if self.p is None or self.n < self.p:
                raise TreeError(f"p-case needs n >= p, got n={self.n}, p={self.p}")
        else:
            raise ValueError(f"unknown family {self.kind!r}")

    @property
    def m(self) -> int:
        return self.n - self.p if self.kind == "p_sigma" else self.n

    @property
    def top_dimension(self) -> int:
        return self.n - 1 if self.kind == "sigma" else self.n - self.p

    def maximal_trees(self) -> list[AdmissibleTree]:
        if self.kind == "sigma":
            return _maximal_sigma_trees(self.n)
        return enumerate_maximal_p_trees(self.p, self.n)

    def label(self) -> str:
        return f"sigma({self.n})" if self.kind == "sigma" else f"p_sigma({self.p},{self.n})"


def sigma(n: int) -> Family:
    return Family("sigma", n)


def p_sigma(p: int, n: int) -> Family:
    return Family("p_sigma", n, p)


@dataclass(frozen=True)
class Cell:
    top: AdmissibleTree
    flag: tuple[frozenset, ...] = ()

    @property
    def dimension(self) -> int:
        return len(self.flag)

    def levels(self) -> list[int]:
        """Edge k gets the index of the first flag member containing it, else 0."""
        out = [0] * len(self.top.edges)
        for i in range(len(self.flag), 0, -1):
            for k in self.flag[i - 1]:
                out[k] = i
        return out

    def vertices(self) -> list[AdmissibleTree]:
        return [self.top] + [collapse(self.top, f) for f in self.flag]


def cell_canonical(c: Cell) -> str:
    return f"{c.dimension}#" + canonical_form(c.top, c.levels())


def faces(c: Cell) -> list[Cell]:
    """The r+1 codimension-one faces; face i omits vertex i of the chain."""
    r = c.dimension
    if r == 0:
        raise ValueError("a vertex has no faces")
    quotient, emap = collapse_with_map(c.top, c.flag[0])
    rerooted = tuple(frozenset(emap[k] for k in f if emap[k] is not None) for f in c.flag[1:])
    out = [Cell(quotient, rerooted)]
    for i in range(1, r + 1):
        out.append(Cell(c.top, c.flag[: i - 1] + c.flag[i:]))
    return out


def chains(t: AdmissibleTree, forests: Sequence[frozenset] | None = None) -> list[Cell]:
    """Every strictly increasing flag of nonempty subforests of t (plus the empty flag)."""
    forests = [f for f in (forests or subforests(t)) if f]
    supersets = {f: [g for g in forests if len(g) > len(f) and f < g] for f in forests}
    out = [Cell(t, ())]

    def extend(flag):
        out.append(Cell(t, flag))
        for g in supersets[flag[-1]]:
            extend(flag + (g,))

    for f in forests:
        extend((f,))
    return out


def _cells_from_tree(t: AdmissibleTree) -> dict[str, Cell]:
    found: dict[str, Cell] = {}
    for c in chains(t):
        found.setdefault(cell_canonical(c), c)
    return found


@dataclass
class QuotientComplex:
    """Cells per dimension (sorted by key) and, for each cell, its face indices."""

    keys: list[list[str]]
    faces: list[list[tuple[int, ...]]]
    cells: list[list[Cell]] | None = None
    family: Family | None = None
    index: dict[str, tuple[int, int]] = field(default_factory=dict)

    def __post_init__(self):
        if not self.index:
            self.index = {k: (d, i) for d, level in enumerate(self.keys) for i, k in enumerate(level)}

    @property
    def dimension(self) -> int:
        return len(self.keys) - 1

    def f_vector(self) -> list[int]:
        return [len(level) for level in self.keys]

    @classmethod
    def from_faces(cls, faces_by_dim: Sequence[Sequence[Sequence[int]]], keys=None) -> "QuotientComplex":
        """Build an abstract Delta-complex from face lists; ``faces_by_dim[0]`` gives the vertex count."""
        sizes = [len(level) for level in faces_by_dim]
        if keys is None:
            keys = [[f"{d}#{i}" for i in range(s)] for d, s in enumerate(sizes)]
        return cls(keys, [[tuple(f) for f in level] for level in faces_by_dim])


def _worker_count(workers: int | None) -> int:
    if workers is None:
        workers = int(os.environ.get(WORKERS_ENV, "1") or 1)
    return max(1, workers)


def vertex_trees(family: Family) -> dict[str, AdmissibleTree]:
    """All collapses of maximal trees, keyed by canonical form."""
    out: dict[str, AdmissibleTree] = {}
    for t in family.maximal_trees():
        for s in subforests(t):
            q = collapse(t, s)
            out.setdefault(canonical_form(q), q)
    return {k: out[k] for k in sorted(out)}


def build_complex(family: Family, workers: int | None = None) -> QuotientComplex:
    """Enumerate chain-orbit cells and their faces for ``family``."""
    verts = vertex_trees(family)
    tops = list(verts.values())
    nworkers = _worker_count(workers)
    if nworkers > 1 and len(tops) > 1:
        with ProcessPoolExecutor(nworkers) as pool:
            parts = list(pool.map(_cells_from_tree, tops))
    else:
        parts = [_cells_from_tree(t) for t in tops]
    found: dict[str, Cell] = {}
    for part in parts:  # deterministic: tops are in canonical order
        for k, c in part.items():
            found.setdefault(k, c)

    dim = max(c.dimension for c in found.values())
    keys = [sorted(k for k, c in found.items() if c.dimension == d) for d in range(dim + 1)]
    index = {k: (d, i) for d, level in enumerate(keys) for i, k in enumerate(level)}
    cells = [[found[k] for k in level] for level in keys]
    face_lists: list[list[tuple[int, ...]]] = [[() for _ in keys[0]]]
    for d in range(1, dim + 1):
        level = []
        for c in cells[d]:
            idx = []
            for f in faces(c):
                key = cell_canonical(f)
                if key not in index:
                    raise InternalConsistencyError(f"face {key} of a {d}-cell is not a cell")
                idx.append(index[key][1])
            level.append(tuple(idx))
        face_lists.append(level)
    q = QuotientComplex(keys, face_lists, cells, family, index)
    check_face_identities(q)
    return q


def check_face_identities(q: QuotientComplex):
    """d_i d_j = d_{j-1} d_i for i < j on every cell of dimension >= 2."""
    for d in range(2, q.dimension + 1):
        for c, fs in enumerate(q.faces[d]):
            for j in range(d + 1):
                for i in range(j):
                    if q.faces[d - 1][fs[j]][i] != q.faces[d - 1][fs[i]][j - 1]:
                        raise InternalConsistencyError(f"face identity fails on cell {d}:{c} at ({i},{j})")


@dataclass
class Stats:
    f_vector: list[int]
    dimension: int
    components: int
    euler_characteristic: int


def stats(q: QuotientComplex) -> Stats:
    fv = q.f_vector()
    parent = list(range(fv[0]))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    if len(fv) > 1:
        for a, b in q.faces[1]:
            parent[find(a)] = find(b)
    comps = len({find(v) for v in range(fv[0])})
    chi = sum((-1) ** d * c for d, c in enumerate(fv))
    return Stats(fv, q.dimension, comps, chi)


# ----------------------------------------------------------------------
# maximal cubes and free faces
# ----------------------------------------------------------------------


@dataclass
class CubePair:
    tree: AdmissibleTree
    forest: frozenset
    degenerate: bool

    def key(self) -> str:
        return canonical_form(self.tree, [int(k in self.forest) for k in range(len(self.tree.edges))])


def enumerate_maximal_cubes(family: Family) -> list[CubePair]:
    """Classes of (maximal tree, subforest of top size), flagged degenerate when
    some stabilizer element permutes the forest's edges oddly."""
    cubes: dict[str, CubePair] = {}
    top = family.top_dimension
    for t in family.maximal_trees():
        for s in subforests(t):
            if len(s) != top:
                continue
            cube = CubePair(t, s, False)
            k = cube.key()
            if k not in cubes:
                cube.degenerate = has_odd_edge_permutation(t, s)
                cubes[k] = cube
    return [cubes[k] for k in sorted(cubes)]


def _face_key(t: AdmissibleTree, s: frozenset, e: int) -> str:
    q, emap = collapse_with_map(t, [e])
    rest = {emap[k] for k in s if k != e}
    return canonical_form(q, [int(k in rest) for k in range(len(q.edges))])


def _edge_orbits(t: AdmissibleTree, s: frozenset) -> list[list[int]]:
    stab = forest_stabilizer(t, s)
    perms = [g.edge_permutation(t) for g in stab]
    seen: set[int] = set()
    orbits = []
    for e in sorted(s):
        if e in seen:
            continue
        orb = sorted({ep[e] for ep in perms})
        seen.update(orb)
        orbits.append(orb)
    return orbits


@dataclass
class FreeFaceEntry:
    cube: str
    degenerate: bool
    terminal_edge: int | None
    face: str | None
    occurrences: int  # (cube class, edge orbit) pairs producing that face

    @property
    def passed(self) -> bool:
        return self.terminal_edge is not None and self.occurrences == 1


@dataclass
class FreeFaceReport:
    family: Family
    entries: list[FreeFaceEntry]

    @property
    def passed(self) -> bool:
        return all(e.passed for e in self.entries)


def verify_free_faces(family: Family) -> FreeFaceReport:
    """For every maximal cube class find a terminal edge whose codimension-one
    face (T/e, S/e) occurs in exactly one cube class, via one edge orbit."""
    cubes = enumerate_maximal_cubes(family)
    occurrences: Counter = Counter()
    orbit_faces = []
    for cube in cubes:
        per = []
        for orb in _edge_orbits(cube.tree, cube.forest):
            fk = _face_key(cube.tree, cube.forest, orb[0])
            occurrences[fk] += 1
            per.append((orb, fk))
        orbit_faces.append(per)
    entries = []
    for cube, per in zip(cubes, orbit_faces):
        terminal = set(cube.tree.terminal_edges())
        best = None
        for orb, fk in per:
            if orb[0] in terminal:
                if best is None or (occurrences[fk] == 1 and occurrences[best[1]] != 1):
                    best = (orb[0], fk)
        if best is None:
            entries.append(FreeFaceEntry(cube.key(), cube.degenerate, None, None, 0))
        else:
            entries.append(FreeFaceEntry(cube.key(), cube.degenerate, best[0], best[1], occurrences[best[1]]))
    return FreeFaceReport(family, entries)


# ----------------------------------------------------------------------
# collapsibility
# ----------------------------------------------------------------------


def greedy_collapsibility(q: QuotientComplex) -> bool:
    """Remove free pairs (a face with exactly one coface incidence) until stuck;
    true iff a single vertex remains."""
    alive = {(d, i) for d, level in enumerate(q.keys) for i in range(len(level))}
    cof: dict[tuple[int, int], Counter] = defaultdict(Counter)
    for d in range(1, q.dimension + 1):
        for i, fs in enumerate(q.faces[d]):
            for f in fs:
                cof[(d - 1, f)][(d, i)] += 1

    def free_coface(cell):
        c = cof[cell]
        if sum(c.values()) == 1:
            return next(iter(c))
        return None

    def remove(cell):
        alive.discard(cell)
        d, i = cell
        if d > 0:
            for f in q.faces[d][i]:
                cnt = cof[(d - 1, f)]
                cnt[cell] -= 1
                if cnt[cell] == 0:
                    del cnt[cell]
                stack.append((d - 1, f))

    stack = sorted(alive, reverse=True)
    while stack:
        cell = stack.pop()
        if cell not in alive:
            continue
        tau = free_coface(cell)
        if tau is None or tau not in alive:
            continue
        remove(tau)
        remove(cell)
    return len(alive) == 1 and next(iter(alive))[0] == 0
