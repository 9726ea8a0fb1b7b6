"""Admissible trees: pointed trees with attaching points and an optional theta vertex.

A tree with attaching set A stands for the graph obtained by doubling it
along A (and, in the p-case, hanging a theta graph with p edges between the
two copies of the theta vertex).  Edges are identified by their position in
``AdmissibleTree.edges``; a subforest is a frozenset of such positions.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from typing import Iterable, Sequence

Subforest = frozenset


class TreeError(ValueError):
    pass


class InvalidCollapse(TreeError):
    pass


@dataclass(frozen=True)
class AdmissibleTree:
    num_vertices: int
    edges: tuple[tuple[int, int], ...]
    attach: frozenset
    basepoint: int = 0
    theta: int | None = None
    theta_edge_count: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "edges", tuple(tuple(sorted(e)) for e in self.edges))
        object.__setattr__(self, "attach", frozenset(self.attach))
        nv = self.num_vertices
        if len(self.edges) != nv - 1:
            raise TreeError(f"{nv} vertices need {nv - 1} edges, got {len(self.edges)}")
        parent = list(range(nv))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for u, v in self.edges:
            if not (0 <= u < nv and 0 <= v < nv) or u == v:
                raise TreeError(f"bad edge {(u, v)}")
            ru, rv = find(u), find(v)
            if ru == rv:
                raise TreeError("edges contain a cycle")
            parent[ru] = rv
        if self.basepoint not in self.attach:
            raise TreeError("basepoint must be an attaching point")
        if any(d == 1 and v not in self.attach for v, d in enumerate(self.valences())):
            raise TreeError("every valence-1 vertex must be an attaching point")
        if (self.theta is None) != (self.theta_edge_count is None):
            raise TreeError("theta vertex and theta edge count go together")
        if self.theta is not None and not 0 <= self.theta < nv:
            raise TreeError("theta vertex out of range")

    @property
    def is_p_tree(self) -> bool:
        return self.theta is not None

    def valences(self) -> list[int]:
        deg = [0] * self.num_vertices
        for u, v in self.edges:
            deg[u] += 1
            deg[v] += 1
        return deg

    def neighbors(self) -> list[list[tuple[int, int]]]:
        """adjacency as lists of (neighbor, edge index)"""
        adj: list[list[tuple[int, int]]] = [[] for _ in range(self.num_vertices)]
        for k, (u, v) in enumerate(self.edges):
            adj[u].append((v, k))
            adj[v].append((u, k))
        return adj

    @property
    def rank(self) -> int:
        r = len(self.attach) - 1
        return r + self.theta_edge_count if self.is_p_tree else r

    def terminal_edges(self) -> list[int]:
        """Edges with at least one attaching endpoint."""
        return [k for k, (u, v) in enumerate(self.edges) if u in self.attach or v in self.attach]

    def __str__(self):
        return canonical_form(self)


# ----------------------------------------------------------------------
# canonical encodings
# ----------------------------------------------------------------------


def _rooted(t: AdmissibleTree):
    """Children lists and parent-edge indices with the basepoint as root."""
    adj = t.neighbors()
    children: list[list[tuple[int, int]]] = [[] for _ in range(t.num_vertices)]
    order = [t.basepoint]
    seen = {t.basepoint}
    for u in order:
        for v, k in adj[u]:
            if v not in seen:
                seen.add(v)
                children[u].append((v, k))
                order.append(v)
    return children, order


def _token(t: AdmissibleTree, v: int) -> str:
    tok = ("a" if v in t.attach else "") + ("o" if v == t.theta else "")
    return tok or "v"


def _subtree_codes(t: AdmissibleTree, labels: Sequence[int] | None = None) -> list[str]:
    children, order = _rooted(t)
    codes = [""] * t.num_vertices
    for u in reversed(order):
        parts = sorted(
            (f"{labels[k]}:" if labels is not None else "") + codes[v] for v, k in children[u]
        )
        codes[u] = f"{_token(t, u)}({','.join(parts)})"
    return codes


def canonical_form(t: AdmissibleTree, edge_labels: Sequence[int] | None = None) -> str:
    """Encoding equal for two trees iff a decorated isomorphism relates them.

    Isomorphisms fix the basepoint and the theta vertex and preserve the
    attaching set; with ``edge_labels`` they must also preserve the labels.
    """
    code = _subtree_codes(t, edge_labels)[t.basepoint]
    return f"p{t.theta_edge_count}|{code}" if t.is_p_tree else code


_TOKEN = re.compile(r"(\d+:)?([ao]+|v)\(")


def parse_tree(text: str) -> tuple[AdmissibleTree, list[int] | None]:
    """Inverse of :func:`canonical_form`; returns the tree and its edge labels."""
    p = None
    if text.startswith("p"):
        head, text = text.split("|", 1)
        p = int(head[1:])
    edges: list[tuple[int, int]] = []
    labels: list[int] = []
    attach: set[int] = set()
    theta = None
    pos = 0

    def node(parent: int | None, label: int | None) -> int:
        nonlocal pos, theta
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ValueError(f"cannot parse tree encoding at {text[pos:pos + 20]!r}")
        v = len(attach_flags)
        tok = m.group(2)
        attach_flags.append(tok)
        if "a" in tok:
            attach.add(v)
        if "o" in tok:
            theta = v
        if parent is not None:
            edges.append((parent, v))
            labels.append(label)
        pos = m.end()
        while text[pos] != ")":
            child = _TOKEN.match(text, pos)
            if child is None:
                raise ValueError(f"cannot parse tree encoding at {text[pos:pos + 20]!r}")
            lab = child.group(1)
            node(v, int(lab[:-1]) if lab else None)
            if text[pos] == ",":
                pos += 1
        pos += 1
        return v

    attach_flags: list[str] = []
    try:
        node(None, None)
    except IndexError:
        raise ValueError("truncated tree encoding") from None
    if pos != len(text):
        raise ValueError("trailing characters in tree encoding")
    tree = AdmissibleTree(len(attach_flags), tuple(edges), frozenset(attach), 0, theta, p)
    # AdmissibleTree sorts each edge pair but keeps positions, so labels stay aligned
    has_labels = any(l is not None for l in labels)
    return tree, (labels if has_labels else None)


# ----------------------------------------------------------------------
# enumeration
# ----------------------------------------------------------------------


def _binary_shapes(leaves: int) -> list:
    """Unordered full binary trees with the given number of leaves, as nested tuples."""
    shapes: dict[int, list] = {1: ["L"]}
    for k in range(2, leaves + 1):
        out = set()
        for a in range(1, k // 2 + 1):
            for x in shapes[a]:
                for y in shapes[k - a]:
                    out.add(tuple(sorted((x, y), key=repr)))
        shapes[k] = sorted(out, key=repr)
    return shapes[leaves]


def _shape_to_tree(shape) -> tuple[int, list[tuple[int, int]]]:
    """Basepoint 0 joined to the root of the shape."""
    edges: list[tuple[int, int]] = []
    count = 1

    def build(s, parent):
        nonlocal count
        v = count
        count += 1
        edges.append((parent, v))
        if s != "L":
            for child in s:
                build(child, v)

    build(shape, 0)
    return count, edges


def _leaf_tree(num_vertices, edges, **kw) -> AdmissibleTree:
    deg = [0] * num_vertices
    for u, v in edges:
        deg[u] += 1
        deg[v] += 1
    attach = frozenset(v for v in range(num_vertices) if deg[v] == 1)
    return AdmissibleTree(num_vertices, tuple(edges), attach, 0, **kw)


def enumerate_maximal_trees(n: int) -> list[AdmissibleTree]:
    """Pointed trees with 2n-1 edges, all valences 1 or 3, basepoint a leaf.

    The attaching points are the n+1 leaves.
    """
    if n < 2:
        raise TreeError(f"maximal trees need rank >= 2, got {n}")
    return _maximal_sigma_trees(n)


def _maximal_sigma_trees(n: int) -> list[AdmissibleTree]:
    # n == 1 gives the single edge * -- v
    trees = {}
    for shape in _binary_shapes(n):
        nv, edges = _shape_to_tree(shape)
        t = _leaf_tree(nv, edges)
        trees.setdefault(canonical_form(t), t)
    return [trees[k] for k in sorted(trees)]


def enumerate_maximal_p_trees(p: int, n: int) -> list[AdmissibleTree]:
    """Maximal p-admissible trees of rank n.

    Leaves are the attaching points, the theta vertex is the only valence-2
    vertex, all other vertices are trivalent.  For n == p the tree is a single
    vertex that is both basepoint and theta vertex.
    """
    if n < p:
        raise TreeError(f"no theta graph with {p} edges fits in rank {n}")
    m = n - p
    if m == 0:
        return [AdmissibleTree(1, (), frozenset({0}), 0, 0, p)]
    trees = {}
    for base in _maximal_sigma_trees(m):
        for k, (u, v) in enumerate(base.edges):
            w = base.num_vertices
            edges = [e for j, e in enumerate(base.edges) if j != k] + [(u, w), (w, v)]
            t = AdmissibleTree(w + 1, tuple(edges), base.attach, 0, w, p)
            trees.setdefault(canonical_form(t), t)
    return [trees[k] for k in sorted(trees)]


# ----------------------------------------------------------------------
# subforests and collapse
# ----------------------------------------------------------------------


def is_subforest(t: AdmissibleTree, s: Iterable[int]) -> bool:
    parent = list(range(t.num_vertices))
    count = [int(v in t.attach) for v in range(t.num_vertices)]

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for k in s:
        u, v = t.edges[k]
        ru, rv = find(u), find(v)
        if count[ru] + count[rv] > 1:
            return False
        parent[ru] = rv
        count[rv] += count[ru]
    return True


def subforests(t: AdmissibleTree) -> list[Subforest]:
    """All edge sets with at most one attaching point in each component."""
    out: list[Subforest] = []
    ne = len(t.edges)

    def rec(k: int, chosen: list[int]):
        if k == ne:
            out.append(frozenset(chosen))
            return
        rec(k + 1, chosen)
        chosen.append(k)
        if is_subforest(t, chosen):
            rec(k + 1, chosen)
        chosen.pop()

    rec(0, [])
    out.sort(key=lambda s: (len(s), sorted(s)))
    return out


def maximal_subforests(t: AdmissibleTree) -> list[Subforest]:
    """Subforests not contained in any larger subforest."""
    sfs = subforests(t)
    return [s for s in sfs if not any(len(o) > len(s) and s < o for o in sfs)]


def collapse_with_map(t: AdmissibleTree, s: Iterable[int]) -> tuple[AdmissibleTree, list[int | None]]:
    """Contract the edges of ``s``; also return the old-edge -> new-edge map.

    Merged vertices are attaching (resp. theta, basepoint) iff some
    constituent was.
    """
    s = frozenset(s)
    if not is_subforest(t, s):
        raise InvalidCollapse(f"{sorted(s)} is not a subforest")
    parent = list(range(t.num_vertices))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for k in s:
        u, v = t.edges[k]
        parent[find(u)] = find(v)
    roots: dict[int, int] = {}
    for v in range(t.num_vertices):
        roots.setdefault(find(v), len(roots))
    new = [roots[find(v)] for v in range(t.num_vertices)]
    edges, emap = [], []
    for k, (u, v) in enumerate(t.edges):
        if k in s:
            emap.append(None)
        else:
            emap.append(len(edges))
            edges.append((new[u], new[v]))
    tree = AdmissibleTree(
        len(roots),
        tuple(edges),
        frozenset(new[v] for v in t.attach),
        new[t.basepoint],
        None if t.theta is None else new[t.theta],
        t.theta_edge_count,
    )
    return tree, emap


def collapse(t: AdmissibleTree, s: Iterable[int]) -> AdmissibleTree:
    return collapse_with_map(t, s)[0]


# ----------------------------------------------------------------------
# doubled graphs
# ----------------------------------------------------------------------


@dataclass
class DoubledGraph:
    """Two copies of a tree glued along the attaching points.

    Vertices are ``("v", x)`` for attaching x, ``("v", x, c)`` for copy c of a
    non-attaching x, and ``("m", k)`` for the midpoint of theta edge k.
    Edges are keyed ``("e", k, c)`` for copy c of tree edge k and
    ``("t", k, c)`` for the half of theta edge k next to copy c of the theta
    vertex.
    """

    vertices: list
    edges: dict
    basepoint: tuple
    involution: dict
    rotation: dict | None = None

    def betti(self) -> int:
        return len(self.edges) - len(self.vertices) + 1

    def apply(self, action: dict, item):
        return action.get(item, item)


def double(t: AdmissibleTree) -> DoubledGraph:
    def vert(x, c):
        return ("v", x) if x in t.attach else ("v", x, c)

    vertices = []
    for x in range(t.num_vertices):
        vertices += [("v", x)] if x in t.attach else [("v", x, 1), ("v", x, 2)]
    edges = {}
    inv: dict = {}
    for k, (u, v) in enumerate(t.edges):
        for c in (1, 2):
            edges[("e", k, c)] = (vert(u, c), vert(v, c))
        inv[("e", k, 1)], inv[("e", k, 2)] = ("e", k, 2), ("e", k, 1)
    for x in range(t.num_vertices):
        if x not in t.attach:
            inv[("v", x, 1)], inv[("v", x, 2)] = ("v", x, 2), ("v", x, 1)
    rot = None
    if t.is_p_tree:
        p = t.theta_edge_count
        rot = {}
        for k in range(p):
            mid = ("m", k)
            vertices.append(mid)
            for c in (1, 2):
                edges[("t", k, c)] = (vert(t.theta, c), mid)
                rot[("t", k, c)] = ("t", (k + 1) % p, c)
            rot[mid] = ("m", (k + 1) % p)
            inv[("t", k, 1)], inv[("t", k, 2)] = ("t", k, 2), ("t", k, 1)
    return DoubledGraph(vertices, edges, ("v", t.basepoint), inv, rot)


# ----------------------------------------------------------------------
# automorphisms
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class TreeAutomorphism:
    perm: tuple[int, ...]  # vertex v -> perm[v]

    def edge_permutation(self, t: AdmissibleTree) -> list[int]:
        index = {e: k for k, e in enumerate(t.edges)}
        return [index[tuple(sorted((self.perm[u], self.perm[v])))] for u, v in t.edges]

    def compose(self, other: "TreeAutomorphism") -> "TreeAutomorphism":
        """self after other"""
        return TreeAutomorphism(tuple(self.perm[x] for x in other.perm))

    def order(self) -> int:
        k, g = 1, self
        ident = tuple(range(len(self.perm)))
        while g.perm != ident:
            g = self.compose(g)
            k += 1
        return k


def automorphisms(t: AdmissibleTree, edge_labels: Sequence[int] | None = None) -> list[TreeAutomorphism]:
    """All decorated automorphisms (optionally preserving edge labels).

    Subtrees are matched only when their canonical codes agree, so the search
    never explores a non-isomorphic pairing.
    """
    children, _ = _rooted(t)
    codes = _subtree_codes(t, edge_labels)

    def child_key(v, k):
        return (edge_labels[k] if edge_labels is not None else None, codes[v])

    def maps(u: int, w: int) -> list[dict[int, int]]:
        groups_u: dict = {}
        groups_w: dict = {}
        for v, k in children[u]:
            groups_u.setdefault(child_key(v, k), []).append(v)
        for v, k in children[w]:
            groups_w.setdefault(child_key(v, k), []).append(v)
        partials = [{u: w}]
        for key, us in groups_u.items():
            ws = groups_w[key]
            options = []
            for perm in itertools.permutations(ws):
                sub = [{}]
                for a, b in zip(us, perm):
                    sub = [{**x, **y} for x in sub for y in maps(a, b)]
                options += sub
            partials = [{**x, **y} for x in partials for y in options]
        return partials

    out = []
    for mp in maps(t.basepoint, t.basepoint):
        out.append(TreeAutomorphism(tuple(mp[v] for v in range(t.num_vertices))))
    out.sort(key=lambda a: a.perm)
    return out


def _labels_for(t: AdmissibleTree, s: Iterable[int]) -> list[int]:
    s = set(s)
    return [int(k in s) for k in range(len(t.edges))]


def forest_stabilizer(t: AdmissibleTree, s: Iterable[int]) -> list[TreeAutomorphism]:
    """Automorphisms of t carrying the subforest s onto itself."""
    return automorphisms(t, _labels_for(t, s))


def permutation_is_odd(perm: dict[int, int]) -> bool:
    seen, transpositions = set(), 0
    for start in perm:
        if start in seen:
            continue
        length, x = 0, start
        while x not in seen:
            seen.add(x)
            x = perm[x]
            length += 1
        transpositions += length - 1
    return transpositions % 2 == 1


def has_odd_edge_permutation(t: AdmissibleTree, s: Iterable[int]) -> bool:
    s = frozenset(s)
    for g in forest_stabilizer(t, s):
        ep = g.edge_permutation(t)
        if permutation_is_odd({k: ep[k] for k in s}):
            return True
    return False
