"""Parameterized checks of the quantitative claims, shared by the CLI report and the acceptance tests."""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field

from . import expected
from .farrell import assemble_farrell, sigma_p_comparison
from .homology import boundary_matrices, cohomology, homology, reduced_homology_vanishes
from .moduli import build_complex, greedy_collapsibility, p_sigma, sigma, stats, verify_free_faces
from .treespace import automorphisms, enumerate_maximal_trees
from .wordcore import (
    EPA,
    LEFT_FIRST,
    PSA,
    column_parity_ok,
    epa_abelianization_invariants,
    exponent_matrix,
    verify_relators,
)
from .wordcore.presentation import random_pi_a_product


@dataclass
class ClaimResult:
    name: str
    passed: bool = True
    details: list[str] = field(default_factory=list)
    seconds: float = 0.0

    def note(self, ok: bool, line: str):
        self.details.append(("ok   " if ok else "FAIL ") + line)
        if not ok:
            self.passed = False


class _Timer:
    def __init__(self, result: ClaimResult):
        self.result = result

    def __enter__(self):
        self.start = time.perf_counter()
        return self.result

    def __exit__(self, *exc):
        self.result.seconds = time.perf_counter() - self.start
        return False


_complex_cache: dict = {}


def _complex(family):
    if family not in _complex_cache:
        _complex_cache[family] = build_complex(family)
    return _complex_cache[family]


def relators(ns=(3, 4, 5)) -> ClaimResult:
    res = ClaimResult("EPA relators hold under one composition convention")
    with _Timer(res):
        for n in ns:
            rep = verify_relators(n, EPA)
            ok = LEFT_FIRST in rep.conventions_satisfied()
            res.note(ok, f"n={n}: {len(rep.checks)} instances, conventions {rep.conventions_satisfied()}")
    return res


def abelianization(ns=(3, 4, 5)) -> ClaimResult:
    res = ClaimResult("abelianization invariants of EPA and PSA")
    with _Timer(res):
        for n in ns:
            epa = epa_abelianization_invariants(n, EPA)
            psa = epa_abelianization_invariants(n, PSA)
            res.note(sorted(epa) == expected.epa_invariants(n), f"n={n}: EPA factors {_summarize(epa)}")
            res.note(sorted(psa) == expected.psa_invariants(n), f"n={n}: PSA factors {_summarize(psa)}")
    return res


def _summarize(factors):
    counts: dict[int, int] = {}
    for d in factors:
        counts[d] = counts.get(d, 0) + 1
    return ", ".join(f"{'Z' if d == 0 else f'Z/{d}'} x{c}" for d, c in sorted(counts.items())) or "trivial"


def gl_parity(samples=1000, seed=0, max_n=6, max_length=20) -> ClaimResult:
    res = ClaimResult("exponent matrices of random products have one odd entry per column")
    with _Timer(res):
        rng = random.Random(seed)
        bad = 0
        for _ in range(samples):
            n = rng.randint(1, max_n)
            f, _ = random_pi_a_product(n, rng, max_length)
            if not column_parity_ok(exponent_matrix(f)):
                bad += 1
        res.note(bad == 0, f"{samples} products (seed {seed}, n <= {max_n}, length <= {max_length}), {bad} failures")
    return res


def tree_census(max_n=6) -> ClaimResult:
    res = ClaimResult("maximal sigma-trees: edge and valence counts, 2-group automorphisms")
    with _Timer(res):
        for n in range(2, max_n + 1):
            trees = enumerate_maximal_trees(n)
            shape_ok = all(
                len(t.edges) == 2 * n - 1 and t.valences().count(1) == n + 1 and t.valences().count(3) == n - 1
                for t in trees
            )
            orders = [len(automorphisms(t)) for t in trees]
            two_power = all(o & (o - 1) == 0 for o in orders)
            res.note(shape_ok and two_power, f"n={n}: {len(trees)} classes, |Aut| {orders}")
    return res


def dimensions(sigma_ns=(2, 3, 4, 5), p=3, ms=(0, 1, 2)) -> ClaimResult:
    res = ClaimResult("dimensions of the quotient complexes")
    with _Timer(res):
        for n in sigma_ns:
            q = _complex(sigma(n))
            res.note(q.dimension == expected.sigma_dimension(n), f"sigma({n}): dimension {q.dimension}")
        for m in ms:
            q = _complex(p_sigma(p, p + m))
            res.note(q.dimension == expected.p_case_dimension(p, p + m), f"p_sigma({p},{p + m}): dimension {q.dimension}")
    return res


def p_case_f_vectors(p=3, ms=(0, 1, 2)) -> ClaimResult:
    res = ClaimResult("f-vectors and Euler characteristic of the p-case quotients")
    with _Timer(res):
        for m in ms:
            st = stats(_complex(p_sigma(p, p + m)))
            want = expected.P_CASE_F_VECTORS[m].value
            ok = tuple(st.f_vector) == want and st.euler_characteristic == expected.P_CASE_EULER.value
            res.note(ok, f"p_sigma({p},{p + m}): f-vector {tuple(st.f_vector)} (expected {want}), chi {st.euler_characteristic}")
    return res


def top_vanishing(sigma_ns=(2, 3, 4, 5), primes=(3, 5, 7), p=3, ms=(1, 2)) -> ClaimResult:
    res = ClaimResult("top-degree cohomology vanishes")
    with _Timer(res):
        for n in sigma_ns:
            cc = boundary_matrices(_complex(sigma(n)))
            top = n - 1
            for coeff in ("Q", *primes):
                h = cohomology(cc, coeff)
                res.note(h.vanishes_in(top), f"sigma({n}): H^{top} over {_label(coeff)} = {h.describe(top)}")
        for m in ms:
            cc = boundary_matrices(_complex(p_sigma(p, p + m)))
            h = cohomology(cc, p)
            res.note(h.vanishes_in(m), f"p_sigma({p},{p + m}): H^{m} over F_{p} = {h.describe(m)}")
    return res


def _label(coeff):
    return "Q" if coeff == "Q" else f"F_{coeff}"


def contractibility(p=3, ms=(0, 1, 2)) -> ClaimResult:
    res = ClaimResult("p-case quotients collapse to a point")
    with _Timer(res):
        for m in ms:
            q = _complex(p_sigma(p, p + m))
            collapsible = greedy_collapsibility(q)
            acyclic = reduced_homology_vanishes(homology(boundary_matrices(q), "Z"))
            res.note(collapsible and acyclic, f"p_sigma({p},{p + m}): collapsible={collapsible}, reduced H_* = 0: {acyclic}")
    return res


def free_faces(sigma_ns=(2, 3, 4), p=3, ms=(1, 2)) -> ClaimResult:
    res = ClaimResult("each maximal cube class has a terminal-edge free face")
    with _Timer(res):
        fams = [sigma(n) for n in sigma_ns] + [p_sigma(p, p + m) for m in ms]
        for fam in fams:
            rep = verify_free_faces(fam)
            degenerate = sum(e.degenerate for e in rep.entries)
            res.note(rep.passed, f"{fam.label()}: {len(rep.entries)} cube classes ({degenerate} degenerate)")
    return res


def farrell_tables(pairs=((3, 3), (3, 4), (3, 5), (5, 5), (5, 6), (5, 7))) -> ClaimResult:
    res = ClaimResult("Farrell tables match the symmetric group on p letters")
    with _Timer(res):
        for p, n in pairs:
            h = cohomology(boundary_matrices(_complex(p_sigma(p, n))), p)
            table = assemble_farrell(p, n, h.betti, f"p_sigma({p},{n})")
            ok = table.period == 2 * (p - 1) and sigma_p_comparison(table)
            res.note(ok, f"(p={p}, n={n}): period {table.period}, " + ", ".join(f"{r}: {g}" for r, g in table.rows()))
    return res


def desk_scale_claims(max_n: int = 4, seed: int = 0, samples: int = 1000) -> list[ClaimResult]:
    """Every claim over the ranges where it is asserted, capped at ``max_n`` for the sigma complexes."""
    ns = tuple(range(2, max_n + 1))
    return [
        relators(tuple(range(3, max(max_n, 3) + 1))),
        abelianization(tuple(range(3, max(max_n, 3) + 1))),
        gl_parity(samples, seed),
        tree_census(6),
        dimensions(ns),
        p_case_f_vectors(),
        top_vanishing(ns),
        contractibility(),
        free_faces(tuple(n for n in ns if n <= 4)),
        farrell_tables(),
    ]
