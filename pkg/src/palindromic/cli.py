"""Command-line entry point: ``python -m palindromic <command> ...``.

Exit codes: 0 when every check passes, 1 when a check fails, 2 for bad
arguments or unreadable input.
"""

from __future__ import annotations

import argparse
import random
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from . import claims, expected
from .farrell import assemble_farrell, sigma_p_comparison
from .homology import (
    CoefficientError,
    InternalConsistencyError,
    boundary_matrices,
    cohomology,
    coefficient_label,
    homology,
    is_prime,
    parse_coefficients,
)
from .moduli import Family, build_complex, p_sigma, sigma, stats
from .serialize import FormatError, complex_to_text, dumps, family_to_dict, read_complex
from .wordcore import (
    CONVENTIONS,
    EPA,
    PSA,
    column_parity_ok,
    epa_abelianization_invariants,
    exponent_matrix,
    is_palindromic_automorphism,
    verify_centralizes_sigma,
    verify_normalizer_generators,
    verify_relators,
    witness_subgroups,
)
from .wordcore.presentation import pi_a_generators, random_pi_a_product

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    """Arguments parsed but out of range; maps to exit code 2."""


@dataclass
class Report:
    command: str
    params: dict[str, Any]
    lines: list[str] = field(default_factory=list)
    checks: list[tuple[str, bool]] = field(default_factory=list)
    data: dict[str, Any] = field(default_factory=dict)

    def check(self, label: str, ok: bool):
        self.checks.append((label, bool(ok)))
        self.lines.append(("ok   " if ok else "FAIL ") + label)

    @property
    def passed(self) -> bool:
        return all(ok for _, ok in self.checks)

    def render(self, fmt: str) -> str:
        if fmt == "structured":
            body = {
                "command": self.command,
                "params": self.params,
                "passed": self.passed,
                "checks": [{"label": label, "passed": ok} for label, ok in self.checks],
                **self.data,
            }
            return dumps("report", body)
        head = f"{self.command} " + " ".join(f"{k}={v}" for k, v in self.params.items() if v is not None)
        return "\n".join([head.rstrip(), *self.lines, "result: " + ("PASS" if self.passed else "FAIL")]) + "\n"


# ----------------------------------------------------------------------
# commands
# ----------------------------------------------------------------------


def cmd_verify_presentation(args) -> Report:
    n, p = args.n, args.p
    if not 1 <= n <= 6:
        raise UsageError(f"--n must be in 1..6, got {n}")
    if p < 3 or not is_prime(p):
        raise UsageError(f"--p must be an odd prime, got {p}")
    rep = Report("verify-presentation", {"n": n, "p": p, "seed": args.seed, "samples": args.samples})

    reports = {fam: verify_relators(n, fam) for fam in (EPA, PSA)}
    common = [c for c in CONVENTIONS if all(c in r.conventions_satisfied() for r in reports.values())]
    instances = []
    for fam, r in reports.items():
        rep.lines.append(f"{fam} relators ({len(r.checks)} instances):")
        for chk in r.checks:
            marks = ", ".join(f"{c}: {'holds' if chk.holds[c] else 'fails'}" for c in CONVENTIONS)
            rep.lines.append(f"  {chk.relator}{chk.indices}  {marks}")
            instances.append({"family": fam, "relator": chk.relator, "indices": list(chk.indices), **chk.holds})
        rep.check(f"{fam} relators hold under {r.conventions_satisfied() or 'no convention'}", r.passed)
    if n >= 3:
        rep.check(f"one convention serves both families: {common}", bool(common))
        contrast_fail = all(not any(c.holds.values()) for c in reports[EPA].contrast)
        rep.check("PSA-form third relator fails on EPA generators", contrast_fail)
    rep.data["conventions"] = common
    rep.data["relator_instances"] = instances

    epa = epa_abelianization_invariants(n, EPA)
    psa = epa_abelianization_invariants(n, PSA)
    if n >= 3:
        rep.check(f"EPA abelianization: {len(epa)} invariant factors {sorted(set(epa))}", sorted(epa) == expected.epa_invariants(n))
    else:
        # below rank 3 there are no relators and the two groups coincide
        rep.check(f"EPA abelianization equals PSA abelianization for n={n}", epa == psa)
    rep.check(f"PSA abelianization: free of rank {psa.count(0)}", sorted(psa) == expected.psa_invariants(n))
    rep.data["abelianization"] = {"EPA": epa, "PSA": psa}

    gens = pi_a_generators(n)
    rep.check(
        f"{len(gens)} generators are palindromic and centralize sigma_n",
        all(is_palindromic_automorphism(f) and verify_centralizes_sigma(f, n) for f in gens),
    )
    rng = random.Random(args.seed)
    bad = 0
    for _ in range(args.samples):
        f, _ = random_pi_a_product(n, rng)
        if not (column_parity_ok(exponent_matrix(f)) and verify_centralizes_sigma(f, n)):
            bad += 1
    rep.check(f"{args.samples} random products: parity and centralizer checks ({bad} failures)", bad == 0)

    w = witness_subgroups(n, p)
    for label, ok in w.checks.items():
        rep.check(f"witness subgroups: {label}", ok)
    if p < n <= 2 * p - 1:
        nr = verify_normalizer_generators(p, n - p)
        for label, ok in nr.checks.items():
            rep.check(f"normalizer generators: {label}", ok)
    return rep


def _family_from_args(args) -> Family:
    if args.family == "sigma":
        if not 1 <= args.n <= args.max_n:
            raise UsageError(f"sigma family needs 1 <= n <= {args.max_n}, got {args.n}")
        return sigma(args.n)
    p = args.p
    if p is None or p < 3 or not is_prime(p):
        raise UsageError(f"p-sigma family needs --p an odd prime, got {p}")
    if args.n < p:
        raise UsageError(f"p-sigma family needs n >= p, got n={args.n}, p={p}")
    if args.n - p > args.max_m:
        raise UsageError(f"p-sigma family needs n - p <= {args.max_m}, got {args.n - p}")
    return p_sigma(p, args.n)


def cmd_build(args) -> Report:
    fam = _family_from_args(args)
    q = build_complex(fam)
    st = stats(q)
    rep = Report("build", {"family": fam.label()})
    fv = tuple(st.f_vector)
    rep.lines.append(f"f-vector: {fv}")
    rep.lines.append(f"dimension {st.dimension}, components {st.components}, Euler characteristic {st.euler_characteristic}")
    rep.data.update(f_vector=list(fv), dimension=st.dimension, euler_characteristic=st.euler_characteristic)
    want = expected.expected_f_vector(fam.kind, fam.n, fam.p)
    if want is not None:
        label = f"f-vector matches {want.kind} value {want.value} ({want.source})"
        if want.kind == expected.PUBLISHED:
            rep.check(label, fv == want.value)
        else:
            rep.lines.append(("note " if fv == want.value else "WARN ") + label)
    want_dim = expected.sigma_dimension(fam.n) if fam.kind == "sigma" else expected.p_case_dimension(fam.p, fam.n)
    rep.check(f"dimension {st.dimension} equals {want_dim}", st.dimension == want_dim)
    text = complex_to_text(q)
    if args.out:
        Path(args.out).write_text(text)
        rep.lines.append(f"complex written to {args.out}")
        rep.data["complex_file"] = str(args.out)
    rep.complex_text = text  # type: ignore[attr-defined]
    return rep


def _top_claim_applies(fam: Family | None, coeff) -> bool:
    if fam is None or fam.top_dimension < 1:
        return False
    if fam.kind == "sigma":
        return coeff in ("Z", "Q") or (isinstance(coeff, int) and coeff > 2)
    return coeff in ("Z", "Q", fam.p)


def _top_vanishes(res, top: int, fam: Family) -> bool:
    if res.betti[top]:
        return False
    if res.coefficients != "Z":
        return True
    # integer coefficients: the claim is p-local, so only p-primary torsion counts
    bad_primes = [fam.p] if fam.kind == "p_sigma" else None
    for t in res.torsion[top]:
        odd = t
        while odd % 2 == 0:
            odd //= 2
        if bad_primes is None and odd > 1:
            return False
        if bad_primes and t % bad_primes[0] == 0:
            return False
    return True


def cmd_homology(args) -> Report:
    try:
        coeff = parse_coefficients(args.coeff)
    except CoefficientError as exc:
        raise UsageError(str(exc)) from None
    try:
        q = read_complex(args.complex)
        cc = boundary_matrices(q)
    except (FormatError, InternalConsistencyError) as exc:
        raise UsageError(f"malformed complex file: {exc}") from None
    fam = q.family
    label = coefficient_label(coeff)
    rep = Report("homology", {"file": Path(args.complex).name, "coefficients": label})
    rep.lines.append(f"family: {fam.label() if fam else 'none'}, f-vector {tuple(q.f_vector())}")
    h = homology(cc, coeff)
    co = cohomology(cc, coeff)
    rows = []
    for r in range(len(cc.sizes)):
        rep.lines.append(f"  degree {r}: H_{r} = {h.describe(r)}, H^{r} = {co.describe(r)}")
        rows.append(
            {
                "degree": r,
                "betti": h.betti[r],
                "torsion": h.torsion[r],
                "cohomology_betti": co.betti[r],
                "cohomology_torsion": co.torsion[r],
            }
        )
    rep.data.update(family=family_to_dict(fam), degrees=rows, euler_characteristic=cc.euler_characteristic())
    rep.check(f"Euler characteristic {h.euler_characteristic()} from Betti numbers", h.euler_characteristic() == cc.euler_characteristic())
    if _top_claim_applies(fam, coeff):
        top = fam.top_dimension
        rep.check(f"top cohomology H^{top} vanishes over {label}", _top_vanishes(co, top, fam))
    return rep


def cmd_farrell(args) -> Report:
    p, n = args.p, args.n
    if p < 3 or not is_prime(p):
        raise UsageError(f"--p must be an odd prime, got {p}")
    if not p <= n <= 2 * p - 1:
        raise UsageError(f"need p <= n <= 2p-1, got p={p}, n={n}")
    if n - p > args.max_m:
        raise UsageError(f"n - p = {n - p} exceeds --max-m {args.max_m}")
    fam = p_sigma(p, n)
    co = cohomology(boundary_matrices(build_complex(fam)), p)
    table = assemble_farrell(p, n, co.betti, fam.label())
    rep = Report("farrell", {"p": p, "n": n})
    rep.lines.append(f"period {table.period}")
    rep.lines.append("residue  group")
    rep.lines += [f"{r:>7}  {g}" for r, g in table.rows()]
    rep.lines += [f"note: {x}" for x in table.notes]
    rep.data["period"] = table.period
    rep.data["table"] = [{"residue": r, "group": g} for r, g in table.rows()]
    rep.check(f"top class H^{table.m}(Q; F_{p}) vanishes", table.consistent)
    if table.m <= 2:
        rep.check(f"matches the symmetric group on {p} letters", sigma_p_comparison(table))
    return rep


def cmd_report(args) -> Report:
    if not 2 <= args.max_n <= 5:
        raise UsageError(f"--max-n must be in 2..5, got {args.max_n}")
    rep = Report("report", {"max_n": args.max_n, "seed": args.seed, "samples": args.samples})
    results = claims.desk_scale_claims(args.max_n, args.seed, args.samples)
    for res in results:
        rep.lines.append(f"[{'PASS' if res.passed else 'FAIL'}] {res.name}")
        rep.lines += [f"    {d}" for d in res.details]
        rep.checks.append((res.name, res.passed))
    rep.data["claims"] = [{"name": r.name, "passed": r.passed, "details": r.details} for r in results]
    return rep


# ----------------------------------------------------------------------
# argument parsing
# ----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "structured"), default="text")
    common.add_argument("--out", help="write the report (or, for build, the complex) to this file")
    common.add_argument("--seed", type=int, default=0)

    parser = argparse.ArgumentParser(prog="palindromic", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    vp = sub.add_parser("verify-presentation", parents=[common], help="check relators, abelianization and witnesses")
    vp.add_argument("--n", type=int, required=True)
    vp.add_argument("--p", type=int, default=3, help="prime for the witness subgroups (default 3)")
    vp.add_argument("--samples", type=int, default=200, help="random products to test (default 200)")
    vp.set_defaults(func=cmd_verify_presentation)

    b = sub.add_parser("build", parents=[common], help="build a quotient complex")
    b.add_argument("family", choices=("sigma", "p-sigma"))
    b.add_argument("--n", type=int, required=True)
    b.add_argument("--p", type=int)
    b.add_argument("--max-n", type=int, default=5, help="largest n accepted for the sigma family")
    b.add_argument("--max-m", type=int, default=3, help="largest n - p accepted for the p-sigma family")
    b.set_defaults(func=cmd_build)

    h = sub.add_parser("homology", parents=[common], help="homology of a complex file")
    h.add_argument("complex")
    h.add_argument("--coeff", default="Z", help="Z, Q or Fp:k")
    h.set_defaults(func=cmd_homology)

    f = sub.add_parser("farrell", parents=[common], help="Farrell cohomology table at p")
    f.add_argument("--p", type=int, required=True)
    f.add_argument("--n", type=int, required=True)
    f.add_argument("--max-m", type=int, default=3)
    f.set_defaults(func=cmd_farrell)

    r = sub.add_parser("report", parents=[common], help="run every desk-scale claim")
    r.add_argument("--max-n", type=int, default=4)
    r.add_argument("--samples", type=int, default=1000)
    r.set_defaults(func=cmd_report)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "family", None) == "p-sigma":
        args.family = "p_sigma"
    try:
        rep = args.func(args)
    except UsageError as exc:
        print(f"palindromic {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE

    text = rep.render(args.format)
    if args.command == "build":
        if args.format == "structured" and not args.out:
            text = rep.complex_text
        sys.stdout.write(text)
    elif args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK if rep.passed else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
