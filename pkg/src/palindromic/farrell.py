"""Farrell cohomology of the palindromic automorphism group at an odd prime p,
for p <= n <= 2p - 1, assembled from the F_p-cohomology of the p-case quotient."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

from .homology import is_prime

ZP = "Z/p"


class RangeError(ValueError):
    pass


class NotCoveredError(ValueError):
    pass


@dataclass
class FarrellTable:
    """``entries[r]`` for residues r mod 2(p-1): ``"Z/p"`` or an F_p-dimension."""

    p: int
    n: int
    entries: dict[int, str | int]
    notes: list[str] = field(default_factory=list)
    consistent: bool = True

    @property
    def period(self) -> int:
        return 2 * (self.p - 1)

    @property
    def m(self) -> int:
        return self.n - self.p

    def entry(self, t: int) -> str | int:
        """Entry in degree t (any integer)."""
        return self.entries[t % self.period]

    def describe(self, residue: int) -> str:
        e = self.entries[residue]
        if e == ZP:
            return f"Z/{self.p}"
        return "0" if e == 0 else f"(Z/{self.p})^{e}"

    def rows(self) -> list[tuple[int, str]]:
        return [(r, self.describe(r)) for r in range(self.period)]


def _check_range(p: int, n: int):
    if p < 3 or not is_prime(p):
        raise RangeError(f"p must be an odd prime, got {p}")
    if not p <= n <= 2 * p - 1:
        raise RangeError(f"need p <= n <= 2p-1, got p={p}, n={n}")


def assemble_farrell(p: int, n: int, q_cohomology: Mapping[int, int] | list[int], source: str = "") -> FarrellTable:
    """Fill residues mod 2(p-1) from H^r(Q; F_p).

    Residue 0 carries Z/p, residues 1 .. n-p-1 carry H^r(Q; F_p), and residues
    n-p .. 2p-3 vanish.  The supplied top class H^{n-p}(Q; F_p) must vanish
    when n > p; otherwise the table is flagged inconsistent.
    """
    _check_range(p, n)
    dims = dict(enumerate(q_cohomology)) if isinstance(q_cohomology, list) else dict(q_cohomology)
    m = n - p
    period = 2 * (p - 1)
    entries: dict[int, str | int] = {0: ZP}
    for r in range(1, period):
        entries[r] = dims.get(r, 0) if r <= m - 1 else 0
    table = FarrellTable(p, n, entries)
    if source:
        table.notes.append(f"H^r(Q; F_{p}) from {source}")
    if m >= 1 and dims.get(m, 0) != 0:
        table.consistent = False
        table.notes.append(f"H^{m}(Q; F_{p}) = {dims[m]} should vanish")
    return table


def sigma_p_table(p: int) -> dict[int, str | int]:
    """Farrell cohomology of the symmetric group on p letters at p: Z/p in degrees 0 mod 2(p-1)."""
    return {r: (ZP if r == 0 else 0) for r in range(2 * (p - 1))}


def sigma_p_comparison(table: FarrellTable) -> bool:
    if table.m > 2:
        raise NotCoveredError(f"comparison only covers n in p..p+2, got m={table.m}")
    return table.consistent and table.entries == sigma_p_table(table.p)
