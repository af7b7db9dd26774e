"""Closed-form census of extension classes, exact at every step.

All counts are arbitrary-precision integers; every division is checked
for exactness and an inexact one raises InvariantError rather than
truncating.  The group-by-group breakdown keys match the catalog label
grammar ("C(c)", "NA(c,split)", "NA(c,ns<j>)").
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .arith import (divisors, is_prime, order_pair_count, order_pair_product,
                    split_fraction)
from .errors import DomainError, InvariantError

CASE_DIVIDES = "ell_divides_fK"
CASE_NOT_DIVIDES = "ell_not_divides_fK"


@dataclass(frozen=True)
class ExtensionParams:
    """Base field datum: (p, ell) primes plus absolute e_K, f_K."""

    p: int
    ell: int
    e_k: int
    f_k: int
    allow_p_equals_ell: bool = False

    def __post_init__(self) -> None:
        if not is_prime(self.p):
            raise DomainError(f"p = {self.p} is not prime")
        if not is_prime(self.ell):
            raise DomainError(f"ell = {self.ell} is not prime")
        if self.e_k < 1 or self.f_k < 1:
            raise DomainError("e_K and f_K must be positive")
        if self.p == self.ell and not self.allow_p_equals_ell:
            raise DomainError(
                "p = ell needs allow_p_equals_ell; formulas are evaluated "
                "as written but correctness is not claimed there")

    @property
    def n_k(self) -> int:
        return self.e_k * self.f_k

    @property
    def q(self) -> int:
        return self.p ** self.f_k

    @property
    def ell_divides_fk(self) -> bool:
        return self.f_k % self.ell == 0

    @property
    def case_tag(self) -> str:
        return CASE_DIVIDES if self.ell_divides_fk else CASE_NOT_DIVIDES


@dataclass(frozen=True)
class CensusEntry:
    label: str
    c: int
    kind: str  # "cyclic" | "split" | "nonsplit"
    class_index: int  # j for nonsplit entries, 0 otherwise
    count: int


@dataclass(frozen=True)
class CensusReport:
    total: int
    case_tag: str
    by_group: tuple[CensusEntry, ...]
    identity_ok: bool

    def counts(self) -> dict[str, int]:
        return {e.label: e.count for e in self.by_group}


@dataclass(frozen=True)
class DegreeExponent:
    """p^exponent kept unexpanded; exponent = ell * (generator count)."""

    base: int
    exponent: int


def _exact_div(num: int, den: int, what: str) -> int:
    if num % den != 0:
        raise InvariantError(f"non-exact division in {what}: {num}/{den}")
    return num // den


def cyclic_label(c: int) -> str:
    return f"C({c})"


def nonabelian_label(c: int, split: bool, j: int = 0) -> str:
    return f"NA({c},split)" if split else f"NA({c},ns{j})"


def total_classes(params: ExtensionParams) -> int:
    """(1/ell) * (p^(ell n_K) - 1)/(p^ell - 1) * ((p^ell-1)^2 - (p-1)^2).

    The same closed value covers both inertia cases; depends only on
    (p, ell, n_K)."""
    p, ell, n = params.p, params.ell, params.n_k
    geom = _exact_div(p ** (ell * n) - 1, p ** ell - 1, "total_classes geometric part")
    weight = (p ** ell - 1) ** 2 - (p - 1) ** 2
    return _exact_div(geom * weight, ell, "total_classes division by ell")


def degree_exponent(params: ExtensionParams) -> DegreeExponent:
    """Exponent d of the compositum degree over the splitting field."""
    p, ell, n = params.p, params.ell, params.n_k
    if params.ell_divides_fk:
        d = ((p ** ell - 1) ** 2 - (p - 1) ** 2) * n
    else:
        d = (ell + 1) * (p ** ell - p) * (p - 1) * n
    return DegreeExponent(base=p, exponent=d)


def _eligible_orders(params: ExtensionParams) -> list[int]:
    """c | p^ell - 1 with c not dividing p - 1, ascending."""
    p, ell = params.p, params.ell
    return [c for c in divisors(p ** ell - 1) if (p - 1) % c != 0]


def census_by_group(params: ExtensionParams,
                    use_product_form: bool = False) -> CensusReport:
    """Counts per normal-closure group.

    `use_product_form` swaps the authoritative pair count for the closed
    product form; that audit mode exists only to exhibit the divergence
    and generally breaks the cross-sum identity.
    """
    p, ell, n = params.p, params.ell, params.n_k
    pair_count = order_pair_product if use_product_form else order_pair_count
    entries: list[CensusEntry] = []
    if params.ell_divides_fk:
        geom = Fraction(p ** (ell * n) - 1, p ** ell - 1)
        for c in _eligible_orders(params):
            cnt = Fraction(pair_count(c, p ** ell - 1)) * geom / ell
            entries.append(_entry(cyclic_label(c), c, "cyclic", 0, cnt))
    else:
        geom_cyc = Fraction(p ** (ell * n) - 1, p ** ell - 1)
        geom_na = Fraction(p ** (ell * n) - 1, p - 1)
        for c in _eligible_orders(params):
            psi = pair_count(c, p - 1)
            lam = split_fraction(c, p, ell)
            entries.append(_entry(cyclic_label(c), c, "cyclic", 0,
                                  Fraction(psi) * geom_cyc / ell))
            entries.append(_entry(nonabelian_label(c, True), c, "split", 0,
                                  lam * psi * geom_na / ell))
            ns_each = (1 - lam) / (ell - 1) * psi * geom_na / ell
            for j in range(1, ell):
                entries.append(_entry(nonabelian_label(c, False, j), c,
                                      "nonsplit", j, ns_each))
    entries = [e for e in entries if e.count != 0]
    entries.sort(key=lambda e: (e.c, {"cyclic": 0, "split": 1, "nonsplit": 2}[e.kind],
                                e.class_index))
    total = total_classes(params)
    ok = sum(e.count for e in entries) == total and all(e.count > 0 for e in entries)
    return CensusReport(total=total, case_tag=params.case_tag,
                        by_group=tuple(entries), identity_ok=ok)


def _entry(label: str, c: int, kind: str, j: int, count: Fraction) -> CensusEntry:
    if count.denominator != 1:
        raise InvariantError(f"non-integral census entry {label}: {count}")
    return CensusEntry(label=label, c=c, kind=kind, class_index=j,
                       count=count.numerator)


@dataclass(frozen=True)
class IdentityDiagnostic:
    ok: bool
    total: int
    group_sum: int
    entries: tuple[CensusEntry, ...]
    psi_variants: tuple[tuple[int, int, int, int], ...] = field(default=())
    # (c, b, count_form, product_form) for every pair-count the report used


def census_identity_check(params: ExtensionParams,
                          use_product_form: bool = False) -> IdentityDiagnostic:
    """Cross-sum gate: sum of by-group counts must equal the total.

    In audit mode (`use_product_form`) the product form is wired in; the
    identity is then expected to fail off the a | b regime and the
    diagnostic carries both pair-count variants per order c.
    """
    p, ell = params.p, params.ell
    try:
        report = census_by_group(params, use_product_form=use_product_form)
        group_sum = sum(e.count for e in report.by_group)
        entries = report.by_group
        ok = report.identity_ok
    except InvariantError:
        group_sum, entries, ok = -1, (), False
    b = p ** ell - 1 if params.ell_divides_fk else p - 1
    variants = tuple((c, b, order_pair_count(c, b), order_pair_product(c, b))
                     for c in _eligible_orders(params))
    return IdentityDiagnostic(ok=ok, total=total_classes(params),
                              group_sum=group_sum, entries=entries,
                              psi_variants=variants)
