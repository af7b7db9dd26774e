"""Built-in property grid behind the `selftest` CLI command.

A trimmed, dependency-free rendition of the full pytest suite: every
module contributes a deterministic batch of identity checks sized to run
in well under a minute.  Failures are collected, never raised, so the
summary always prints.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

from .action import constituents, default_aux_data, level_indices, span_profile
from .arith import (divisors, euler_phi, factorize, order_pair_count,
                    order_pair_product, split_fraction)
from .census import ExtensionParams, census_by_group, total_classes
from .ffield import make_field
from .groups import catalog, split_class
from .oracle import oracle_census
from .ramify import (WildInputs, different_valuation,
                     different_valuation_literal, discriminant_report,
                     herbrand_convert, jump_schedule)


@dataclass
class SuiteResult:
    name: str
    checks: int = 0
    failures: int = 0
    notes: list[str] = field(default_factory=list)

    def check(self, ok: bool, note: str) -> None:
        self.checks += 1
        if not ok:
            self.failures += 1
            if len(self.notes) < 8:
                self.notes.append(note)


def _suite_arith() -> SuiteResult:
    res = SuiteResult("arith")
    for a in range(1, 41):
        for b in range(1, 41):
            brute = sum(
                1 for x in range(a) for y in range(b)
                if (a // gcd(a, x or a)) * (b // gcd(b, y or b)) //
                gcd(a // gcd(a, x or a), b // gcd(b, y or b)) == a)
            res.check(order_pair_count(a, b) == brute,
                      f"pair count mismatch at ({a},{b})")
    for n in range(1, 501):
        res.check(sum(order_pair_count(c, n) for c in divisors(n)) == n * n,
                  f"partition identity fails at {n}")
    rng = random.Random(20240801)
    for _ in range(300):
        n = rng.randrange(1, 10 ** 9)
        prod = 1
        for p, e in factorize(n):
            prod *= p ** e
        res.check(prod == n, f"factorize round trip fails at {n}")
    for (p, ell) in ((2, 3), (3, 2), (5, 2), (7, 3), (13, 2)):
        for c in divisors(p ** ell - 1):
            lam = split_fraction(c, p, ell)
            psi = order_pair_count(c, p - 1)
            res.check((lam * psi).denominator == 1,
                      f"lambda*psi not integral at ({c},{p},{ell})")
            res.check(((1 - lam) / (ell - 1) * psi).denominator == 1,
                      f"(1-lambda)psi/(ell-1) not integral at ({c},{p},{ell})")
    res.check(order_pair_count(4, 2) == 4 and order_pair_product(4, 2) == 6,
              "documented (4,2) divergence lost")
    return res


def _suite_ffield() -> SuiteResult:
    res = SuiteResult("ffield")
    rng = random.Random(7)
    for (p, m) in ((2, 3), (3, 2), (2, 6), (5, 3), (7, 2), (13, 2)):
        ctx = make_field(p, m)
        for _ in range(60):
            x, y, z = (rng.randrange(ctx.order) for _ in range(3))
            res.check(ctx.mul(x, ctx.add(y, z))
                      == ctx.add(ctx.mul(x, y), ctx.mul(x, z)),
                      f"distributivity fails in GF({p}^{m})")
            res.check(ctx.frob(ctx.mul(x, y))
                      == ctx.mul(ctx.frob(x), ctx.frob(y)),
                      f"Frobenius not multiplicative in GF({p}^{m})")
        ctx2 = make_field(p, m)
        res.check(ctx.modulus == ctx2.modulus and ctx.generator == ctx2.generator,
                  f"construction not deterministic for GF({p}^{m})")
    for (p, m) in ((2, 4), (3, 3), (5, 2)):
        ctx = make_field(p, m)
        counts: dict[int, int] = {}
        for x in range(1, ctx.order):
            counts[ctx.element_order(x)] = counts.get(ctx.element_order(x), 0) + 1
        for c in divisors(ctx.mult_order):
            res.check(counts.get(c, 0) == euler_phi(c),
                      f"order census fails in GF({p}^{m}) at order {c}")
    return res


def _suite_census() -> SuiteResult:
    res = SuiteResult("census")
    frozen = {
        (2, 3, 1, 1): 16, (3, 2, 1, 1): 30, (5, 2, 1, 2): 7280,
        (2, 3, 1, 3): 1168,
    }
    for (p, ell, ek, fk), want in frozen.items():
        res.check(total_classes(ExtensionParams(p, ell, ek, fk)) == want,
                  f"frozen total mismatch at {(p, ell, ek, fk)}")
    for p in (2, 3, 5, 7):
        for ell in (2, 3, 5, 7):
            if p == ell:
                continue
            for ek in (1, 2):
                for fk in (1, 2, 3):
                    params = ExtensionParams(p, ell, ek, fk)
                    rep = census_by_group(params)
                    res.check(rep.identity_ok,
                              f"cross-sum identity fails at {(p, ell, ek, fk)}")
    return res


def _suite_groups() -> SuiteResult:
    res = SuiteResult("groups")
    for (p, ell, ek, fk) in ((2, 3, 1, 1), (3, 2, 1, 1), (5, 2, 1, 1),
                             (2, 3, 1, 3)):
        params = ExtensionParams(p, ell, ek, fk)
        census = census_by_group(params)
        entries = catalog(params, census=census)
        res.check([e.descriptor.label for e in entries]
                  == [e.label for e in census.by_group],
                  f"catalog/census key mismatch at {(p, ell, ek, fk)}")
        for e in entries:
            res.check(e.matrix_order == e.expected_matrix_order,
                      f"closure order mismatch for {e.descriptor.label}")
    ctx = make_field(3, 2)
    params = ExtensionParams(3, 2, 1, 1)
    for alpha in range(1, 9):
        a = ctx.pow(ctx.generator, alpha)
        for beta in (1, ctx.neg(1)):
            got = split_class(ctx, a, beta, params)
            frob = split_class(ctx, ctx.frob(a), beta, params)
            res.check(got == frob, f"split class not Frobenius invariant "
                                   f"at alpha exp {alpha}")
    return res


def _suite_modlab(parallelism: int) -> SuiteResult:
    res = SuiteResult("modlab")
    for (p, ell) in ((2, 3), (3, 2)):
        params = ExtensionParams(p, ell, 1, 1)
        aux = default_aux_data(params)
        for i in level_indices(aux):
            cons = constituents(i, aux)
            res.check(sum(c.level_dim_contribution for c in cons)
                      == aux.f_total, f"dimension audit fails at level {i}")
        prof = span_profile(params, aux)
        res.check(prof.matches_degree_exponent,
                  f"span total != degree exponent at {(p, ell)}")
        oc = oracle_census(params, aux, parallelism=parallelism)
        res.check(oc.matches_closed_form,
                  f"oracle census disagrees with closed form at {(p, ell)}")
    return res


def _suite_ramify() -> SuiteResult:
    res = SuiteResult("ramify")
    syn = WildInputs(p=3, d=2, e_f=2, f_f=1, e_rel=2, f_rel=1)
    prof = jump_schedule(syn)
    res.check(prof.schedule.t == (0, 1, 4), "synthetic schedule wrong")
    res.check(len(prof.jumps) == prof.e_f + 2, "jump count wrong")
    res.check(different_valuation(prof) == 31, "different valuation wrong")
    rep = discriminant_report(syn)
    res.check(rep.alpha_closed == 39 and rep.alpha_direct == 31
              and rep.agree is False, "discriminant routes wrong")
    for inputs in (syn,
                   WildInputs(p=2, d=6, e_f=3, f_f=2, e_rel=3, f_rel=2),
                   WildInputs(p=5, d=10, e_f=3, f_f=2, e_rel=3, f_rel=1)):
        profile = jump_schedule(inputs)
        if profile.flagged:
            continue
        res.check(different_valuation(profile)
                  == different_valuation_literal(profile),
                  f"segment vs literal different mismatch at {inputs}")
        h = herbrand_convert(profile)
        for x in (0, 1, Fraction(3, 2), 2, Fraction(7, 3), 5, 11):
            res.check(h.to_lower(h.to_upper(x)) == Fraction(x),
                      f"herbrand round trip fails at {x}")
    return res


def run_all(parallelism: int = 1) -> list[SuiteResult]:
    return [
        _suite_arith(),
        _suite_ffield(),
        _suite_census(),
        _suite_groups(),
        _suite_modlab(parallelism),
        _suite_ramify(),
    ]
