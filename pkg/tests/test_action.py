"""Group/module bookkeeping: defaults, levels, constituents, classes."""

from collections import Counter

import pytest

from padicext.action import (MetacyclicGroup, build_group, constituents,
                             default_aux_data, level_indices, make_aux_data,
                             pair_classes, span_profile)
from padicext.census import ExtensionParams
from padicext.errors import DomainError


def test_default_aux_data_examples():
    aux = default_aux_data(ExtensionParams(2, 3, 1, 1))
    assert (aux.e_rel, aux.f_rel) == (7, 21)
    assert (aux.e_total, aux.f_total) == (7, 21)
    assert aux.level_bound == 14
    aux3 = default_aux_data(ExtensionParams(3, 2, 1, 1))
    assert (aux3.e_rel, aux3.f_rel) == (8, 8)
    assert aux3.level_bound == 12
    # the ell factor is dropped when ell | f_K
    aux_div = default_aux_data(ExtensionParams(2, 3, 1, 3))
    assert (aux_div.e_rel, aux_div.f_rel) == (7, 7)


def test_default_aux_rejects_p_equals_ell():
    with pytest.raises(DomainError):
        default_aux_data(ExtensionParams(2, 2, 1, 1, allow_p_equals_ell=True))


def test_aux_invariants_validated():
    params = ExtensionParams(2, 3, 1, 1)
    with pytest.raises(DomainError):
        make_aux_data(params, e_rel=14, f_rel=21)   # p | e_rel
    with pytest.raises(DomainError):
        make_aux_data(params, e_rel=7, f_rel=2)     # tameness broken
    aux = make_aux_data(params, e_rel=7, f_rel=3)
    assert aux.source == "user_override"


def test_metacyclic_group_relations():
    aux = default_aux_data(ExtensionParams(2, 3, 1, 1))
    H = build_group(aux)
    assert H.order == 147  # 7 * 21
    tau, v = H.tau(), H.v()
    # defining relation v tau v^-1 = tau^q with q = 2
    assert H.mul(H.mul(v, tau), H.inv(v)) == (2, 0)
    assert H.element_order(tau) == 7
    assert H.element_order(v) == 21
    trivial = MetacyclicGroup(1, 1, 0)
    assert trivial.order == 1 and trivial.mul((0, 0), (0, 0)) == (0, 0)


def test_level_indices():
    aux = default_aux_data(ExtensionParams(2, 3, 1, 1))
    assert level_indices(aux) == [1, 3, 5, 7, 9, 11, 13]
    aux3 = default_aux_data(ExtensionParams(3, 2, 1, 1))
    assert level_indices(aux3) == [1, 2, 4, 5, 7, 8, 10, 11]
    tiny = make_aux_data(ExtensionParams(2, 3, 1, 1), e_rel=1, f_rel=3)
    assert level_indices(tiny) == [1]


def test_constituent_dimensions_q2():
    aux = default_aux_data(ExtensionParams(2, 3, 1, 1))
    dims1 = sorted(c.dim_over_fp for c in constituents(1, aux))
    assert dims1 == [3, 9, 9]
    dims7 = sorted(c.dim_over_fp for c in constituents(7, aux))
    assert dims7 == [1, 2, 3, 3, 6, 6]


def test_constituent_dimension_law():
    from math import gcd, lcm
    for (p, ell, ek, fk) in ((2, 3, 1, 1), (3, 2, 1, 1), (2, 3, 1, 3),
                             (3, 2, 1, 2), (2, 3, 2, 2)):
        aux = default_aux_data(ExtensionParams(p, ell, ek, fk))
        for i in level_indices(aux):
            cons = constituents(i, aux)
            assert sum(c.level_dim_contribution for c in cons) == aux.f_total
            for c in cons:
                # the dimension law: lcm(r w/(r, f_K), r)
                assert c.dim_over_fp == lcm(c.r * c.w // gcd(c.r, fk), c.r)
                assert c.d == lcm(c.w, gcd(c.r, fk))
                assert c.s == c.r // gcd(c.r, fk)


def test_constituent_dimensions_q3():
    aux = default_aux_data(ExtensionParams(3, 2, 1, 1))
    dims1 = sorted(c.dim_over_fp for c in constituents(1, aux))
    assert dims1 == [2, 2, 4]
    for i in level_indices(aux):
        assert sum(c.level_dim_contribution
                   for c in constituents(i, aux)) == 8


def test_span_profile_q2():
    params = ExtensionParams(2, 3, 1, 1)
    prof = span_profile(params, default_aux_data(params))
    assert dict(prof.per_level) == {1: 3, 3: 3, 5: 3, 7: 6, 9: 3, 11: 3, 13: 3}
    assert prof.total == 24 and prof.matches_degree_exponent
    assert prof.dims_multiset() == (3, 3, 3, 3, 3, 3, 6)


def test_span_profile_q3():
    params = ExtensionParams(3, 2, 1, 1)
    prof = span_profile(params, default_aux_data(params))
    assert prof.total == 36 and prof.matches_degree_exponent


def test_pair_classes_q2():
    aux = default_aux_data(ExtensionParams(2, 3, 1, 1))
    pcs = pair_classes(aux, dim_filter=3)
    kinds = Counter((pc.s, pc.c) for pc in pcs)
    assert kinds == Counter({(1, 7): 2, (3, 7): 2})
    for pc in pcs:
        assert sum(pc.mult_by_level) == pc.global_multiplicity


def test_pair_classes_mult_scan_matches_orbit_size():
    # levels carrying a class: e_K per residue of its (p- and q-closed) t-set
    for (p, ell, ek, fk) in ((2, 3, 1, 1), (3, 2, 1, 1), (2, 3, 2, 1),
                             (2, 3, 1, 3), (3, 2, 1, 2)):
        params = ExtensionParams(p, ell, ek, fk)
        aux = default_aux_data(params)
        e = aux.e_rel
        for pc in pair_classes(aux, dim_filter=ell):
            n_levels = sum(1 for i in level_indices(aux) if i % e in pc.t_set)
            assert n_levels == ek * len(pc.t_set)
            assert pc.global_multiplicity == pc.s * ek * fk
            assert sum(pc.mult_by_level) == pc.global_multiplicity


def test_pair_classes_inertia_divisible_case():
    aux = default_aux_data(ExtensionParams(2, 3, 1, 3))
    pcs = pair_classes(aux, dim_filter=3)
    assert len(pcs) == 16
    assert all(pc.d == 3 and pc.global_multiplicity == 3 for pc in pcs)
