"""The two concrete bimodules and the comparison morphism."""

import itertools
import random
from fractions import Fraction

import pytest

from koszulbar import polyalg as P
from koszulbar.ainfty import (
    bimodule_relation_residual,
    morphism_relation_residual,
)
from koszulbar.bridge import (
    AlgebraPair,
    augmentation_bimodule,
    contraction_scale,
    higher_right_action_residual,
    koszul_bimodule,
    koszul_to_bar_element,
    koszul_to_bar_morphism,
    right_action_chain_residual,
    single_entry_contraction,
    splitting_homotopy,
    theta_lift,
    transferred_contraction,
    zero_morphism,
)
from koszulbar.graded import SCALAR_ONE, GradedElement, scalar_value
from koszulbar.tensorbar import TensorWord, bar_bimodule


def test_koszul_bimodule_component_values():
    dim = 2
    kv = koszul_bimodule(dim)
    t1 = P.koszul_theta(dim, 1)
    t2 = P.koszul_theta(dim, 2)
    t12 = P.KoszulMonomial((0, 0), (1, 2))
    x1 = P.sym_gen(dim, 1)
    e1 = P.ext_gen(dim, 1)
    assert kv.d(0, 0, (), t1, ()) == P.koszul_el(dim, P.koszul_x(dim, 1))
    assert kv.d(0, 1, (), t12, (e1,)) == P.koszul_el(dim, t2)
    assert kv.d(1, 0, (x1,), t2, ()) == \
        P.koszul_el(dim, P.KoszulMonomial((1, 0), (2,)))


def test_koszul_bimodule_component_support():
    kv = koszul_bimodule(2)
    for mn in [(1, 1), (2, 0), (0, 2), (2, 1)]:
        assert kv.component(*mn) is None


def test_koszul_relations_exhaustive_dim2():
    dim = 2
    kv = koszul_bimodule(dim)
    a_basis = P.sym_monomials(dim, 2)
    b_basis = P.ext_monomials(dim)
    k_basis = P.koszul_monomials(dim, 2)
    for m in range(5):
        for n in range(5 - m):
            for aw in itertools.product(a_basis, repeat=m):
                for k in k_basis:
                    for bw in itertools.product(b_basis, repeat=n):
                        assert bimodule_relation_residual(
                            kv, aw, k, bw).is_zero(), (aw, k, bw)


def test_augmentation_actions():
    dim = 2
    aug = augmentation_bimodule(dim)
    one = GradedElement.from_monomial(aug.space, SCALAR_ONE)
    assert aug.m_value(1, 0, (P.sym_one(dim),), SCALAR_ONE, ()) == one
    assert aug.m_value(1, 0, (P.sym_gen(dim, 1),), SCALAR_ONE, ()).is_zero()
    assert aug.m_value(0, 1, (), SCALAR_ONE, (P.ext_one(dim),)) == one
    assert aug.m_value(0, 1, (), SCALAR_ONE, (P.ext_gen(dim, 1),)).is_zero()


def test_pairing_component_value():
    # the (1,1) component pairs a linear entry with a generator; its sign
    # is pinned by the chain-map identity, opposite to the bare pairing
    dim = 2
    aug = augmentation_bimodule(dim)
    x1 = P.sym_gen(dim, 1)
    e1, e2 = P.ext_gen(dim, 1), P.ext_gen(dim, 2)
    assert scalar_value(aug.m_value(1, 1, (x1,), SCALAR_ONE, (e1,))) == -1
    assert aug.m_value(1, 1, (x1,), SCALAR_ONE, (e2,)).is_zero()
    assert P.duality_pairing(
        dim, P.sym_el(dim, x1), P.ext_el(dim, e1)) == 1


def test_double_contraction_value():
    # forced by the relation suite: magnitude 1/2, antisymmetric
    dim = 2
    aug = augmentation_bimodule(dim)
    x1, x2 = P.sym_gen(dim, 1), P.sym_gen(dim, 2)
    e12 = P.ExtMonomial((1, 2))
    v = scalar_value(aug.m_value(2, 1, (x1, x2), SCALAR_ONE, (e12,)))
    w = scalar_value(aug.m_value(2, 1, (x2, x1), SCALAR_ONE, (e12,)))
    assert v == Fraction(-1, 2)
    assert w == Fraction(1, 2)


def test_contraction_vanishes_off_linear_entries():
    dim = 2
    aug = augmentation_bimodule(dim)
    sq = P.SymMonomial((2, 0))
    e1 = P.ext_gen(dim, 1)
    assert aug.m_value(1, 1, (sq,), SCALAR_ONE, (e1,)).is_zero()
    assert aug.m_value(
        2, 1, (P.sym_one(dim), P.sym_gen(dim, 1)), SCALAR_ONE,
        (P.ExtMonomial((1, 2)),)).is_zero()


def test_multi_entry_components_on_higher_weight():
    # two single-generator entries acting on one quadratic entry
    dim = 2
    aug = augmentation_bimodule(dim)
    e1, e2 = P.ext_gen(dim, 1), P.ext_gen(dim, 2)
    v = scalar_value(aug.m_value(
        1, 2, (P.SymMonomial((1, 1)),), SCALAR_ONE, (e1, e2)))
    assert abs(v) == Fraction(1, 2)
    v2 = scalar_value(aug.m_value(
        1, 2, (P.SymMonomial((2, 0)),), SCALAR_ONE, (e1, e1)))
    assert abs(v2) == 1


def test_component_layers_agree():
    # the explicit single-entry operator and the perturbation engine
    # produce the same values where they overlap
    for dim in (1, 2, 3):
        pair = AlgebraPair(dim)
        kv = koszul_bimodule(dim, pair)
        lin = [P.sym_gen(dim, i) for i in range(1, dim + 1)]
        for p in range(1, dim + 1):
            twist = -1 if p % 2 else 1
            for aw in itertools.product(lin, repeat=p):
                for b in P.ext_monomials(dim):
                    if b.degree != p:
                        continue
                    explicit = single_entry_contraction(dim, aw, b) \
                        * contraction_scale(p)
                    engine = transferred_contraction(dim, kv, aw, (b,)) \
                        * twist
                    assert explicit == engine, (dim, aw, b)


def test_augmentation_relations_exhaustive_dim2():
    dim = 2
    aug = augmentation_bimodule(dim)
    a_basis = P.sym_monomials(dim, 2)
    b_basis = P.ext_monomials(dim)
    for m in range(5):
        for n in range(5 - m):
            for aw in itertools.product(a_basis, repeat=m):
                for bw in itertools.product(b_basis, repeat=n):
                    assert bimodule_relation_residual(
                        aug, aw, SCALAR_ONE, bw).is_zero(), (aw, bw)


def test_augmentation_relations_higher_level_words():
    # the words that pin the multi-entry components live one level above
    # the default sweep
    dim = 2
    aug = augmentation_bimodule(dim)
    x1, x2 = P.sym_gen(dim, 1), P.sym_gen(dim, 2)
    e2 = P.ext_gen(dim, 2)
    e12 = P.ExtMonomial((1, 2))
    for bw in [(e2, e12), (e12, e2)]:
        r = bimodule_relation_residual(aug, (x2, x2, x1), SCALAR_ONE, bw)
        assert r.is_zero(), bw


def test_weight_preservation_of_components():
    # with exterior entries counted as consuming weight, every component
    # evaluation preserves total weight
    dim = 2
    aug = augmentation_bimodule(dim)
    kv = koszul_bimodule(dim)
    rng = random.Random(5)
    a_basis = P.sym_monomials(dim, 2)
    b_basis = P.ext_monomials(dim)
    k_basis = P.koszul_monomials(dim, 2)
    for _ in range(300):
        m = rng.randint(0, 3)
        n = rng.randint(0, 3 - m)
        aw = tuple(rng.choice(a_basis) for _ in range(m))
        bw = tuple(rng.choice(b_basis) for _ in range(n))
        total = sum(a.weight for a in aw) + sum(b.weight for b in bw)
        out = aug.d(m, n, aw, SCALAR_ONE, bw)
        if not out.is_zero():
            assert out.homogeneous_weight() == total
        k = rng.choice(k_basis)
        out = kv.d(m, n, aw, k, bw)
        if not out.is_zero():
            assert out.homogeneous_weight() == total + k.weight


def test_splitting_homotopy_inverts_contraction():
    for dim in (1, 2, 3):
        for mono in P.koszul_monomials(dim, 4):
            el = P.koszul_el(dim, mono)
            dh = P.euler_contraction(dim, splitting_homotopy(dim, el))
            hd = splitting_homotopy(dim, P.euler_contraction(dim, el))
            expect = el if mono.weight > 0 else GradedElement.zero(el.space)
            assert dh + hd == expect, mono


def test_theta_lift():
    dim = 2
    assert theta_lift(dim, P.sym_gen(dim, 2)) == \
        P.koszul_el(dim, P.koszul_theta(dim, 2))
    assert theta_lift(dim, P.sym_one(dim)).is_zero()
    assert theta_lift(dim, P.SymMonomial((2, 0))).is_zero()


def test_comparison_morphism_values():
    dim = 2
    pair = AlgebraPair(dim)
    bar = bar_bimodule(pair.poly, augmentation_bimodule(dim, pair))
    one_word = TensorWord(P.sym_one(dim), (), SCALAR_ONE)
    assert koszul_to_bar_element(dim, bar, P.koszul_one(dim)) == \
        GradedElement.from_monomial(bar.space, one_word)
    x1, x2 = P.sym_gen(dim, 1), P.sym_gen(dim, 2)
    t12 = P.KoszulMonomial((0, 0), (1, 2))
    got = koszul_to_bar_element(dim, bar, t12)
    want = GradedElement.from_monomial(
        bar.space, TensorWord(P.sym_one(dim), (x1, x2), SCALAR_ONE)) - \
        GradedElement.from_monomial(
            bar.space, TensorWord(P.sym_one(dim), (x2, x1), SCALAR_ONE))
    assert got == want
    mixed = P.KoszulMonomial((1, 0), (2,))
    assert koszul_to_bar_element(dim, bar, mixed) == \
        GradedElement.from_monomial(
            bar.space, TensorWord(x1, (x2,), SCALAR_ONE))


def test_comparison_commutes_with_differentials():
    dim = 2
    pair = AlgebraPair(dim)
    kv = koszul_bimodule(dim, pair)
    bar = bar_bimodule(pair.poly, augmentation_bimodule(dim, pair))
    for eta in P.koszul_monomials(dim, 3):
        lhs = GradedElement.zero(bar.space)
        for mono, coeff in kv.m_value(0, 0, (), eta, ()).items():
            lhs = lhs + koszul_to_bar_element(dim, bar, mono).scale(coeff)
        rhs = GradedElement.zero(bar.space)
        for w, coeff in koszul_to_bar_element(dim, bar, eta).items():
            rhs = rhs + bar.m_value(0, 0, (), w, ()).scale(coeff)
        assert lhs == rhs, eta


def test_comparison_morphism_relations_dim2():
    dim = 2
    pair = AlgebraPair(dim)
    phi = koszul_to_bar_morphism(dim, pair=pair)
    a_basis = P.sym_monomials(dim, 2)
    b_basis = P.ext_monomials(dim)
    k_basis = P.koszul_monomials(dim, 2)
    for m in range(4):
        for n in range(4 - m):
            for aw in itertools.product(a_basis, repeat=m):
                for k in k_basis:
                    for bw in itertools.product(b_basis, repeat=n):
                        assert morphism_relation_residual(
                            phi, aw, k, bw).is_zero(), (aw, k, bw)


def test_right_action_chain_identity():
    for dim in (1, 2, 3):
        pair = AlgebraPair(dim)
        bar = bar_bimodule(pair.poly, augmentation_bimodule(dim, pair))
        for eta in P.koszul_monomials(dim, 3):
            for b in P.ext_monomials(dim):
                if b.degree == 0:
                    continue
                r = right_action_chain_residual(dim, eta, b, pair=pair,
                                                bar=bar)
                assert r.is_zero(), (dim, eta, b)


def test_higher_right_action_vanishing():
    dim = 2
    pair = AlgebraPair(dim)
    bar = bar_bimodule(pair.poly, augmentation_bimodule(dim, pair))
    b_basis = P.ext_monomials(dim)
    for eta in P.koszul_monomials(dim, 2):
        for nn in (2, 3):
            for bw in itertools.product(b_basis, repeat=nn):
                assert higher_right_action_residual(
                    dim, eta, bw, pair=pair, bar=bar).is_zero(), (eta, bw)
    with pytest.raises(ValueError):
        higher_right_action_residual(dim, P.koszul_one(dim),
                                     (P.ext_gen(dim, 1),), pair=pair, bar=bar)


def test_higher_right_action_with_unit_entry():
    dim = 2
    pair = AlgebraPair(dim)
    bar = bar_bimodule(pair.poly, augmentation_bimodule(dim, pair))
    eta = P.KoszulMonomial((0, 0), (1, 2))
    bw = (P.ext_one(dim), P.ext_gen(dim, 1))
    assert higher_right_action_residual(
        dim, eta, bw, pair=pair, bar=bar).is_zero()


def test_dim_bounds():
    with pytest.raises(ValueError):
        koszul_bimodule(0)
    with pytest.raises(ValueError):
        augmentation_bimodule(7)


def test_zero_morphism_components():
    dim = 1
    pair = AlgebraPair(dim)
    kv = koszul_bimodule(dim, pair)
    z = zero_morphism(kv, kv)
    assert z.component(0, 0) is None
