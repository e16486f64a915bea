"""Tensor product of bimodules, bar bimodule, collapse and homotopy."""

import itertools

import pytest

from koszulbar import polyalg as P
from koszulbar.ainfty import (
    FlatnessError,
    bimodule_relation_residual,
    morphism_relation_residual,
)
from koszulbar.bridge import AlgebraPair, augmentation_bimodule
from koszulbar.graded import SCALAR_ONE, GradedElement
from koszulbar.tensorbar import (
    TensorWord,
    algebra_as_bimodule,
    bar_bimodule,
    bar_collapse_value,
    bar_contracting_homotopy,
    bar_differential,
    bar_to_module_morphism,
    bar_words,
    homotopy_residual,
    tensor_bimodule,
    unit_section,
)


def bar_setup(dim):
    pair = AlgebraPair(dim)
    aug = augmentation_bimodule(dim, pair)
    return pair, aug, bar_bimodule(pair.poly, aug)


def word(dim, head_exps, slot_exps_list):
    head = P.SymMonomial(head_exps)
    slots = tuple(P.SymMonomial(e) for e in slot_exps_list)
    return TensorWord(head, slots, SCALAR_ONE)


def test_algebra_as_bimodule_component_support():
    dim = 2
    alg = AlgebraPair(dim).poly
    bim = algebra_as_bimodule(alg)
    assert bim.component(1, 0) is not None
    assert bim.component(0, 1) is not None
    for mn in [(0, 0), (1, 1), (2, 0), (0, 2), (2, 1)]:
        assert bim.component(*mn) is None, mn


def test_algebra_as_bimodule_relations():
    dim = 3
    alg = AlgebraPair(dim).poly
    bim = algebra_as_bimodule(alg)
    x = [P.sym_gen(dim, i) for i in (1, 2, 3)]
    r = bimodule_relation_residual(bim, (x[0],), x[1], (x[2],))
    assert r.is_zero()
    basis = P.sym_monomials(dim, 1)
    for m in range(3):
        for n in range(3 - m):
            for aw in itertools.product(basis, repeat=m):
                for k in basis:
                    for bw in itertools.product(basis, repeat=n):
                        assert bimodule_relation_residual(
                            bim, aw, k, bw).is_zero()


def test_tensor_bimodule_requires_matching_middle():
    dim = 2
    pair = AlgebraPair(dim)
    aug = augmentation_bimodule(dim, pair)
    with pytest.raises(ValueError):
        tensor_bimodule(aug, aug)


def test_tensor_mixed_components_vanish():
    dim = 2
    _, _, bar = bar_setup(dim)
    assert bar.component(1, 1) is None
    assert bar.component(2, 3) is None


def test_bar_left_multiplication_component():
    dim = 2
    pair, aug, bar = bar_setup(dim)
    w = word(dim, (0, 0), [(1, 0)])
    a1 = P.sym_gen(dim, 2)
    out = bar.d(1, 0, (a1,), w, ())
    assert out == GradedElement.from_monomial(
        bar.space, word(dim, (0, 1), [(1, 0)]))


def test_bar_differential_examples():
    dim = 1
    pair, aug, bar = bar_setup(dim)
    # one generator in the only slot: collapses into the head
    w = word(dim, (0,), [(1,)])
    assert bar.d(0, 0, (), w, ()) == GradedElement.from_monomial(
        bar.space, word(dim, (1,), []))
    # a unit slot next to the scalar module cancels against itself
    w_unit = word(dim, (0,), [(0,)])
    assert bar.d(0, 0, (), w_unit, ()).is_zero()
    # two unit slots collapse to one
    w_units = word(dim, (0,), [(0,), (0,)])
    assert bar.d(0, 0, (), w_units, ()) == GradedElement.from_monomial(
        bar.space, w_unit)


def test_bar_flatness_guard():
    dim = 1
    pair = AlgebraPair(dim)
    aug = augmentation_bimodule(dim, pair)
    curved = AlgebraPair(dim).poly
    bad = type(curved)(curved.space, curved.components, unit=curved.unit,
                       flat=True, unital=True)
    bad.flat = False
    with pytest.raises(FlatnessError):
        bar_bimodule(bad, aug)


def test_tensor_closure_small_sweep():
    dim = 2
    pair, aug, bar = bar_setup(dim)
    kbb = tensor_bimodule(aug, algebra_as_bimodule(pair.ext))
    a_basis = P.sym_monomials(dim, 2)
    b_basis = P.ext_monomials(dim)
    a_by_w = {w: P.sym_monomials_of_weight(dim, w) for w in range(3)}
    bar_pool = bar_words(a_by_w, [SCALAR_ONE], 2, 2)
    kb_pool = [TensorWord(SCALAR_ONE, mid, k2)
               for q in range(3)
               for mid in itertools.product(b_basis, repeat=q)
               for k2 in b_basis]
    for m in range(4):
        for n in range(4 - m):
            for aw in itertools.product(a_basis, repeat=m):
                for bw in itertools.product(b_basis, repeat=n):
                    for w in bar_pool:
                        assert bimodule_relation_residual(
                            bar, aw, w, bw).is_zero(), (aw, w, bw)
                    for w in kb_pool:
                        assert bimodule_relation_residual(
                            kbb, aw, w, bw).is_zero(), (aw, w, bw)


def test_tensor_differential_squares_when_outer_algebras_flat():
    dim = 2
    pair, aug, bar = bar_setup(dim)
    a_by_w = {w: P.sym_monomials_of_weight(dim, w) for w in range(4)}
    for w in bar_words(a_by_w, [SCALAR_ONE], 3, 3):
        once = bar.m_value(0, 0, (), w, ())
        twice = GradedElement.zero(bar.space)
        for mono, coeff in once.items():
            twice = twice + bar.m_value(0, 0, (), mono, ()).scale(coeff)
        assert twice.is_zero(), w


def test_bar_closed_form_matches_generic():
    dim = 2
    pair, aug, bar = bar_setup(dim)
    a_basis = P.sym_monomials(dim, 2)
    b_basis = P.ext_monomials(dim)
    a_by_w = {w: P.sym_monomials_of_weight(dim, w) for w in range(4)}
    pool = bar_words(a_by_w, [SCALAR_ONE], 3, 3)
    for (m, n) in [(0, 0), (1, 0), (2, 0), (0, 1), (0, 2), (1, 1)]:
        for aw in itertools.product(a_basis, repeat=m):
            for w in pool:
                for bw in itertools.product(b_basis, repeat=n):
                    assert bar.d(m, n, aw, w, bw) == \
                        bar.closed_d(m, n, aw, w, bw), (m, n, aw, w, bw)


def test_collapse_examples():
    dim = 2
    pair, aug, bar = bar_setup(dim)
    mu = bar_to_module_morphism(pair.poly, aug)
    scalar = GradedElement.from_monomial(aug.space, SCALAR_ONE)
    assert mu.apply(0, 0, (), word(dim, (0, 0), []), ()) == scalar
    assert mu.apply(0, 0, (), word(dim, (1, 0), []), ()).is_zero()
    assert mu.apply(0, 0, (), word(dim, (0, 0), [(1, 0)]), ()).is_zero()


def test_collapse_morphism_relations():
    dim = 2
    pair, aug, bar = bar_setup(dim)
    mu = bar_to_module_morphism(pair.poly, aug)
    a_basis = P.sym_monomials(dim, 2)
    b_basis = P.ext_monomials(dim)
    a_by_w = {w: P.sym_monomials_of_weight(dim, w) for w in range(3)}
    pool = bar_words(a_by_w, [SCALAR_ONE], 2, 2)
    for m in range(4):
        for n in range(4 - m):
            for aw in itertools.product(a_basis, repeat=m):
                for w in pool:
                    for bw in itertools.product(b_basis, repeat=n):
                        assert morphism_relation_residual(
                            mu, aw, w, bw).is_zero(), (aw, w, bw)


def test_unit_section_and_homotopy_values():
    dim = 2
    pair, aug, bar = bar_setup(dim)
    nu = unit_section(bar)
    sigma = bar_contracting_homotopy(bar)
    scalar = GradedElement.from_monomial(aug.space, SCALAR_ONE)
    assert nu(scalar) == GradedElement.from_monomial(
        bar.space, word(dim, (0, 0), []))
    assert nu(scalar.scale(5)) == GradedElement.from_monomial(
        bar.space, word(dim, (0, 0), []), 5)
    x_head = GradedElement.from_monomial(bar.space, word(dim, (1, 0), []))
    assert sigma(x_head) == GradedElement.from_monomial(
        bar.space, word(dim, (0, 0), [(1, 0)]))
    unit_head = GradedElement.from_monomial(bar.space, word(dim, (0, 0), []))
    assert sigma(unit_head) == GradedElement.from_monomial(
        bar.space, word(dim, (0, 0), [(0, 0)]))
    two_slot = GradedElement.from_monomial(
        bar.space, word(dim, (1, 0), [(0, 1)]))
    assert sigma(two_slot) == GradedElement.from_monomial(
        bar.space, word(dim, (0, 0), [(1, 0), (0, 1)]))


def test_collapse_after_section_is_identity():
    dim = 2
    pair, aug, bar = bar_setup(dim)
    mu00 = bar_collapse_value(pair.poly, aug, bar)
    nu = unit_section(bar)
    scalar = GradedElement.from_monomial(aug.space, SCALAR_ONE)
    for el in (scalar, scalar.scale(-7)):
        assert mu00(nu(el)) == el


def test_homotopy_sign_placement_is_pinned_by_short_words():
    # of the four bracket placements, only d sigma + sigma d vanishes on
    # every word of bar length at most one
    dim = 2
    pair, aug, bar = bar_setup(dim)
    mu00 = bar_collapse_value(pair.poly, aug, bar)
    nu = unit_section(bar)
    sigma = bar_contracting_homotopy(bar)
    d = bar_differential(bar)
    a_by_w = {w: P.sym_monomials_of_weight(dim, w) for w in range(3)}
    short = bar_words(a_by_w, [SCALAR_ONE], 2, 1)

    def residual(el, s1, s2):
        return el - nu(mu00(el)) - d(sigma(el)).scale(s1) \
            - sigma(d(el)).scale(s2)

    outcomes = {}
    for s1, s2 in itertools.product((1, -1), repeat=2):
        ok = all(
            residual(GradedElement.from_monomial(bar.space, w), s1, s2)
            .is_zero()
            for w in short
        )
        outcomes[(s1, s2)] = ok
    assert outcomes[(1, 1)]
    assert sum(outcomes.values()) == 1, outcomes


def test_homotopy_residual_full_sweep():
    dim = 2
    pair, aug, bar = bar_setup(dim)
    residual = homotopy_residual(pair.poly, aug, bar)
    a_by_w = {w: P.sym_monomials_of_weight(dim, w) for w in range(4)}
    for w in bar_words(a_by_w, [SCALAR_ONE], 3, 3):
        r = residual(GradedElement.from_monomial(bar.space, w))
        assert r.is_zero(), w


def test_tensor_word_degree_and_weight():
    dim = 2
    w = TensorWord(P.SymMonomial((1, 0)),
                   (P.SymMonomial((0, 1)), P.sym_one(dim)), SCALAR_ONE)
    assert w.degree == -2
    assert w.weight == 2
    assert w.length == 2
