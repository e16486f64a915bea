"""The Koszul-complex bimodule, the scalar-module bimodule, and the
degree-0 comparison morphism between the Koszul complex and the bar
resolution.

The scalar module's structure has three layers:

* augmentation actions at arity (1,0) and (0,1);
* single-exterior-entry components at arity (p,1): the exterior entry
  distributes its derivation factors, one per polynomial entry, through
  the odd lift of the linear parts, scaled by (-1)^p / p!.  The scalar
  is not trusted from any hand derivation: a brute-force oracle
  (tests/test_sign_pinning.py) confirms it is the unique choice among
  the simple candidate families for which every quadratic relation and
  chain-map identity vanishes;
* components with two or more exterior entries, which are forced by the
  quadratic relations once the layers above are fixed.  They are
  computed by a finite perturbation expansion along the standard
  splitting of the Koszul complex (the operator h below, with
  dh + hd = id - projection), twisted by the relation-preserving sign
  (-1)^(m+n-1) that aligns the expansion with the layers above.  The
  expansion reuses the same coderivation signs as the residual checkers
  and terminates after one step per consumed entry.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

from .graded import (
    SCALAR_ONE,
    SCALAR_SPACE,
    GradedElement,
    scalar_element,
    scalar_value,
)
from .ainfty import (
    AInfAlgebra,
    AInfBimodule,
    BimoduleMorphism,
    TaylorMap,
    build_dga,
    component_from_unshifted_rule,
)
from . import polyalg as P
from .tensorbar import BarBimodule, TensorWord, bar_bimodule


MAX_DIM = 6


def _check_dim(dim):
    if not 1 <= dim <= MAX_DIM:
        raise ValueError(f"dim must be between 1 and {MAX_DIM}, got {dim}")


# ---------------------------------------------------------------------------
# the two algebras as flat unital structures


def polynomial_algebra(dim) -> AInfAlgebra:
    """The polynomial algebra in dim commuting degree-0 variables."""
    _check_dim(dim)
    space = P.sym_space(dim)

    def product(a, b):
        return P.sym_el(dim, P.sym_mono_mul(a, b))

    sample = [P.sym_one(dim)] + [P.sym_gen(dim, i) for i in range(1, dim + 1)]
    return build_dga(space, product, unit=P.sym_one(dim), sample=sample,
                     unital=True)


def exterior_algebra(dim) -> AInfAlgebra:
    """The exterior algebra on dim anticommuting degree-1 generators."""
    _check_dim(dim)
    space = P.ext_space(dim)

    def product(a, b):
        res = P.ext_mono_mul(dim, a, b)
        if res is None:
            return GradedElement.zero(space)
        sign, mono = res
        return P.ext_el(dim, mono, sign)

    sample = [P.ext_one(dim)] + [P.ext_gen(dim, i) for i in range(1, dim + 1)]
    return build_dga(space, product, unit=P.ext_one(dim), sample=sample,
                     unital=True)


class AlgebraPair:
    """Shared polynomial/exterior algebra pair for one dimension."""

    _cache = {}

    def __new__(cls, dim):
        if dim not in cls._cache:
            inst = super().__new__(cls)
            inst.dim = dim
            inst.poly = polynomial_algebra(dim)
            inst.ext = exterior_algebra(dim)
            cls._cache[dim] = inst
        return cls._cache[dim]


# ---------------------------------------------------------------------------
# the Koszul-complex bimodule


def koszul_bimodule(dim, pair: AlgebraPair = None) -> AInfBimodule:
    """Bimodule on the superalgebra k[x, t] with components only at
    arities (0,0), (1,0) and (0,1): the contraction differential, left
    multiplication, and the signed right derivation action."""
    _check_dim(dim)
    pair = pair or AlgebraPair(dim)
    space = P.koszul_space(dim)

    def diff_rule(eta):
        return P.euler_contraction(dim, P.koszul_el(dim, eta))

    def left_rule(a, eta):
        lifted = P.KoszulMonomial(a.exponents, ())
        res = P.koszul_mono_mul(lifted, eta)
        if res is None:
            return GradedElement.zero(space)
        sign, mono = res
        return P.koszul_el(dim, mono, sign)

    def right_rule(eta, b):
        sign = -1 if (eta.degree * b.degree) % 2 else 1
        return P.polyderivation_apply(
            dim, b, P.koszul_el(dim, eta)
        ).scale(sign)

    comps = {
        (0, 0): component_from_unshifted_rule((0, 0), 1, diff_rule),
        (1, 0): component_from_unshifted_rule((1, 0), 0, left_rule),
        (0, 1): component_from_unshifted_rule((0, 1), 0, right_rule),
    }
    return AInfBimodule(pair.poly, pair.ext, space, components=comps,
                        unit_compatible=True)


# ---------------------------------------------------------------------------
# scalar-module components


def theta_lift(dim, a: P.SymMonomial) -> GradedElement:
    """Odd lift of the linear part of a polynomial monomial."""
    out = GradedElement.zero(P.koszul_space(dim))
    if a.weight == 1:
        i = next(k for k, e in enumerate(a.exponents, start=1) if e)
        out = out + P.koszul_el(dim, P.koszul_theta(dim, i))
    return out


def single_entry_contraction(dim, a_monos, b: P.ExtMonomial) -> Fraction:
    """Figure-style contraction of one exterior entry against the odd
    lifts of the polynomial entries; each derivation factor consumes one
    entry, applied through the same left-derivation routine as the right
    action on the Koszul complex."""
    lift = P.koszul_el(dim, P.koszul_one(dim))
    for a in a_monos:
        la = theta_lift(dim, a)
        if la.is_zero():
            return Fraction(0)
        lift = P.koszul_multiply(dim, lift, la)
        if lift.is_zero():
            return Fraction(0)
    acted = P.polyderivation_apply(dim, b, lift)
    total = Fraction(0)
    for mono, coeff in acted.items():
        if mono.weight == 0:
            total += coeff
    return total


def contraction_scale(p) -> Fraction:
    """Frozen scalar for the (p,1) components: (-1)^p / p!."""
    value = Fraction(-1 if p % 2 else 1)
    for k in range(2, p + 1):
        value /= k
    return value


def splitting_homotopy(dim, el: GradedElement) -> GradedElement:
    """Degree -1 operator h with (contraction) h + h (contraction) equal
    to the identity minus the weight-zero projection: one x turns into
    the matching odd generator, averaged over the weight."""
    out = GradedElement.zero(P.koszul_space(dim))
    for mono, coeff in el.items():
        w = mono.weight
        if w == 0:
            continue
        for i in range(1, dim + 1):
            e = mono.exponents[i - 1]
            if not e or i in mono.thetas:
                continue
            exps = list(mono.exponents)
            exps[i - 1] -= 1
            thetas = tuple(sorted(mono.thetas + (i,)))
            pos = thetas.index(i)
            sign = -1 if pos % 2 else 1
            out = out + P.koszul_el(
                dim, P.KoszulMonomial(exps, thetas),
                Fraction(coeff * e * sign, w),
            )
    return out


def _shift_sign(monos):
    s = sum(m.degree - 1 for m in monos)
    return -1 if s % 2 else 1


def transferred_contraction(dim, kv: AInfBimodule, a_monos,
                            b_monos) -> Fraction:
    """Perturbation-expansion value of a multi-entry component.

    States carry (remaining left word, slot element, remaining right
    word); one expansion step applies every codifferential piece except
    the slot differential, collects fully consumed weight-zero states,
    and pushes the splitting operator into the rest.
    """
    poly, ext = kv.left, kv.right
    states = {
        (tuple(a_monos), tuple(b_monos)):
            P.koszul_el(dim, P.koszul_one(dim))
    }
    total = Fraction(0)
    while states:
        new_states = {}

        def add(key, el):
            if key in new_states:
                new_states[key] = new_states[key] + el
            else:
                new_states[key] = el

        for (aw, bw), slot in states.items():
            slot_deg = slot.homogeneous_degree()
            for i in range(len(aw) - 1):
                sign = _shift_sign(aw[:i])
                for mono, coeff in poly.d(2, (aw[i], aw[i + 1])).items():
                    add((aw[:i] + (mono,) + aw[i + 2:], bw),
                        slot.scale(coeff * sign))
            slot_sign = -1 if (slot_deg - 1) % 2 else 1
            base = _shift_sign(aw) * slot_sign
            for i in range(len(bw) - 1):
                sign = base * _shift_sign(bw[:i])
                for mono, coeff in ext.d(2, (bw[i], bw[i + 1])).items():
                    add((aw, bw[:i] + (mono,) + bw[i + 2:]),
                        slot.scale(coeff * sign))
            if aw:
                sign = _shift_sign(aw[:-1])
                acted = GradedElement.zero(kv.space)
                for mono, coeff in slot.items():
                    acted = acted + kv.d(1, 0, (aw[-1],), mono, ()).scale(coeff)
                if not acted.is_zero():
                    add((aw[:-1], bw), acted.scale(sign))
            if bw:
                sign = _shift_sign(aw)
                acted = GradedElement.zero(kv.space)
                for mono, coeff in slot.items():
                    acted = acted + kv.d(0, 1, (), mono, (bw[0],)).scale(coeff)
                if not acted.is_zero():
                    add((aw, bw[1:]), acted.scale(sign))

        states = {}
        for (aw, bw), el in new_states.items():
            if el.is_zero():
                continue
            if not aw and not bw:
                for mono, coeff in el.items():
                    if mono.weight == 0:
                        total += coeff
                continue
            h_el = splitting_homotopy(dim, el).scale(_shift_sign(aw))
            if not h_el.is_zero():
                states[(aw, bw)] = h_el
    return total


def augmentation_bimodule(dim, pair: AlgebraPair = None,
                          contraction=None) -> AInfBimodule:
    """The scalar module with augmentation actions, single-entry
    contraction components, and the relation-forced higher components.

    `contraction` may override the frozen (p,1) scalar family (used by
    the sign-pinning oracle and the negative controls); it maps p to a
    rational.
    """
    _check_dim(dim)
    pair = pair or AlgebraPair(dim)
    scale = contraction or contraction_scale
    kv = koszul_bimodule(dim, pair)

    def left_rule(a, k):
        return scalar_element(P.evaluate_at_zero(P.sym_el(dim, a)))

    def right_rule(k, b):
        return scalar_element(1 if b.degree == 0 else 0)

    comps = {
        (1, 0): component_from_unshifted_rule((1, 0), 0, left_rule),
        (0, 1): component_from_unshifted_rule((0, 1), 0, right_rule),
    }

    def factory(m, n):
        if m < 1 or n < 1:
            return None
        if n == 1:
            def rule(*monos, _m=m):
                a_monos = monos[:_m]
                b = monos[_m + 1]
                if b.degree != _m:
                    return GradedElement.zero(SCALAR_SPACE)
                value = single_entry_contraction(dim, a_monos, b)
                if not value:
                    return GradedElement.zero(SCALAR_SPACE)
                return scalar_element(value * scale(_m))
        else:
            twist = -1 if (m + n - 1) % 2 else 1

            def rule(*monos, _m=m, _n=n, _twist=twist):
                a_monos = monos[:_m]
                b_monos = monos[_m + 1:]
                if sum(b.degree for b in b_monos) != _m + _n - 1:
                    return GradedElement.zero(SCALAR_SPACE)
                if sum(a.weight for a in a_monos) != _m + _n - 1:
                    return GradedElement.zero(SCALAR_SPACE)
                value = transferred_contraction(dim, kv, a_monos, b_monos)
                if not value:
                    return GradedElement.zero(SCALAR_SPACE)
                return scalar_element(value * _twist)

        return TaylorMap((m, n), 1, rule)

    return AInfBimodule(pair.poly, pair.ext, SCALAR_SPACE, components=comps,
                        factory=factory, unit_compatible=True)


# ---------------------------------------------------------------------------
# the comparison morphism


def _perm_parity(perm):
    seen = [False] * len(perm)
    parity = 1
    for i in range(len(perm)):
        if seen[i]:
            continue
        j = i
        length = 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            parity = -parity
    return parity


def koszul_to_bar_element(dim, bar: BarBimodule, eta: P.KoszulMonomial,
                          drop_permutation_signs=False) -> GradedElement:
    """Image of a Koszul monomial: the polynomial part stays in the head
    slot and the odd factors spread over the bar slots as the matching
    linear polynomials, summed over all orderings with the permutation
    sign."""
    head = P.SymMonomial(eta.exponents)
    out = GradedElement.zero(bar.space)
    q = len(eta.thetas)
    for perm in itertools.permutations(range(q)):
        sign = 1 if drop_permutation_signs else _perm_parity(perm)
        slots = tuple(P.sym_gen(dim, eta.thetas[t]) for t in perm)
        out = out + GradedElement.from_monomial(
            bar.space, TensorWord(head, slots, SCALAR_ONE), sign
        )
    return out


def koszul_to_bar_morphism(dim, pair: AlgebraPair = None,
                           koszul: AInfBimodule = None,
                           bar: BarBimodule = None,
                           drop_permutation_signs=False) -> BimoduleMorphism:
    """Strict degree-0 morphism from the Koszul bimodule to the bar
    bimodule: only the (0,0) component is nonzero."""
    _check_dim(dim)
    pair = pair or AlgebraPair(dim)
    koszul = koszul or koszul_bimodule(dim, pair)
    bar = bar or bar_bimodule(pair.poly, augmentation_bimodule(dim, pair))

    def rule(eta):
        return koszul_to_bar_element(dim, bar, eta, drop_permutation_signs)

    comps = {(0, 0): TaylorMap((0, 0), 0, rule)}
    return BimoduleMorphism(koszul, bar, components=comps)


def zero_morphism(source: AInfBimodule, target: AInfBimodule):
    """Negative control: a morphism with every component zero."""
    return BimoduleMorphism(source, target, components={})


def flipped_contraction_scale(p_flip):
    """Scalar family with the sign of one arity flipped (negative control)."""
    def scale(p):
        base = contraction_scale(p)
        return -base if p == p_flip else base
    return scale


# ---------------------------------------------------------------------------
# the two chain-map identities of the comparison morphism


def right_action_chain_residual(dim, eta, b, pair=None, koszul=None,
                                bar=None) -> GradedElement:
    """Difference of the two ways of acting by one exterior entry.

    Applies the bar bimodule's (0,1) component to the image of `eta` and
    subtracts the image of the Koszul bimodule's (0,1) action; vanishes
    identically for the true structures.
    """
    pair = pair or AlgebraPair(dim)
    koszul = koszul or koszul_bimodule(dim, pair)
    bar = bar or bar_bimodule(pair.poly, augmentation_bimodule(dim, pair))

    phi_eta = koszul_to_bar_element(dim, bar, eta)
    lhs = GradedElement.zero(bar.space)
    for word, coeff in phi_eta.items():
        lhs = lhs + bar.d(0, 1, (), word, (b,)).scale(coeff)

    acted = koszul.d(0, 1, (), eta, (b,))
    rhs = GradedElement.zero(bar.space)
    for mono, coeff in acted.items():
        rhs = rhs + koszul_to_bar_element(dim, bar, mono).scale(coeff)
    return lhs - rhs


def higher_right_action_residual(dim, eta, b_word, pair=None,
                                 bar=None) -> GradedElement:
    """Bar-side value on two or more exterior entries; must vanish."""
    if len(b_word) < 2:
        raise ValueError("needs at least two exterior entries")
    pair = pair or AlgebraPair(dim)
    bar = bar or bar_bimodule(pair.poly, augmentation_bimodule(dim, pair))
    phi_eta = koszul_to_bar_element(dim, bar, eta)
    out = GradedElement.zero(bar.space)
    for word, coeff in phi_eta.items():
        out = out + bar.d(0, len(b_word), (), word, tuple(b_word)).scale(coeff)
    return out
