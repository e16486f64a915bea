"""Generic A-infinity algebras and bimodules with exact residual checkers.

Internally every Taylor component is stored in the shifted convention
(degree +1 on suspended inputs); `conjugate_component` converts to and
from the unshifted convention, where an n-ary algebra component has
degree 2-n and an (m,n) bimodule component has degree 1-m-n.  The
conversion sign is computed by `graded.suspension_sign`, never by a
closed formula.
"""

from __future__ import annotations

from fractions import Fraction

from .graded import GradedElement, suspension_sign


class DegreeBookkeepingError(ValueError):
    """Declared and computed degrees of a Taylor component disagree."""


class FlatnessError(ValueError):
    """A construction requiring flat algebras received a curved one."""


class TaylorMap:
    """One multilinear Taylor component on basis tuples.

    `arity` is an int (algebra component) or an (m, n) pair (bimodule or
    morphism component).  `shifted_degree` is the declared degree on
    suspended inputs: +1 for structure maps, 0 for morphism components.
    The rule receives basis monomials and returns a `GradedElement` in
    the unshifted representation of the target; values are memoized.
    """

    __slots__ = ("arity", "shifted_degree", "rule", "_cache", "check_degree")

    def __init__(self, arity, shifted_degree, rule, check_degree=True):
        self.arity = arity
        self.shifted_degree = shifted_degree
        self.rule = rule
        self.check_degree = check_degree
        self._cache = {}

    def __call__(self, *monos) -> GradedElement:
        key = monos
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        value = self.rule(*monos)
        if self.check_degree and value.terms:
            got = value.homogeneous_degree()
            want = self._expected_degree(monos)
            if got != want:
                raise DegreeBookkeepingError(
                    f"component {self.arity}: degree {got} != expected {want} "
                    f"on {monos}"
                )
        self._cache[key] = value
        return value

    def _expected_degree(self, monos):
        # shifted: sum of (deg - 1) plus declared shifted degree; the
        # output lives one shift down, so add 1 back.
        return sum(m.degree - 1 for m in monos) + self.shifted_degree + 1


def component_from_unshifted_rule(arity, unshifted_degree, rule):
    """Build a shifted-convention component from an unshifted-convention rule.

    The rule is conjugated by suspensions; the sign on each basis tuple
    comes from `suspension_sign` applied to the tuple's degrees.
    """
    def shifted_rule(*monos):
        sign = suspension_sign([m.degree for m in monos])
        value = rule(*monos)
        return value.scale(sign) if sign < 0 else value

    return TaylorMap(arity, unshifted_degree_to_shifted(arity, unshifted_degree),
                     shifted_rule)


def unshifted_degree_to_shifted(arity, unshifted_degree):
    """Shifted degree of a component declared with an unshifted degree."""
    n = arity if isinstance(arity, int) else arity[0] + 1 + arity[1]
    # unshifted degree 2-n (algebras) or 1-m-n (bimodules) both become +1
    return unshifted_degree + n - 1


def conjugate_component(tm: TaylorMap, arity=None):
    """Conjugate a component by suspensions (an involution on values).

    Applying it to a shifted-convention component yields the unshifted
    one and vice versa; the same crossing signs serve both directions.
    """
    arity = tm.arity if arity is None else arity

    def rule(*monos):
        sign = suspension_sign([m.degree for m in monos])
        value = tm.rule(*monos)
        return value.scale(sign) if sign < 0 else value

    n = arity if isinstance(arity, int) else arity[0] + 1 + arity[1]
    return TaylorMap(arity, tm.shifted_degree - (n - 1), rule,
                     check_degree=False)


class AInfAlgebra:
    """Family of shifted-convention components d^n of degree +1.

    `components` maps arity to TaylorMap; missing arities are zero.
    `unit` is an optional degree-0 basis monomial.
    """

    def __init__(self, space, components, unit=None, flat=True, unital=False):
        self.space = space
        self.components = dict(components)
        self.unit = unit
        self.flat = flat
        self.unital = unital
        if flat and 0 in self.components:
            raise FlatnessError(f"flat algebra {space} has a 0-ary component")

    def component(self, n):
        return self.components.get(n)

    def d(self, n, word) -> GradedElement:
        """Evaluate d^n on a tuple of basis monomials (zero if absent)."""
        tm = self.components.get(n)
        if tm is None:
            return GradedElement.zero(self.space)
        return tm(*word)

    def m_value(self, n, word) -> GradedElement:
        """Unshifted-convention value on a basis tuple."""
        tm = self.components.get(n)
        if tm is None:
            return GradedElement.zero(self.space)
        sign = suspension_sign([m.degree for m in word])
        val = tm(*word)
        return val.scale(sign) if sign < 0 else val


class AInfBimodule:
    """Components d^{m,n} over a fixed pair of A-infinity algebras.

    `components` maps (m, n) to TaylorMap; `factory(m, n)` may supply
    further components for unbounded families and is consulted once per
    arity, with None cached for absent ones.
    """

    def __init__(self, left, right, space, components=None, factory=None,
                 unit_compatible=False):
        self.left = left
        self.right = right
        self.space = space
        self.components = dict(components or {})
        self.factory = factory
        self.unit_compatible = unit_compatible
        self._factory_seen = set()

    def component(self, m, n):
        key = (m, n)
        if key in self.components:
            return self.components[key]
        if self.factory is not None and key not in self._factory_seen:
            self._factory_seen.add(key)
            tm = self.factory(m, n)
            if tm is not None:
                self.components[key] = tm
                return tm
        return None

    def d(self, m, n, a_word, k_mono, b_word) -> GradedElement:
        tm = self.component(m, n)
        if tm is None:
            return GradedElement.zero(self.space)
        return tm(*a_word, k_mono, *b_word)

    def d_element(self, m, n, a_word, k_el: GradedElement, b_word):
        """Linear extension of d^{m,n} in the module slot."""
        out = GradedElement.zero(self.space)
        for mono, coeff in k_el.items():
            out = out + self.d(m, n, a_word, mono, b_word).scale(coeff)
        return out

    def m_value(self, m, n, a_word, k_mono, b_word) -> GradedElement:
        tm = self.component(m, n)
        if tm is None:
            return GradedElement.zero(self.space)
        degs = [x.degree for x in a_word] + [k_mono.degree] + \
               [x.degree for x in b_word]
        sign = suspension_sign(degs)
        val = tm(*a_word, k_mono, *b_word)
        return val.scale(sign) if sign < 0 else val


class BimoduleMorphism:
    """Degree-0 Taylor components between bimodules over one algebra pair."""

    def __init__(self, source: AInfBimodule, target: AInfBimodule,
                 components=None, factory=None):
        if source.left is not target.left or source.right is not target.right:
            raise ValueError("morphism endpoints live over different algebras")
        self.source = source
        self.target = target
        self.components = dict(components or {})
        self.factory = factory
        self._factory_seen = set()

    def component(self, m, n):
        key = (m, n)
        if key in self.components:
            return self.components[key]
        if self.factory is not None and key not in self._factory_seen:
            self._factory_seen.add(key)
            tm = self.factory(m, n)
            if tm is not None:
                self.components[key] = tm
                return tm
        return None

    def apply(self, m, n, a_word, k_mono, b_word) -> GradedElement:
        tm = self.component(m, n)
        if tm is None:
            return GradedElement.zero(self.target.space)
        return tm(*a_word, k_mono, *b_word)

    def apply_element(self, m, n, a_word, k_el, b_word) -> GradedElement:
        out = GradedElement.zero(self.target.space)
        for mono, coeff in k_el.items():
            out = out + self.apply(m, n, a_word, mono, b_word).scale(coeff)
        return out


# ---------------------------------------------------------------------------
# structure builders


def build_dga(space, product, unit=None, differential=None, curvature=None,
              sample=(), unital=False):
    """Algebra with d^1 from a differential, d^2 from a binary product.

    `product` and `differential` are unshifted-convention rules on basis
    monomials.  `sample` supplies basis monomials on which associativity
    and the vanishing of the squared differential are spot-checked at
    construction time.
    """
    comps = {}
    if differential is not None:
        comps[1] = component_from_unshifted_rule(1, 1, differential)
    comps[2] = component_from_unshifted_rule(2, 0, product)
    if curvature is not None:
        comps[0] = TaylorMap(0, 1, lambda: curvature)

    _spot_check_dga(space, product, differential, sample)

    return AInfAlgebra(space, comps, unit=unit,
                       flat=curvature is None, unital=unital)


def _spot_check_dga(space, product, differential, sample):
    def mul(x: GradedElement, y: GradedElement) -> GradedElement:
        out = GradedElement.zero(space)
        for mx, cx in x.items():
            for my, cy in y.items():
                out = out + product(mx, my).scale(cx * cy)
        return out

    for a in sample:
        ea = GradedElement.from_monomial(space, a)
        if differential is not None:
            dd = differential(a).map_monomials(space, lambda m: differential(m))
            if not dd.is_zero():
                raise ValueError(f"differential does not square to zero on {a}")
        for b in sample:
            eb = GradedElement.from_monomial(space, b)
            for c in sample:
                ec = GradedElement.from_monomial(space, c)
                if mul(mul(ea, eb), ec) != mul(ea, mul(eb, ec)):
                    raise ValueError(
                        f"product not associative on ({a}, {b}, {c})"
                    )


def algebra_shifted_degrees(word):
    return [m.degree - 1 for m in word]


# ---------------------------------------------------------------------------
# residual checkers


def ainfty_relation_residual(alg: AInfAlgebra, word) -> GradedElement:
    """Taylor coefficient of the squared codifferential on one basis word.

    Sums every way of applying one component inside another, with the
    Koszul sign of moving the inner degree-1 operator across the shifted
    factors to its left.  Zero iff the quadratic relation holds here.
    """
    word = tuple(word)
    n = len(word)
    arities = set(alg.components)
    total = GradedElement.zero(alg.space)
    for i in range(n + 1):
        sign = _shift_sign(word[:i])
        for j in sorted(arities):
            if i + j > n:
                continue
            outer_arity = n - j + 1
            if outer_arity not in arities:
                continue
            inner = alg.d(j, word[i:i + j])
            if inner.is_zero():
                continue
            rest = word[i + j:]
            for mono, coeff in inner.items():
                outer = alg.d(outer_arity, word[:i] + (mono,) + rest)
                if not outer.is_zero():
                    total = total + outer.scale(coeff * sign)
    return total


def _shift_sign(monos):
    s = 0
    for m in monos:
        s += m.degree - 1
    return -1 if s % 2 else 1


def _inner_pieces(bim: AInfBimodule, a_word, k_mono, b_word):
    """All single applications of the full differential to a word.

    Yields (sign, new_a_word, k_element, new_b_word) triples covering
    inner algebra components on runs of a's or b's and inner bimodule
    components on the run straddling the module slot.
    """
    m, n = len(a_word), len(b_word)
    left, right = bim.left, bim.right

    for i in range(m + 1):
        sign = _shift_sign(a_word[:i])
        for j in sorted(set(left.components)):
            if i + j > m:
                continue
            inner = left.d(j, a_word[i:i + j])
            if inner.is_zero():
                continue
            for mono, coeff in inner.items():
                yield (
                    coeff * sign,
                    a_word[:i] + (mono,) + a_word[i + j:],
                    None,
                    b_word,
                )

    base = _shift_sign(a_word) * (-1 if (k_mono.degree - 1) % 2 else 1)
    for i in range(n + 1):
        sign = base * _shift_sign(b_word[:i])
        for j in sorted(set(right.components)):
            if i + j > n:
                continue
            inner = right.d(j, b_word[i:i + j])
            if inner.is_zero():
                continue
            for mono, coeff in inner.items():
                yield (
                    coeff * sign,
                    a_word,
                    None,
                    b_word[:i] + (mono,) + b_word[i + j:],
                )

    for mp in range(m + 1):
        sign = _shift_sign(a_word[:m - mp])
        for np in range(n + 1):
            inner = bim.d(mp, np, a_word[m - mp:], k_mono, b_word[:np])
            if inner.is_zero():
                continue
            yield (sign, a_word[:m - mp], inner, b_word[np:])


def bimodule_relation_residual(bim: AInfBimodule, a_word, k_mono,
                               b_word) -> GradedElement:
    """Coefficient of the squared bimodule codifferential on one word."""
    a_word, b_word = tuple(a_word), tuple(b_word)
    total = GradedElement.zero(bim.space)
    for sign, aw, k_el, bw in _inner_pieces(bim, a_word, k_mono, b_word):
        mo, no = len(aw), len(bw)
        if k_el is None:
            outer = bim.d(mo, no, aw, k_mono, bw)
            if not outer.is_zero():
                total = total + outer.scale(sign)
        else:
            outer = bim.d_element(mo, no, aw, k_el, bw)
            if not outer.is_zero():
                total = total + outer.scale(sign)
    return total


def morphism_relation_residual(phi: BimoduleMorphism, a_word, k_mono,
                               b_word) -> GradedElement:
    """Difference of the two composites of a morphism with the differentials.

    Vanishes on every word exactly when the components assemble to a map
    of bicomodules commuting with both codifferentials.
    """
    a_word, b_word = tuple(a_word), tuple(b_word)
    m, n = len(a_word), len(b_word)
    src, dst = phi.source, phi.target
    total = GradedElement.zero(dst.space)

    # target differential after the morphism
    for mp in range(m + 1):
        for np in range(n + 1):
            mapped = phi.apply(mp, np, a_word[m - mp:], k_mono, b_word[:np])
            if mapped.is_zero():
                continue
            outer = dst.d_element(m - mp, n - np, a_word[:m - mp], mapped,
                                  b_word[np:])
            if not outer.is_zero():
                total = total + outer

    # morphism after the source differential
    for sign, aw, k_el, bw in _inner_pieces(src, a_word, k_mono, b_word):
        mo, no = len(aw), len(bw)
        if k_el is None:
            mapped = phi.apply(mo, no, aw, k_mono, bw)
        else:
            mapped = phi.apply_element(mo, no, aw, k_el, bw)
        if not mapped.is_zero():
            total = total - mapped.scale(sign)
    return total


# ---------------------------------------------------------------------------
# unitality


class UnitalityReport:
    def __init__(self, failures):
        self.failures = list(failures)

    @property
    def passed(self):
        return not self.failures

    def __repr__(self):
        if self.passed:
            return "UnitalityReport(passed)"
        return f"UnitalityReport({len(self.failures)} failures)"


def check_unital_algebra(alg: AInfAlgebra, basis, max_arity=4):
    """Verify the unit axioms on every basis element up to the arity bound."""
    if alg.unit is None:
        raise ValueError(f"algebra {alg.space} declares no unit")
    one = alg.unit
    failures = []
    for a in basis:
        left = alg.m_value(2, (one, a))
        right = alg.m_value(2, (a, one))
        want = GradedElement.from_monomial(alg.space, a)
        if left != want:
            failures.append(("m2(1,a) != a", (one, a)))
        if right != want:
            failures.append(("m2(a,1) != a", (a, one)))
    for arity in sorted(set(alg.components)):
        if arity == 2 or arity > max_arity or arity == 0:
            continue
        for a in basis:
            for pos in range(arity):
                word = tuple(
                    one if t == pos else a for t in range(arity)
                )
                if not alg.m_value(arity, word).is_zero():
                    failures.append((f"m{arity} with unit input", word))
    return UnitalityReport(failures)


def check_unital_bimodule(bim: AInfBimodule, k_basis, a_basis, b_basis,
                          max_arity=3):
    """Verify left and right unit actions and vanishing with unit inputs."""
    failures = []
    one_a = bim.left.unit
    one_b = bim.right.unit
    for k in k_basis:
        want = GradedElement.from_monomial(bim.space, k)
        if one_a is not None:
            got = bim.m_value(1, 0, (one_a,), k, ())
            if got != want:
                failures.append(("m(1,0)(1,k) != k", (one_a, k)))
        if one_b is not None:
            got = bim.m_value(0, 1, (), k, (one_b,))
            if got != want:
                failures.append(("m(0,1)(k,1) != k", (k, one_b)))
    if one_a is not None:
        import itertools as _it

        for m in range(1, max_arity + 1):
            for n in range(0, max_arity + 1 - m):
                if (m, n) == (1, 0):
                    continue
                for k in k_basis:
                    for pos in range(m):
                        others = _it.product(a_basis, repeat=m - 1)
                        for rest in others:
                            aw = rest[:pos] + (one_a,) + rest[pos:]
                            for bw in _it.product(b_basis, repeat=n):
                                got = bim.m_value(m, n, aw, k, bw)
                                if not got.is_zero():
                                    failures.append(
                                        (f"m({m},{n}) with left unit",
                                         (aw, k, bw))
                                    )
    return UnitalityReport(failures)
