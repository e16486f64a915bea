"""Concrete graded algebras on a d-dimensional space.

Three families of basis monomials:

* `SymMonomial`   -- polynomials in commuting variables x1..xd (degree 0),
* `ExtMonomial`   -- the exterior algebra on anticommuting generators
                     e1..ed of degree +1, realised as the iterated
                     theta-derivations it acts by,
* `KoszulMonomial`-- the superalgebra in x1..xd and odd t1..td of degree -1.

Weight counts x-exponents plus t-factors; an `ExtMonomial` carries weight
minus its degree because each derivation factor consumes one weight unit
of whatever it acts on.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

from .graded import GradedElement, tensor_elements


def sym_space(dim):
    return f"sym{dim}"


def ext_space(dim):
    return f"ext{dim}"


def koszul_space(dim):
    return f"kos{dim}"


class SymMonomial:
    """Monomial x1^a1 * ... * xd^ad, stored by its exponent tuple."""

    __slots__ = ("exponents",)

    def __init__(self, exponents):
        self.exponents = tuple(int(e) for e in exponents)
        if any(e < 0 for e in self.exponents):
            raise ValueError(f"negative exponent in {self.exponents}")

    degree = 0

    @property
    def weight(self):
        return sum(self.exponents)

    def sort_key(self):
        return (self.weight, self.exponents)

    def __eq__(self, other):
        return isinstance(other, SymMonomial) and self.exponents == other.exponents

    def __hash__(self):
        return hash(("sym", self.exponents))

    def __repr__(self):
        bits = []
        for i, e in enumerate(self.exponents, start=1):
            if e == 1:
                bits.append(f"x{i}")
            elif e > 1:
                bits.append(f"x{i}^{e}")
        return "*".join(bits) if bits else "1"


class ExtMonomial:
    """Product e_{i1} ^ ... ^ e_{ip} with strictly increasing indices."""

    __slots__ = ("indices",)

    def __init__(self, indices):
        self.indices = tuple(int(i) for i in indices)
        if list(self.indices) != sorted(set(self.indices)):
            raise ValueError(f"indices must be strictly increasing: {indices}")
        if self.indices and self.indices[0] < 1:
            raise ValueError(f"indices are 1-based: {indices}")

    @property
    def degree(self):
        return len(self.indices)

    @property
    def weight(self):
        # derivation factors consume weight
        return -len(self.indices)

    def sort_key(self):
        return (len(self.indices), self.indices)

    def __eq__(self, other):
        return isinstance(other, ExtMonomial) and self.indices == other.indices

    def __hash__(self):
        return hash(("ext", self.indices))

    def __repr__(self):
        return "*".join(f"e{i}" for i in self.indices) if self.indices else "1"


class KoszulMonomial:
    """Monomial x^a * t_{j1} ... t_{jq}, t's odd of degree -1."""

    __slots__ = ("exponents", "thetas")

    def __init__(self, exponents, thetas):
        self.exponents = tuple(int(e) for e in exponents)
        self.thetas = tuple(int(j) for j in thetas)
        if any(e < 0 for e in self.exponents):
            raise ValueError(f"negative exponent in {self.exponents}")
        if list(self.thetas) != sorted(set(self.thetas)):
            raise ValueError(f"theta indices must be strictly increasing: {thetas}")

    @property
    def degree(self):
        return -len(self.thetas)

    @property
    def weight(self):
        return sum(self.exponents) + len(self.thetas)

    def sort_key(self):
        return (self.weight, len(self.thetas), self.exponents, self.thetas)

    def __eq__(self, other):
        return (
            isinstance(other, KoszulMonomial)
            and self.exponents == other.exponents
            and self.thetas == other.thetas
        )

    def __hash__(self):
        return hash(("kos", self.exponents, self.thetas))

    def __repr__(self):
        bits = []
        for i, e in enumerate(self.exponents, start=1):
            if e == 1:
                bits.append(f"x{i}")
            elif e > 1:
                bits.append(f"x{i}^{e}")
        bits.extend(f"t{j}" for j in self.thetas)
        return "*".join(bits) if bits else "1"


# ---------------------------------------------------------------------------
# constructors and units


def sym_one(dim):
    return SymMonomial((0,) * dim)

def sym_gen(dim, i):
    e = [0] * dim
    e[i - 1] = 1
    return SymMonomial(e)

def ext_one(dim):
    return ExtMonomial(())

def ext_gen(dim, i):
    return ExtMonomial((i,))

def koszul_one(dim):
    return KoszulMonomial((0,) * dim, ())

def koszul_x(dim, i):
    e = [0] * dim
    e[i - 1] = 1
    return KoszulMonomial(e, ())

def koszul_theta(dim, j):
    return KoszulMonomial((0,) * dim, (j,))


def sym_el(dim, mono, coeff=1):
    return GradedElement.from_monomial(sym_space(dim), mono, coeff)

def ext_el(dim, mono, coeff=1):
    return GradedElement.from_monomial(ext_space(dim), mono, coeff)

def koszul_el(dim, mono, coeff=1):
    return GradedElement.from_monomial(koszul_space(dim), mono, coeff)


# ---------------------------------------------------------------------------
# monomial-level products


def sym_mono_mul(a: SymMonomial, b: SymMonomial) -> SymMonomial:
    return SymMonomial(tuple(x + y for x, y in zip(a.exponents, b.exponents)))


def ext_mono_mul(dim, a: ExtMonomial, b: ExtMonomial):
    """Wedge two exterior monomials; returns (sign, monomial) or None."""
    if set(a.indices) & set(b.indices):
        return None
    merged = a.indices + b.indices
    # sort by adjacent transpositions of odd generators
    sign = 1
    lst = list(merged)
    for i in range(len(lst)):
        for j in range(len(lst) - 1 - i):
            if lst[j] > lst[j + 1]:
                lst[j], lst[j + 1] = lst[j + 1], lst[j]
                sign = -sign
    return sign, ExtMonomial(tuple(lst))


def koszul_mono_mul(a: KoszulMonomial, b: KoszulMonomial):
    """Supercommutative product; returns (sign, monomial) or None."""
    if set(a.thetas) & set(b.thetas):
        return None
    exps = tuple(x + y for x, y in zip(a.exponents, b.exponents))
    merged = list(a.thetas + b.thetas)
    sign = 1
    for i in range(len(merged)):
        for j in range(len(merged) - 1 - i):
            if merged[j] > merged[j + 1]:
                merged[j], merged[j + 1] = merged[j + 1], merged[j]
                sign = -sign
    return sign, KoszulMonomial(exps, tuple(merged))


# ---------------------------------------------------------------------------
# element-level operations


def sym_multiply(dim, a: GradedElement, b: GradedElement) -> GradedElement:
    def combine(ma, mb):
        return sym_el(dim, sym_mono_mul(ma, mb))
    return tensor_elements(sym_space(dim), a, b, combine)


def ext_multiply(dim, a: GradedElement, b: GradedElement) -> GradedElement:
    def combine(ma, mb):
        res = ext_mono_mul(dim, ma, mb)
        if res is None:
            return GradedElement.zero(ext_space(dim))
        sign, mono = res
        return ext_el(dim, mono, sign)
    return tensor_elements(ext_space(dim), a, b, combine)


def koszul_multiply(dim, a: GradedElement, b: GradedElement) -> GradedElement:
    def combine(ma, mb):
        res = koszul_mono_mul(ma, mb)
        if res is None:
            return GradedElement.zero(koszul_space(dim))
        sign, mono = res
        return koszul_el(dim, mono, sign)
    return tensor_elements(koszul_space(dim), a, b, combine)


def partial_derivative(dim, a: GradedElement, j: int) -> GradedElement:
    """Formal d/dx_j on a polynomial element."""
    if not 1 <= j <= dim:
        raise ValueError(f"index {j} out of range 1..{dim}")
    out = GradedElement.zero(sym_space(dim))
    for mono, coeff in a.items():
        e = mono.exponents[j - 1]
        if e:
            exps = list(mono.exponents)
            exps[j - 1] = e - 1
            out = out + sym_el(dim, SymMonomial(exps), coeff * e)
    return out


def evaluate_at_zero(a: GradedElement) -> Fraction:
    """Constant term of a polynomial element."""
    total = Fraction(0)
    for mono, coeff in a.items():
        if mono.weight == 0:
            total += coeff
    return total


def iterated_partial_at_zero(mono: SymMonomial, derivs) -> Fraction:
    """Value at 0 of a repeated partial derivative of a single monomial.

    `derivs` is an iterable of 1-based variable indices; the result is
    nonzero exactly when the multiset of indices matches the exponents,
    in which case it is the product of the factorials of the exponents.
    """
    counts = {}
    for j in derivs:
        counts[j] = counts.get(j, 0) + 1
    value = Fraction(1)
    for i, e in enumerate(mono.exponents, start=1):
        if counts.get(i, 0) != e:
            return Fraction(0)
        for k in range(2, e + 1):
            value *= k
    # no stray derivatives allowed
    if any(i > len(mono.exponents) or i < 1 for i in counts):
        return Fraction(0)
    return value


def duality_pairing(dim, a: GradedElement, v: GradedElement) -> Fraction:
    """Pairing of a linear polynomial against a degree-1 exterior element."""
    total = Fraction(0)
    for ma, ca in a.items():
        if ma.weight != 1:
            raise ValueError(f"not a linear polynomial term: {ma}")
        i = next(k for k, e in enumerate(ma.exponents, start=1) if e)
        for mv, cv in v.items():
            if mv.degree != 1:
                raise ValueError(f"not a degree-1 exterior term: {mv}")
            if mv.indices[0] == i:
                total += ca * cv
    return total


def euler_contraction(dim, eta: GradedElement) -> GradedElement:
    """Degree +1 left derivation with x_i -> 0 and t_i -> x_i."""
    out = GradedElement.zero(koszul_space(dim))
    for mono, coeff in eta.items():
        # Leibniz over the theta factors; x's are even and contribute 0
        for pos, j in enumerate(mono.thetas):
            # the derivation crosses `pos` odd factors to reach t_j
            sign = -1 if pos % 2 else 1
            exps = list(mono.exponents)
            exps[j - 1] += 1
            thetas = mono.thetas[:pos] + mono.thetas[pos + 1:]
            out = out + koszul_el(
                dim, KoszulMonomial(exps, thetas), coeff * sign
            )
    return out


def theta_derivation(dim, j: int, eta: GradedElement) -> GradedElement:
    """Odd left derivation d/dt_j of degree +1 on the Koszul superalgebra."""
    out = GradedElement.zero(koszul_space(dim))
    for mono, coeff in eta.items():
        if j in mono.thetas:
            pos = mono.thetas.index(j)
            sign = -1 if pos % 2 else 1
            thetas = mono.thetas[:pos] + mono.thetas[pos + 1:]
            out = out + koszul_el(
                dim, KoszulMonomial(mono.exponents, thetas), coeff * sign
            )
    return out


def polyderivation_apply(dim, b, eta: GradedElement) -> GradedElement:
    """Act with an exterior element on the Koszul superalgebra from the left.

    A monomial e_{j1}*...*e_{jp} acts as the composite of the single
    derivations d/dt_j, rightmost factor first.
    """
    if isinstance(b, ExtMonomial):
        b_items = [(b, Fraction(1))]
    else:
        b_items = list(b.items())
    out = GradedElement.zero(koszul_space(dim))
    for mono, coeff in b_items:
        cur = eta
        for j in reversed(mono.indices):
            cur = theta_derivation(dim, j, cur)
            if cur.is_zero():
                break
        out = out + cur.scale(coeff)
    return out


# ---------------------------------------------------------------------------
# basis enumeration (canonical order: by weight, then lexicographic keys)


def sym_monomials(dim, max_weight):
    out = []
    for w in range(max_weight + 1):
        out.extend(
            SymMonomial(e) for e in _compositions(w, dim)
        )
    return out


def sym_monomials_of_weight(dim, weight):
    return [SymMonomial(e) for e in _compositions(weight, dim)]


def ext_monomials(dim):
    out = []
    for p in range(dim + 1):
        for idx in itertools.combinations(range(1, dim + 1), p):
            out.append(ExtMonomial(idx))
    return out


def koszul_monomials(dim, max_weight):
    out = []
    for w in range(max_weight + 1):
        out.extend(koszul_monomials_of_weight(dim, w))
    return out


def koszul_monomials_of_weight(dim, weight):
    out = []
    for q in range(min(dim, weight) + 1):
        for thetas in itertools.combinations(range(1, dim + 1), q):
            for exps in _compositions(weight - q, dim):
                out.append(KoszulMonomial(exps, thetas))
    out.sort(key=lambda m: m.sort_key())
    return out


def _compositions(total, parts):
    """All tuples of `parts` non-negative integers summing to `total`."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    if parts == 1:
        yield (total,)
        return
    for head in range(total + 1):
        for rest in _compositions(total - head, parts - 1):
            yield (head,) + rest
