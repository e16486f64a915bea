"""Graded vector space kernel: degrees, Koszul signs, sparse rational elements.

Every sign in the package flows through the two routines in this module
(`graded_permutation_sign` and `suspension_sign`); nothing else hand-derives
a sign.  All coefficients are exact `fractions.Fraction` values.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator


class SpaceMismatchError(ValueError):
    """Arithmetic attempted between elements of different graded spaces."""


class InhomogeneousError(ValueError):
    """A homogeneous degree was requested of an inhomogeneous element."""


class UnitMonomial:
    """Basis monomial of the ground field viewed as a graded space.

    Degree 0, weight 0.  All instances compare equal so the scalar space
    has a one-element basis.
    """

    __slots__ = ()

    degree = 0
    weight = 0

    def sort_key(self):
        return ()

    def __eq__(self, other):
        return isinstance(other, UnitMonomial)

    def __hash__(self):
        return hash("UnitMonomial")

    def __repr__(self):
        return "1"


SCALAR_SPACE = "scalar"
SCALAR_ONE = UnitMonomial()


def graded_permutation_sign(degrees, perm):
    """Koszul sign of permuting homogeneous factors of the given degrees.

    `perm` lists, for each output slot, the (0-based) input slot it takes;
    transposing factors of degrees p and q costs (-1)**(p*q), so the total
    sign is the product over inversions of `perm`.
    """
    n = len(degrees)
    if sorted(perm) != list(range(n)):
        raise ValueError(f"not a permutation of 0..{n - 1}: {perm!r}")
    sign = 1
    for i in range(n):
        for j in range(i + 1, n):
            if perm[i] > perm[j]:
                if (degrees[perm[i]] * degrees[perm[j]]) % 2:
                    sign = -sign
    return sign


def suspension_sign(degrees):
    """Sign produced by applying one suspension to every factor of a word.

    The tensor product of suspensions is evaluated factor by factor,
    rightmost first; the suspension aimed at slot i then crosses every
    factor to its left, picking up (-1)**degree per crossing.  The same
    sign converts back, so one routine serves both directions.
    """
    sign = 1
    crossed = 0
    for d in degrees[:-1]:
        crossed += d
        # the suspension aimed at the next slot crosses everything so far
        if crossed % 2:
            sign = -sign
    return sign


@dataclass(frozen=True)
class SignedWord:
    """An ordered word of (monomial, degree) factors carrying a sign."""

    factors: tuple
    sign: int

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ValueError(f"sign must be +1 or -1, got {self.sign}")


class GradedElement:
    """Finite rational linear combination of basis monomials of one space.

    Monomials are any hashable objects exposing integer `degree` and
    `weight` attributes and a `sort_key()` method.  Zero coefficients are
    never stored.  Instances are immutable by convention; all operations
    return new elements.
    """

    __slots__ = ("space", "terms")

    def __init__(self, space, terms=None):
        self.space = space
        clean = {}
        if terms:
            for mono, coeff in terms.items():
                coeff = Fraction(coeff)
                if coeff:
                    clean[mono] = coeff
        self.terms = clean

    @classmethod
    def zero(cls, space):
        return cls(space)

    @classmethod
    def from_monomial(cls, space, mono, coeff=1):
        return cls(space, {mono: Fraction(coeff)})

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def items(self) -> Iterator:
        return iter(self.terms.items())

    def sorted_items(self):
        return sorted(self.terms.items(), key=lambda kv: kv[0].sort_key())

    def _check_space(self, other):
        if self.space != other.space:
            raise SpaceMismatchError(f"{self.space!r} vs {other.space!r}")

    def __add__(self, other):
        self._check_space(other)
        terms = dict(self.terms)
        for mono, coeff in other.terms.items():
            new = terms.get(mono, 0) + coeff
            if new:
                terms[mono] = new
            else:
                terms.pop(mono, None)
        out = GradedElement.__new__(GradedElement)
        out.space = self.space
        out.terms = terms
        return out

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, coeff):
        coeff = Fraction(coeff)
        if not coeff:
            return GradedElement.zero(self.space)
        out = GradedElement.__new__(GradedElement)
        out.space = self.space
        out.terms = {m: c * coeff for m, c in self.terms.items()}
        return out

    def __neg__(self):
        return self.scale(-1)

    def __eq__(self, other):
        if not isinstance(other, GradedElement):
            return NotImplemented
        return self.space == other.space and self.terms == other.terms

    def __hash__(self):
        return hash((self.space, frozenset(self.terms.items())))

    def homogeneous_degree(self):
        """Common degree of all monomials, or raise if mixed.

        The zero element is homogeneous of every degree; returns None.
        """
        degs = {m.degree for m in self.terms}
        if not degs:
            return None
        if len(degs) > 1:
            raise InhomogeneousError(f"degrees {sorted(degs)} in {self}")
        return degs.pop()

    def homogeneous_weight(self):
        ws = {m.weight for m in self.terms}
        if not ws:
            return None
        if len(ws) > 1:
            raise InhomogeneousError(f"weights {sorted(ws)} in {self}")
        return ws.pop()

    def coefficient(self, mono) -> Fraction:
        return self.terms.get(mono, Fraction(0))

    def map_monomials(self, space, fn):
        """Linear extension of a monomial-level map `fn: mono -> element`."""
        out = GradedElement.zero(space)
        for mono, coeff in self.terms.items():
            out = out + fn(mono).scale(coeff)
        return out

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for mono, coeff in self.sorted_items():
            bits.append(f"{coeff}*{mono}")
        return " + ".join(bits)


def tensor_elements(space, x: GradedElement, y: GradedElement, combine):
    """Bilinear extension of a monomial-pair combination rule.

    No sign is applied here: Koszul signs belong to the caller's
    convention and enter only via the sign routines above.
    """
    out = GradedElement.zero(space)
    for mx, cx in x.items():
        for my, cy in y.items():
            out = out + combine(mx, my).scale(cx * cy)
    return out


def scalar_element(value) -> GradedElement:
    return GradedElement.from_monomial(SCALAR_SPACE, SCALAR_ONE, value)


def scalar_value(el: GradedElement) -> Fraction:
    """Extract the rational coordinate of an element of the scalar space."""
    if el.space != SCALAR_SPACE:
        raise SpaceMismatchError(f"not a scalar element: {el.space!r}")
    return el.coefficient(SCALAR_ONE)
