"""Weight-split chain complexes, exact Betti numbers, and induced maps.

Both complexes in scope split as direct sums over the weight grading,
with finitely many basis monomials per (weight, degree) block, so
homology is computed blockwise with no truncation error.  Ranks come
from fraction-free Gaussian elimination over the integers after
clearing denominators.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

from .graded import SCALAR_ONE, GradedElement, scalar_element
from . import polyalg as P
from .bridge import AlgebraPair, augmentation_bimodule, koszul_bimodule
from .tensorbar import BarBimodule, TensorWord, bar_bimodule, bar_words


class WindowBoundaryError(ValueError):
    """Homology requested at a degree whose incoming differential lies
    outside the built window."""


class WeightedComplex:
    """Bases and differentials indexed by (weight, degree).

    `basis[(w, q)]` lists the monomials of weight w in degree q.  The
    matrix of the degree-raising differential out of (w, q) has one row
    per source monomial and one column per target monomial: entry [i][j]
    is the coefficient of target monomial j in the image of source
    monomial i.
    """

    def __init__(self, name, basis, differential, degree_range, weights,
                 unreliable_degrees=(), complete_below=False):
        self.name = name
        self.basis = basis
        self._diff = differential
        self.degree_range = degree_range
        self.weights = list(weights)
        self.unreliable_degrees = set(unreliable_degrees)
        # a complex that is structurally zero below its degree range (as
        # opposed to truncated there) reports vanishing homology below it
        self.complete_below = complete_below
        self._matrices = {}

    def basis_at(self, weight, degree):
        return self.basis.get((weight, degree), [])

    def matrix(self, weight, degree):
        """Matrix of the differential out of (weight, degree)."""
        key = (weight, degree)
        if key in self._matrices:
            return self._matrices[key]
        src = self.basis_at(weight, degree)
        dst = self.basis_at(weight, degree + 1)
        index = {m: j for j, m in enumerate(dst)}
        rows = []
        for mono in src:
            image = self._diff(mono)
            row = [Fraction(0)] * len(dst)
            for tm, coeff in image.items():
                if tm.weight != weight:
                    raise AssertionError(
                        f"{self.name}: differential broke the weight "
                        f"splitting on {mono}"
                    )
                if tm not in index:
                    raise AssertionError(
                        f"{self.name}: image monomial {tm} of {mono} "
                        f"missing from the basis at ({weight}, {degree + 1})"
                    )
                row[index[tm]] = coeff
            rows.append(row)
        self._matrices[key] = rows
        return rows

    def check_squares_to_zero(self):
        for w in self.weights:
            for q in range(self.degree_range[0], self.degree_range[1]):
                a = self.matrix(w, q)
                b = self.matrix(w, q + 1)
                prod = matrix_multiply(a, b)
                for row in prod:
                    for entry in row:
                        if entry:
                            raise AssertionError(
                                f"{self.name}: differential does not square "
                                f"to zero at ({w}, {q})"
                            )

    def betti(self, weight, degree):
        """Exact homology dimension of one (weight, degree) block."""
        if degree in self.unreliable_degrees:
            raise WindowBoundaryError(
                f"{self.name}: degree {degree} touches the window boundary"
            )
        lo, hi = self.degree_range
        if not lo <= degree <= hi:
            if self.complete_below and degree < lo:
                return 0
            raise WindowBoundaryError(
                f"{self.name}: degree {degree} outside built range "
                f"[{lo}, {hi}]"
            )
        n = len(self.basis_at(weight, degree))
        if n == 0:
            return 0
        rank_out = matrix_rank(self.matrix(weight, degree))
        if degree - 1 >= lo:
            rank_in = matrix_rank(self.matrix(weight, degree - 1))
        else:
            rank_in = 0
        return n - rank_out - rank_in

    def betti_table(self, max_weight, degrees):
        return {
            (w, q): self.betti(w, q)
            for w in range(max_weight + 1)
            for q in degrees
            if q not in self.unreliable_degrees
        }

    def export_triplets(self, stream):
        """One line per nonzero entry: weight degree row col num/den."""
        for w in self.weights:
            for q in range(self.degree_range[0], self.degree_range[1] + 1):
                rows = self.matrix(w, q)
                for i, row in enumerate(rows):
                    for j, entry in enumerate(row):
                        if entry:
                            stream.write(
                                f"{w} {q} {i} {j} "
                                f"{entry.numerator}/{entry.denominator}\n"
                            )


# ---------------------------------------------------------------------------
# exact linear algebra


def matrix_multiply(a, b):
    if not a or not b:
        return []
    n_mid = len(a[0]) if a[0] is not None else 0
    if n_mid != len(b):
        if n_mid == 0 or len(b) == 0:
            return [[Fraction(0)] * (len(b[0]) if b else 0) for _ in a]
        raise ValueError("dimension mismatch")
    cols = len(b[0]) if b else 0
    out = []
    for row in a:
        new = [Fraction(0)] * cols
        for k, entry in enumerate(row):
            if entry:
                brow = b[k]
                for j in range(cols):
                    if brow[j]:
                        new[j] += entry * brow[j]
        out.append(new)
    return out


def matrix_rank(rows):
    """Rank by fraction-free (Bareiss) elimination on cleared integers."""
    if not rows or not rows[0]:
        return 0
    m = []
    for row in rows:
        denom = 1
        for entry in row:
            denom = denom * entry.denominator // _gcd(denom, entry.denominator)
        m.append([int(entry * denom) for entry in row])
    n_rows, n_cols = len(m), len(m[0])
    rank = 0
    prev = 1
    row = 0
    for col in range(n_cols):
        pivot = None
        for r in range(row, n_rows):
            if m[r][col]:
                pivot = r
                break
        if pivot is None:
            continue
        m[row], m[pivot] = m[pivot], m[row]
        for r in range(row + 1, n_rows):
            for c in range(col + 1, n_cols):
                m[r][c] = (m[r][c] * m[row][col] - m[r][col] * m[row][c]) \
                    // prev
            m[r][col] = 0
        prev = m[row][col]
        rank += 1
        row += 1
        if row == n_rows:
            break
    return rank


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def kernel_basis(rows):
    """Basis of the kernel in source coordinates.

    Rows are the images of the source basis vectors, so a kernel vector
    is a coefficient vector c with sum_i c_i * rows[i] = 0; the basis is
    read off an augmented elimination.
    """
    if not rows:
        return []
    n_src = len(rows)
    n_dst = len(rows[0]) if rows[0] else 0
    # augment source identity and eliminate on the image part
    aug = [list(rows[i]) + [Fraction(1 if j == i else 0)
                            for j in range(n_src)]
           for i in range(n_src)]
    pivot_row = 0
    for col in range(n_dst):
        sel = None
        for r in range(pivot_row, n_src):
            if aug[r][col]:
                sel = r
                break
        if sel is None:
            continue
        aug[pivot_row], aug[sel] = aug[sel], aug[pivot_row]
        pv = aug[pivot_row][col]
        for r in range(n_src):
            if r != pivot_row and aug[r][col]:
                f = aug[r][col] / pv
                for c in range(col, n_dst + n_src):
                    aug[r][c] -= f * aug[pivot_row][c]
        pivot_row += 1
    kernel = []
    for r in range(pivot_row, n_src):
        if all(not aug[r][c] for c in range(n_dst)):
            kernel.append(aug[r][n_dst:])
    return kernel


def solve_in_span(generators, target):
    """Coefficients expressing target in the span, or None."""
    if not generators:
        return None if any(target) else []
    n = len(target)
    # gaussian solve of  sum c_i g_i = target  on the transposed system
    cols = len(generators)
    mat = [[generators[i][j] for i in range(cols)] for j in range(n)]
    rhs = list(target)
    piv_cols = []
    row = 0
    for col in range(cols):
        sel = None
        for r in range(row, n):
            if mat[r][col]:
                sel = r
                break
        if sel is None:
            continue
        mat[row], mat[sel] = mat[sel], mat[row]
        rhs[row], rhs[sel] = rhs[sel], rhs[row]
        pv = mat[row][col]
        for r in range(n):
            if r != row and mat[r][col]:
                f = mat[r][col] / pv
                for c in range(cols):
                    mat[r][c] -= f * mat[row][c]
                rhs[r] -= f * rhs[row]
        piv_cols.append((row, col))
        row += 1
    coeffs = [Fraction(0)] * cols
    for r, c in piv_cols:
        coeffs[c] = rhs[r] / mat[r][c]
    for r in range(n):
        if all(not mat[r][c] for c in range(cols)) and rhs[r]:
            return None
    # verify (guards against free-variable bookkeeping slips)
    for j in range(n):
        total = sum(coeffs[i] * generators[i][j] for i in range(cols))
        if total != target[j]:
            return None
    return coeffs


# ---------------------------------------------------------------------------
# complex builders


def build_koszul_complex(dim, max_weight) -> WeightedComplex:
    """The superalgebra complex under the contraction differential.

    Complete in every degree at each weight, so no boundary flags.
    """
    pair = AlgebraPair(dim)
    kv = koszul_bimodule(dim, pair)
    basis = {}
    for w in range(max_weight + 1):
        for mono in P.koszul_monomials_of_weight(dim, w):
            basis.setdefault((w, mono.degree), []).append(mono)
    for key in basis:
        basis[key].sort(key=lambda m: m.sort_key())

    def diff(mono):
        return kv.m_value(0, 0, (), mono, ())

    return WeightedComplex(
        name="koszul",
        basis=basis,
        differential=diff,
        degree_range=(-dim, 0),
        weights=range(max_weight + 1),
        complete_below=True,
    )


def build_bar_complex(dim, max_weight, max_length) -> WeightedComplex:
    """The unreduced bar complex of the scalar module.

    Words of length q sit in degree -q; homology at degree -q needs the
    incoming differential from length q + 1, so the most negative built
    degree is flagged unreliable.
    """
    pair = AlgebraPair(dim)
    aug = augmentation_bimodule(dim, pair)
    bar = bar_bimodule(pair.poly, aug)
    a_by_w = {w: P.sym_monomials_of_weight(dim, w)
              for w in range(max_weight + 1)}
    words = bar_words(a_by_w, [SCALAR_ONE], max_weight, max_length)
    basis = {}
    for word in words:
        basis.setdefault((word.weight, word.degree), []).append(word)
    for key in basis:
        basis[key].sort(key=lambda m: m.sort_key())

    def diff(word):
        return bar.m_value(0, 0, (), word, ())

    return WeightedComplex(
        name="bar",
        basis=basis,
        differential=diff,
        degree_range=(-max_length, 0),
        weights=range(max_weight + 1),
        unreliable_degrees={-max_length},
    )


def build_point_complex(max_weight, min_degree=-6) -> WeightedComplex:
    """The scalar module as a complex concentrated in weight 0, degree 0."""
    basis = {(0, 0): [SCALAR_ONE]}

    def diff(mono):
        return GradedElement.zero("scalar")

    return WeightedComplex(
        name="point",
        basis=basis,
        differential=diff,
        degree_range=(min_degree, 0),
        weights=range(max_weight + 1),
        complete_below=True,
    )


# ---------------------------------------------------------------------------
# induced maps on homology


class ChainMapError(ValueError):
    """The supplied value map does not commute with the differentials."""


def chain_map_matrix(value_map, src: WeightedComplex, dst: WeightedComplex,
                     weight, degree):
    """Matrix of a degree-0 value-level map on one block."""
    src_basis = src.basis_at(weight, degree)
    dst_basis = dst.basis_at(weight, degree)
    index = {m: j for j, m in enumerate(dst_basis)}
    rows = []
    for mono in src_basis:
        image = value_map(mono)
        row = [Fraction(0)] * len(dst_basis)
        for tm, coeff in image.items():
            if tm.weight != weight or tm.degree != degree:
                raise ChainMapError(
                    f"value map moved {mono} out of block ({weight},{degree})"
                )
            row[index[tm]] = coeff
        rows.append(row)
    return rows


def verify_chain_map(value_map, src: WeightedComplex, dst: WeightedComplex,
                     weight, degree):
    """Check commutation with the differentials out of one block."""

    def accumulate(into, el, coeff):
        for tm, c in el.items():
            new = into.get(tm, 0) + c * coeff
            if new:
                into[tm] = new
            else:
                into.pop(tm, None)

    for mono in src.basis_at(weight, degree):
        map_after_d = {}
        for tm, coeff in src._diff(mono).items():
            accumulate(map_after_d, value_map(tm), coeff)
        d_after_map = {}
        for tm, coeff in value_map(mono).items():
            accumulate(d_after_map, dst._diff(tm), coeff)
        if map_after_d != d_after_map:
            raise ChainMapError(
                f"map fails to commute with differentials on {mono} "
                f"at ({weight},{degree})"
            )


def induced_homology_map(value_map, src: WeightedComplex,
                         dst: WeightedComplex, weight, degree):
    """Matrix of the induced map between homology blocks.

    Rows index a basis of the source homology, columns a basis of the
    target homology; raises if the map is not a chain map on the block.
    """
    for q in (degree - 1, degree):
        if src.basis_at(weight, q) or dst.basis_at(weight, q):
            if q >= src.degree_range[0] and q + 1 <= src.degree_range[1]:
                verify_chain_map(value_map, src, dst, weight, q)

    src_cycles = _cycle_basis(src, weight, degree)
    dst_cycles = _cycle_basis(dst, weight, degree)
    src_h = _homology_coordinates(src, weight, degree, src_cycles)
    dst_h = _homology_coordinates(dst, weight, degree, dst_cycles)

    f = chain_map_matrix(value_map, src, dst, weight, degree)
    matrix = []
    for rep in src_h["representatives"]:
        image = _vector_through_matrix(rep, f)
        coords = dst_h["coordinates"](image)
        if coords is None:
            raise ChainMapError(
                f"image of a cycle is not a cycle at ({weight},{degree})"
            )
        matrix.append(coords)
    return matrix


def _vector_through_matrix(vec, rows):
    if not rows:
        return []
    cols = len(rows[0])
    out = [Fraction(0)] * cols
    for i, c in enumerate(vec):
        if c:
            for j in range(cols):
                if rows[i][j]:
                    out[j] += c * rows[i][j]
    return out


def _cycle_basis(cx: WeightedComplex, weight, degree):
    n = len(cx.basis_at(weight, degree))
    if n == 0:
        return []
    return kernel_basis(cx.matrix(weight, degree))


def _homology_coordinates(cx: WeightedComplex, weight, degree, cycles):
    """Representatives of a homology basis plus a coordinate function."""
    n = len(cx.basis_at(weight, degree))
    boundaries = []
    if degree - 1 >= cx.degree_range[0]:
        prev = cx.matrix(weight, degree - 1)
        for row in prev:
            if any(row):
                boundaries.append(list(row))
    # extend the boundary span to the cycle span; the extension vectors
    # represent a homology basis
    span = [list(b) for b in boundaries]
    representatives = []

    def in_span(vec):
        return solve_in_span(span, vec) is not None if span else not any(vec)

    for cyc in cycles:
        if not in_span(cyc):
            span.append(list(cyc))
            representatives.append(list(cyc))

    def coordinates(vec):
        """Coordinates of a cycle's class in the representative basis."""
        gens = boundaries + representatives
        coeffs = solve_in_span(gens, list(vec)) if gens else (
            [] if not any(vec) else None)
        if coeffs is None:
            return None
        return coeffs[len(boundaries):]

    return {"representatives": representatives, "coordinates": coordinates}


def quasi_iso_verdict(value_map, src: WeightedComplex, dst: WeightedComplex,
                      max_weight, degrees):
    """True iff the induced map is an isomorphism on every block.

    Returns (verdict, report) where the report lists each block with its
    homology dimensions and a status string; the first failing block
    carries the witness.
    """
    report = []
    verdict = True
    for w in range(max_weight + 1):
        for q in degrees:
            if q in src.unreliable_degrees or q in dst.unreliable_degrees:
                continue
            hs = src.betti(w, q)
            hd = dst.betti(w, q)
            status = "ok"
            if hs != hd:
                status = f"dimension mismatch {hs} vs {hd}"
                verdict = False
            elif hs > 0:
                mat = induced_homology_map(value_map, src, dst, w, q)
                if matrix_rank(mat) != hs:
                    status = "induced map not invertible"
                    verdict = False
            report.append(((w, q), hs, hd, status))
    return verdict, report
