"""
Transfer Matrices

Exact matrix-product counting of mixed dimer covers on straight and zigzag
snakes. Entries are sparse multivariate Laurent polynomials with integer
coefficients; plain integers are constant polynomials.
"""

import logging
import re
from fractions import Fraction
from functools import reduce

from django.utils.translation import gettext_lazy as _

from .exceptions import DimensionMismatch, UnsupportedLabeling, UnsupportedShape
from .snake import canonical_edges

logger = logging.getLogger(__name__)

_NAME = re.compile(r'^([A-Za-z_]*)(\d*)$')


def name_key(name):
    """Sort a0 < a2 < a10 < b1."""
    match = _NAME.match(name)
    if not match:
        return (name, -1)
    prefix, digits = match.groups()
    return (prefix, int(digits) if digits else -1)


def _monomial(pairs):
    merged = {}
    for name, exp in pairs:
        merged[name] = merged.get(name, 0) + exp
    return tuple(sorted(((n, e) for n, e in merged.items() if e), key=lambda p: name_key(p[0])))


def _mul_monomials(m1, m2):
    return _monomial(m1 + m2)


class LaurentPoly:
    """
    Sparse Laurent polynomial: monomial -> integer coefficient.

    A monomial is a tuple of (name, exponent) pairs sorted by name with
    no zero exponents; the empty tuple is the constant monomial.
    """

    __slots__ = ('terms', '_hash')

    def __init__(self, terms=None):
        clean = {}
        for mono, coeff in (terms or {}).items():
            if not coeff:
                continue
            mono = _monomial(mono)
            clean[mono] = clean.get(mono, 0) + coeff
        self.terms = {m: c for m, c in clean.items() if c}
        self._hash = None

    @classmethod
    def constant(cls, value):
        return cls({(): int(value)})

    @classmethod
    def var(cls, name, exp=1):
        return cls({((name, exp),): 1})

    @classmethod
    def promote(cls, item):
        if isinstance(item, LaurentPoly):
            return item
        if isinstance(item, bool) or not isinstance(item, int):
            raise TypeError(f"Cannot use {item!r} as a polynomial")
        return cls.constant(item)

    @classmethod
    def from_univariate(cls, name, coefficients, low=0):
        """coefficients[k] is the coefficient of name^(low + k)."""
        return cls({((name, low + k),): c for k, c in enumerate(coefficients)})

    @classmethod
    def from_json(cls, data):
        return cls({tuple((n, int(e)) for n, e in mono): int(c) for mono, c in data})

    def to_json(self):
        return [[[list(p) for p in mono], coeff] for mono, coeff in self._sorted_terms()]

    # ring operations

    def __add__(self, other):
        other = self.promote(other)
        terms = dict(self.terms)
        for mono, coeff in other.terms.items():
            terms[mono] = terms.get(mono, 0) + coeff
        return LaurentPoly(terms)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self.promote(other))

    def __rsub__(self, other):
        return self.promote(other) - self

    def __mul__(self, other):
        other = self.promote(other)
        terms = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                mono = _mul_monomials(m1, m2)
                terms[mono] = terms.get(mono, 0) + c1 * c2
        return LaurentPoly(terms)

    __rmul__ = __mul__

    def __pow__(self, exp):
        if exp < 0:
            return self.inverse() ** (-exp)
        result = LaurentPoly.constant(1)
        base = self
        while exp:
            if exp & 1:
                result = result * base
            base = base * base
            exp >>= 1
        return result

    def inverse(self):
        """Only units (a single monomial with coefficient +-1) are invertible."""
        if len(self.terms) != 1:
            raise ValueError(f"{self} is not a unit")
        (mono, coeff), = self.terms.items()
        if coeff not in (1, -1):
            raise ValueError(f"{self} is not a unit")
        return LaurentPoly({tuple((n, -e) for n, e in mono): coeff})

    def __eq__(self, other):
        try:
            other = self.promote(other)
        except TypeError:
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    # inspection

    @property
    def variables(self):
        names = {n for mono in self.terms for n, _e in mono}
        return tuple(sorted(names, key=name_key))

    def is_constant(self):
        return all(mono == () for mono in self.terms)

    def constant_value(self):
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return self.terms.get((), 0)

    def degree_range(self, name):
        exps = [dict(mono).get(name, 0) for mono in self.terms]
        if not exps:
            return (0, 0)
        return (min(exps), max(exps))

    def coefficients(self, name):
        """(lowest exponent, dense coefficient list) of a univariate polynomial."""
        extra = set(self.variables) - {name}
        if extra:
            raise ValueError(f"{self} is not univariate in {name}")
        low, high = self.degree_range(name)
        coeffs = [0] * (high - low + 1)
        for mono, coeff in self.terms.items():
            coeffs[dict(mono).get(name, 0) - low] += coeff
        return low, coeffs

    def substitute(self, values):
        """
        Replace variables by integers or polynomials.

        Returns a LaurentPoly while variables remain, otherwise an exact
        number (an int, or a Fraction when negative powers of an integer
        leave a denominator).
        """
        scalar_total = Fraction(0)
        poly_total = ZERO
        for mono, coeff in self.terms.items():
            scalar = Fraction(coeff)
            poly = ONE
            for name, exp in mono:
                value = values.get(name)
                if value is None:
                    poly = poly * LaurentPoly.var(name, exp)
                elif isinstance(value, LaurentPoly):
                    poly = poly * value ** exp
                else:
                    scalar *= Fraction(value) ** exp
            if poly.is_constant():
                scalar_total += scalar * poly.constant_value()
            elif scalar.denominator != 1:
                raise ValueError(f"Substitution into {self} leaves a fractional coefficient")
            else:
                poly_total = poly_total + poly * int(scalar)
        if poly_total:
            if scalar_total.denominator != 1:
                raise ValueError(f"Substitution into {self} leaves a fractional coefficient")
            return poly_total + int(scalar_total)
        return int(scalar_total) if scalar_total.denominator == 1 else scalar_total

    def specialize(self, **values):
        return self.substitute(values)

    # text form

    def _sorted_terms(self):
        # total degree, then larger exponents of earlier variables first
        names = self.variables

        def key(item):
            exps = dict(item[0])
            return (sum(exps.values()), tuple(-exps.get(n, 0) for n in names))
        return sorted(self.terms.items(), key=key)

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for mono, coeff in self._sorted_terms():
            factors = [n if e == 1 else f"{n}^{e}" for n, e in mono]
            body = "*".join(factors)
            magnitude = abs(coeff)
            if not body:
                text = str(magnitude)
            elif magnitude == 1:
                text = body
            else:
                text = f"{magnitude}*{body}"
            sign = "-" if coeff < 0 else "+"
            parts.append((sign, text))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, text in parts[1:]:
            out += f" {sign} {text}"
        return out

    def __repr__(self):
        return f"LaurentPoly({self})"


ONE = LaurentPoly.constant(1)
ZERO = LaurentPoly()


def q_power(exp, name='q'):
    return LaurentPoly.var(name, exp) if exp else ONE


class LaurentMatrix:
    """A dense rows x cols matrix of LaurentPoly entries (indices are 1-based in ``entry``)."""

    __slots__ = ('rows', 'cols', 'entries')

    def __init__(self, entries):
        entries = tuple(tuple(LaurentPoly.promote(x) for x in row) for row in entries)
        if not entries or not entries[0]:
            raise DimensionMismatch(_("A matrix needs at least one row and one column."))
        width = len(entries[0])
        if any(len(row) != width for row in entries):
            raise DimensionMismatch(_("Matrix rows have different lengths."))
        self.rows = len(entries)
        self.cols = width
        self.entries = entries

    @classmethod
    def build(cls, rows, cols, fn):
        return cls([[fn(i, j) for j in range(1, cols + 1)] for i in range(1, rows + 1)])

    @classmethod
    def identity(cls, size):
        return cls.build(size, size, lambda i, j: 1 if i == j else 0)

    @property
    def shape(self):
        return (self.rows, self.cols)

    def entry(self, i, j):
        return self.entries[i - 1][j - 1]

    def row(self, i):
        return self.entries[i - 1]

    def __matmul__(self, other):
        if self.cols != other.rows:
            raise DimensionMismatch(
                _("Cannot multiply %(left)s by %(right)s."),
                left=f"{self.rows}x{self.cols}", right=f"{other.rows}x{other.cols}",
            )
        out = []
        for i in range(self.rows):
            row = []
            for j in range(other.cols):
                acc = ZERO
                for k in range(self.cols):
                    a = self.entries[i][k]
                    if not a:
                        continue
                    b = other.entries[k][j]
                    if b:
                        acc = acc + a * b
                row.append(acc)
            out.append(row)
        return LaurentMatrix(out)

    def __eq__(self, other):
        if not isinstance(other, LaurentMatrix):
            try:
                other = LaurentMatrix(other)
            except (TypeError, DimensionMismatch):
                return NotImplemented
        return self.entries == other.entries

    __hash__ = None

    def map(self, fn):
        return LaurentMatrix([[fn(x) for x in row] for row in self.entries])

    def substitute(self, values):
        def collapse(poly):
            result = poly.substitute(values)
            if isinstance(result, Fraction):
                raise ValueError(f"{poly} does not specialize to an integer")
            return LaurentPoly.promote(result)
        return self.map(collapse)

    def specialize_all(self, value=1):
        """Set every variable to ``value``; the entries must become integers."""
        names = {n for row in self.entries for x in row for n in x.variables}
        return self.substitute({n: value for n in names})

    def is_integer(self):
        return all(x.is_constant() for row in self.entries for x in row)

    def to_int_rows(self):
        return [[x.constant_value() for x in row] for row in self.entries]

    def to_json(self):
        if self.is_integer():
            return self.to_int_rows()
        return [[str(x) for x in row] for row in self.entries]

    def __str__(self):
        return "[" + ", ".join("[" + ", ".join(str(x) for x in row) + "]" for row in self.entries) + "]"

    def __repr__(self):
        return f"LaurentMatrix({self})"


def matrix_product(factors):
    return reduce(lambda x, y: x @ y, factors)


# structural and weighted factors

def structural_matrix(kind, a, b):
    """R_{a,b}, L_{a,b} = W_a R_{a,b}, or the anti-diagonal W_a (needs a == b)."""
    if a < 0 or b < 0:
        raise DimensionMismatch(_("Matrix dimensions must be nonnegative."))
    kind = kind.upper()
    if kind == 'R':
        return LaurentMatrix.build(a + 1, b + 1, lambda i, j: 1 if i + j <= b + 2 else 0)
    if kind == 'W':
        if a != b:
            raise DimensionMismatch(_("W is square: got a=%(a)d, b=%(b)d."), a=a, b=b)
        return LaurentMatrix.build(a + 1, a + 1, lambda i, j: 1 if i + j == a + 2 else 0)
    if kind == 'L':
        return LaurentMatrix.build(a + 1, b + 1, lambda i, j: 1 if (a + 2 - i) + j <= b + 2 else 0)
    raise DimensionMismatch(_("Unknown structural matrix %(kind)r."), kind=kind)


def weighted_factor(kind, a, b, t):
    """U_a(t), T_{a,b}(t) or W_a(t) = t^a W_a; U and W need a == b."""
    t = LaurentPoly.promote(t)
    kind = kind.upper()
    if kind in ('U', 'WT', 'W') and a != b:
        raise DimensionMismatch(_("%(kind)s is square: got a=%(a)d, b=%(b)d."), kind=kind, a=a, b=b)
    if kind == 'U':
        n = a
        return LaurentMatrix.build(n + 1, n + 1, lambda i, j: t ** (n + 2 - i - j) if i + j <= n + 2 else 0)
    if kind == 'T':
        return LaurentMatrix.build(a + 1, b + 1, lambda i, j: t ** (i - 1) if i == j else 0)
    if kind in ('WT', 'W'):
        tk = t ** a
        return LaurentMatrix.build(a + 1, a + 1, lambda i, j: tk if i + j == a + 2 else 0)
    raise DimensionMismatch(_("Unknown weighted factor %(kind)r."), kind=kind)


def _check_sequence(m):
    m = tuple(int(x) for x in m)
    if not m or any(x < 0 for x in m):
        raise UnsupportedLabeling(_("Label sequences must be nonempty and nonnegative."))
    return m


def straight_product(m):
    m = _check_sequence(m)
    factors = [structural_matrix('R', m[0], m[0])]
    factors.extend(structural_matrix('R', m[k - 1], m[k]) for k in range(1, len(m)))
    return matrix_product(factors)


def zigzag_product(m):
    m = _check_sequence(m)
    factors = [structural_matrix('R', m[0], m[0])]
    for k in range(1, len(m)):
        kind = 'R' if k == 1 else 'L'
        factors.append(structural_matrix(kind, m[k - 1], m[k]))
    return matrix_product(factors)


def symbolic_weight(letter, index):
    return LaurentPoly.var(f"{letter}{index}")


def weighted_straight_product(m, weight=symbolic_weight):
    """U_{m0}(a0) prod_k T_{m(k-1),m(k)}(b_k c_k) U_{m_k}(a_k)."""
    m = _check_sequence(m)
    factors = [weighted_factor('U', m[0], m[0], weight('a', 0))]
    for k in range(1, len(m)):
        factors.append(weighted_factor('T', m[k - 1], m[k], weight('b', k) * weight('c', k)))
        factors.append(weighted_factor('U', m[k], m[k], weight('a', k)))
    return matrix_product(factors)


def weighted_zigzag_product(m, weight=symbolic_weight):
    """
    U_{m0}(b1) T(a0 c1) U_{m1}(a1) prod_{k>=2} W_{m(k-1)}(b_k) T(b_k^-1 c_k) U_{m_k}(a_k).

    With a single tile the zigzag and straight namings agree, and so do
    the products.
    """
    m = _check_sequence(m)
    if len(m) <= 2:
        return weighted_straight_product(m, weight)
    factors = [
        weighted_factor('U', m[0], m[0], weight('b', 1)),
        weighted_factor('T', m[0], m[1], weight('a', 0) * weight('c', 1)),
        weighted_factor('U', m[1], m[1], weight('a', 1)),
    ]
    for k in range(2, len(m)):
        b = LaurentPoly.promote(weight('b', k))
        factors.append(weighted_factor('WT', m[k - 1], m[k - 1], b))
        factors.append(weighted_factor('T', m[k - 1], m[k], b.inverse() * weight('c', k)))
        factors.append(weighted_factor('U', m[k], m[k], weight('a', k)))
    return matrix_product(factors)


# edge names and weightings

def straight_edge_names(graph):
    """a_i is the i-th vertical edge, b_k and c_k the top and bottom of tile k."""
    names = {}
    for tile in graph.tiles:
        names[tile.left] = ('a', tile.index - 1)
        names[tile.top] = ('b', tile.index)
        names[tile.bottom] = ('c', tile.index)
    names[graph.tiles[-1].right] = ('a', graph.n)
    return names


def zigzag_edge_names(graph):
    """
    a_(k-1) enters tile k and a_k leaves it, b_k is its D0 edge, c_k the rest.

    On the last tile b_n and a_n are the two D0 edges in order.
    """
    if graph.n == 1:
        return straight_edge_names(graph)
    d0 = canonical_edges(graph)
    names = {graph.tiles[0].left: ('a', 0)}
    for tile in graph.tiles[:-1]:
        nxt = graph.tile(tile.index + 1)
        shared = (set(tile.edges) & set(nxt.edges)).pop()
        names[shared] = ('a', tile.index)
        names[d0[tile.index - 1]] = ('b', tile.index)
    last = graph.tiles[-1]
    names[d0[-2]] = ('b', last.index)
    names[d0[-1]] = ('a', last.index)
    for tile in graph.tiles:
        rest = [e for e in tile.edges if e not in names]
        if len(rest) != 1:
            raise UnsupportedShape(graph.word)
        names[rest[0]] = ('c', tile.index)
    return names


def edge_names(graph):
    if graph.is_straight:
        return straight_edge_names(graph)
    if graph.is_zigzag:
        return zigzag_edge_names(graph)
    raise UnsupportedShape(graph.word)


class EdgeWeighting:
    """Edge -> LaurentPoly, defaulting to 1."""

    def __init__(self, weights=None):
        self.weights = {edge: LaurentPoly.promote(w) for edge, w in (weights or {}).items()}

    @classmethod
    def named(cls, graph, weight=symbolic_weight):
        """Weights from the a/b/c edge names of a straight or zigzag graph."""
        return cls({edge: weight(letter, idx) for edge, (letter, idx) in edge_names(graph).items()})

    def __getitem__(self, edge):
        return self.weights.get(edge, ONE)

    def cover_weight(self, cover):
        total = ONE
        for edge, count in cover:
            total = total * self[edge] ** count
        return total


def q_euler_weights(tiles):
    """
    Bottom edges alternate q and q^-1, ending in q^-1 on the last tile, so
    that every face of the straight snake has weight q.
    """
    def weight(letter, index):
        if letter == 'c':
            return q_power(-1 if (tiles - index) % 2 == 0 else 1)
        return ONE
    return weight


def q_catalan_weight(letter, index):
    return q_power(1) if letter == 'c' else ONE


def q_euler_poly(n):
    """sum over alternating sigma in S_n of q^inv(sigma)."""
    if n < 2:
        raise UnsupportedLabeling(_("q-Euler polynomials start at n=2."))
    m = tuple(range(1, n))
    z = weighted_straight_product(m, q_euler_weights(n - 2)).entry(1, 1)
    return z * q_power(n * n // 4)


def q_catalan_poly(n):
    """Carlitz-Riordan q-Catalan: sum over 132-avoiding sigma in S_n of q^inv(sigma)."""
    if n < 1:
        raise UnsupportedLabeling(_("q-Catalan polynomials start at n=1."))
    m = tuple(range(1, n + 1))
    return weighted_zigzag_product(m, q_catalan_weight).entry(1, 1)


def genocchi_labels(n):
    """The first n-2 terms of 1,1,2,2,3,3,... label the straight snake with n-3 tiles."""
    if n < 3:
        raise UnsupportedLabeling(_("Genocchi labelings start at n=3."))
    return tuple(k // 2 + 1 for k in range(n - 2))


def genocchi_number(n):
    return straight_product(genocchi_labels(n)).entry(1, 1).constant_value()


def matrix_count(graph, labeling):
    """|Omega| for a D0-labeling of a straight or zigzag snake, as the (1,1)-entry."""
    if graph.is_straight:
        product = straight_product
    elif graph.is_zigzag:
        product = zigzag_product
    else:
        raise UnsupportedShape(graph.word)
    m = labeling.sequence(graph)
    if m is None:
        raise UnsupportedLabeling(_("The matrix method needs a D0-labeling."))
    logger.debug("matrix count for %r with labels %s", graph.word, m)
    return product(m).entry(1, 1).constant_value()
