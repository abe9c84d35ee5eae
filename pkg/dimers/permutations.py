"""
Permutations

Lehmer and inversion codes, the alternating and 132-avoiding classes,
the number triangles that count them, and the bijections between those
classes and mixed dimer covers of straight and zigzag snakes.

Permutations are tuples in one-line notation over 1..n.
"""

import itertools
import logging
from dataclasses import dataclass

import numpy as np
from django.utils.translation import gettext_lazy as _

from .conf import get_setting
from .covers import complete_cover, validate_cover
from .exceptions import InconsistentCover, InvalidCode, InvalidPermutation
from .snake import standard_labeling, straight_snake, zigzag_snake
from .transfer import LaurentPoly, q_power, zigzag_edge_names

logger = logging.getLogger(__name__)

ORDERS = ('left-middle', 'right-middle', 'bruhat', 'left-weak')
TRIANGLES = ('entringer', 'ballot', 'seidel')


def check_permutation(sigma):
    sigma = tuple(int(x) for x in sigma)
    if sorted(sigma) != list(range(1, len(sigma) + 1)):
        raise InvalidPermutation(
            _("%(sigma)s is not a permutation of 1..%(n)d."), sigma=format_permutation(sigma), n=len(sigma),
        )
    return sigma


def parse_permutation(text):
    """Digit strings for n <= 9, comma-separated otherwise."""
    text = str(text).strip()
    parts = text.split(',') if ',' in text else list(text)
    try:
        return check_permutation(int(p) for p in parts if p.strip())
    except ValueError:
        raise InvalidPermutation(_("Cannot read permutation %(text)r."), text=text)


def format_permutation(sigma):
    if len(sigma) <= 9:
        return ''.join(str(x) for x in sigma)
    return ','.join(str(x) for x in sigma)


def identity(n):
    return tuple(range(1, n + 1))


def longest(n):
    return tuple(range(n, 0, -1))


def inverse(sigma):
    inv = [0] * len(sigma)
    for i, value in enumerate(sigma, start=1):
        inv[value - 1] = i
    return tuple(inv)


def compose(sigma, tau):
    """(sigma tau)(i) = sigma(tau(i))."""
    return tuple(sigma[t - 1] for t in tau)


def inversion_set(sigma):
    n = len(sigma)
    return frozenset((i + 1, j + 1) for i in range(n) for j in range(i + 1, n) if sigma[i] > sigma[j])


def inversions(sigma):
    return len(inversion_set(sigma))


# codes

def lehmer_encode(sigma):
    sigma = check_permutation(sigma)
    n = len(sigma)
    return tuple(sum(1 for j in range(i + 1, n) if sigma[j] < sigma[i]) for i in range(n))


def _check_code(code, bound):
    code = tuple(int(x) for x in code)
    for i, value in enumerate(code, start=1):
        if not 0 <= value <= bound(i, len(code)):
            raise InvalidCode(
                _("Entry %(i)d of code %(code)s is out of range."), i=i, code=list(code),
            )
    return code


def lehmer_decode(code):
    code = _check_code(code, lambda i, n: n - i)
    remaining = list(range(1, len(code) + 1))
    return tuple(remaining.pop(c) for c in code)


def inversion_encode(sigma):
    sigma = check_permutation(sigma)
    position = inverse(sigma)
    return tuple(sum(1 for j in range(1, i) if position[j - 1] > position[i - 1])
                 for i in range(1, len(sigma) + 1))


def inversion_decode(code):
    code = _check_code(code, lambda i, n: i - 1)
    word = []
    for i, x in enumerate(code, start=1):
        word.insert(len(word) - x, i)
    return tuple(word)


def w0_conjugate_inverse(sigma):
    """w0 sigma^-1 w0; its inversion code is the reversed Lehmer code of sigma."""
    sigma = check_permutation(sigma)
    n = len(sigma)
    inv = inverse(sigma)
    return tuple(n + 1 - inv[n - i] for i in range(1, n + 1))


# classes

def contains_pattern(sigma, pattern):
    """Direct scan over all index subsets of the pattern's length."""
    k = len(pattern)
    for idx in itertools.combinations(range(len(sigma)), k):
        values = [sigma[i] for i in idx]
        ranks = tuple(sorted(values).index(v) + 1 for v in values)
        if ranks == tuple(pattern):
            return True
    return False


def is_alternating(sigma):
    return all((sigma[i] > sigma[i + 1]) == (i % 2 == 0) for i in range(len(sigma) - 1))


def is_reverse_alternating(sigma):
    return all((sigma[i] < sigma[i + 1]) == (i % 2 == 0) for i in range(len(sigma) - 1))


@dataclass(frozen=True)
class Classification:
    alternating: bool
    reverse_alternating: bool
    avoids_132: bool
    avoids_213: bool

    def as_dict(self):
        return {
            'alternating': self.alternating,
            'reverse_alternating': self.reverse_alternating,
            'avoids_132': self.avoids_132,
            'avoids_213': self.avoids_213,
        }


def classify(sigma):
    sigma = check_permutation(sigma)
    return Classification(
        alternating=is_alternating(sigma),
        reverse_alternating=is_reverse_alternating(sigma),
        avoids_132=not contains_pattern(sigma, (1, 3, 2)),
        avoids_213=not contains_pattern(sigma, (2, 1, 3)),
    )


def _check_size(n):
    limit = get_setting('CLASS_ENUMERATION_LIMIT')
    if n < 1 or n > limit:
        raise InvalidPermutation(_("Class enumeration supports 1 <= n <= %(limit)d."), limit=limit)


def _codes(n, allowed):
    """Depth-first Lehmer codes; allowed(prefix, value) prunes."""
    def extend(prefix):
        i = len(prefix) + 1
        if i > n:
            yield tuple(prefix)
            return
        for value in range(n - i + 1):
            if allowed(prefix, value):
                prefix.append(value)
                yield from extend(prefix)
                prefix.pop()
    return extend([])


def alternating_permutations(n, first=None):
    """sigma(1) > sigma(2) < sigma(3) > ..., i.e. L1 > L2 <= L3 > L4 <= ..."""
    _check_size(n)

    def allowed(prefix, value):
        i = len(prefix) + 1
        if i == 1:
            return first is None or value == first - 1
        if i % 2 == 0:
            return prefix[-1] > value
        return prefix[-1] <= value

    return [lehmer_decode(code) for code in _codes(n, allowed)]


def avoiders(n, pattern=(1, 3, 2), first=None):
    """
    Permutations avoiding a pattern of length 3.

    132-avoiders are exactly the permutations with weakly decreasing
    Lehmer code, which prunes the search; other patterns scan S_n.
    """
    _check_size(n)
    pattern = tuple(pattern)
    if pattern == (1, 3, 2):
        def allowed(prefix, value):
            if not prefix:
                return first is None or value == first - 1
            return value <= prefix[-1]
        return [lehmer_decode(code) for code in _codes(n, allowed)]
    return [
        sigma for sigma in itertools.permutations(range(1, n + 1))
        if (first is None or sigma[0] == first) and not contains_pattern(sigma, pattern)
    ]


def inversion_genfun(perms, name='q'):
    total = LaurentPoly()
    for sigma in perms:
        total = total + q_power(inversions(sigma), name)
    return total


# triangles

@dataclass(frozen=True)
class NumberTriangle:
    kind: str
    rows: tuple

    def row(self, n):
        return self.rows[n - 1]

    def __str__(self):
        return "\n".join(" ".join(str(x) for x in row) for row in self.rows)


def triangle(kind, n_max):
    """Entringer E(n,k), ballot C(n,k) or Seidel g(n,k) rows 1..n_max."""
    if kind not in TRIANGLES:
        raise InvalidCode(_("Unknown triangle %(kind)r."), kind=kind)
    if n_max < 1:
        raise InvalidCode(_("A triangle needs at least one row."))
    rows = [(1,)]
    for n in range(2, n_max + 1):
        prev = rows[-1]
        if kind == 'entringer':
            row = tuple(sum(prev[i - 1] for i in range(n - k + 1, n)) for k in range(1, n + 1))
        elif kind == 'ballot':
            row = tuple(sum(prev[i - 1] for i in range(1, min(k, n - 1) + 1)) for k in range(1, n + 1))
        else:
            half = n // 2
            row = tuple(
                sum(prev[i - 1] for i in range(max(half - k + 1, 1), len(prev) + 1))
                for k in range(1, (n + 1) // 2 + 1)
            )
        rows.append(row)
    return NumberTriangle(kind, tuple(rows))


def euler_number(n):
    """E_n = E(n+1, n+1)."""
    return triangle('entringer', n + 1).row(n + 1)[-1]


def catalan_number(n):
    return triangle('ballot', n + 1).row(n + 1)[-1]


def boustrophedon(seq):
    """
    The ends of the rows of the boustrophedon triangle.

    Row k starts with a_k and each entry adds the previous row read
    backwards. Row k ends in b_(k-1), so the input is padded with one zero
    to produce as many terms as it has: (1,0,0,0,0) gives (1,1,2,5,16).
    """
    seq = [int(x) for x in seq]
    if not seq:
        raise InvalidCode(_("The boustrophedon transform needs a nonempty sequence."))
    padded = seq + [0]
    prev = [padded[0]]
    ends = []
    for k in range(1, len(padded)):
        row = [padded[k]]
        for j in range(1, k + 1):
            row.append(row[-1] + prev[k - j])
        ends.append(row[-1])
        prev = row
    return tuple(ends)


# orders

def _rank_matrix(sigma):
    n = len(sigma)
    perm = np.zeros((n, n), dtype=np.int64)
    perm[np.arange(n), np.array(sigma) - 1] = 1
    # r[i, k] = #{a <= i : sigma(a) >= k}
    return np.cumsum(perm, axis=0)[:, ::-1].cumsum(axis=1)[:, ::-1]


def order_leq(sigma, tau, order='left-middle'):
    sigma = check_permutation(sigma)
    tau = check_permutation(tau)
    if len(sigma) != len(tau):
        raise InvalidPermutation(_("Permutations of different sizes are not comparable."))
    if order == 'left-middle':
        return all(a <= b for a, b in zip(lehmer_encode(sigma), lehmer_encode(tau)))
    if order == 'right-middle':
        return all(a <= b for a, b in zip(inversion_encode(sigma), inversion_encode(tau)))
    if order == 'bruhat':
        return bool(np.all(_rank_matrix(sigma) <= _rank_matrix(tau)))
    if order == 'left-weak':
        return inversion_set(sigma) <= inversion_set(tau)
    raise InvalidPermutation(_("Unknown order %(order)r."), order=order)


def middle_covers(perms):
    """Pairs (sigma, tau) where the Lehmer code of tau adds 1 to one entry."""
    by_code = {lehmer_encode(s): s for s in perms}
    pairs = set()
    for code, sigma in by_code.items():
        for i in range(len(code)):
            bumped = code[:i] + (code[i] + 1,) + code[i + 1:]
            if bumped in by_code:
                pairs.add((sigma, by_code[bumped]))
    return pairs


# cover bijections

def _vertical(x):
    return ((x, 0), (x, 1))


def alt_to_cover(sigma):
    """
    Alternating sigma in S_n to a cover of the straight snake with n-2 tiles.

    The vertical edges, read right to left, carry l1 = L1,
    l(2i) = L(2i-1) - L(2i) - 1 and l(2i+1) = L(2i+1) - L(2i). The
    horizontal edges follow from the degree equations.
    """
    sigma = check_permutation(sigma)
    n = len(sigma)
    if n < 3 or not is_alternating(sigma):
        raise InvalidPermutation(
            _("%(sigma)s is not an alternating permutation of size at least 3."),
            sigma=format_permutation(sigma),
        )
    code = lehmer_encode(sigma)
    ell = [code[0]]
    for j in range(2, n):
        if j % 2 == 0:
            ell.append(code[j - 2] - code[j - 1] - 1)
        else:
            ell.append(code[j - 1] - code[j - 2])
    graph = straight_snake(n - 2)
    known = {_vertical(n - 1 - j): value for j, value in enumerate(ell, start=1)}
    return complete_cover(graph, standard_labeling(graph), known)


def cover_to_alt(cover, graph):
    if not graph.is_straight:
        raise InconsistentCover(_("Alternating permutations live on straight snakes."))
    if not validate_cover(graph, standard_labeling(graph), cover).valid:
        raise InconsistentCover(_("The cover does not fit the standard labeling."))
    n = graph.n + 2
    ell = [cover[_vertical(n - 1 - j)] for j in range(1, n)]
    code = []
    running = 0
    for i, value in enumerate(ell, start=1):
        running += value if i % 2 else -value
        code.append(running - i // 2)
    code.append(0)
    try:
        sigma = lehmer_decode(code)
    except InvalidCode:
        raise InconsistentCover(_("The vertical multiplicities give an out-of-range Lehmer code."))
    if not is_alternating(sigma):
        raise InconsistentCover(_("The cover does not decode to an alternating permutation."))
    return sigma


def _c_edges(graph):
    if graph.n == 1:
        # one square: the left edge counts twists up from the bottom cover
        return {1: graph.tiles[0].left}
    names = zigzag_edge_names(graph)
    return {idx: edge for edge, (letter, idx) in names.items() if letter == 'c'}


def cat_to_cover(sigma):
    """
    132-avoiding sigma in S_n to a cover of the zigzag snake with n-1 tiles.

    With N = n-1 tiles, edge c(N+1-i) carries L_i; in particular the final
    edge c_N carries L1 = sigma(1) - 1. A single square carries L1 on its
    left edge.
    """
    sigma = check_permutation(sigma)
    n = len(sigma)
    if n < 2 or contains_pattern(sigma, (1, 3, 2)):
        raise InvalidPermutation(
            _("%(sigma)s is not a 132-avoiding permutation of size at least 2."),
            sigma=format_permutation(sigma),
        )
    code = lehmer_encode(sigma)
    graph = zigzag_snake(n - 1)
    c = _c_edges(graph)
    known = {c[n - i]: code[i - 1] for i in range(1, n)}
    return complete_cover(graph, standard_labeling(graph), known)


def cover_to_cat(cover, graph):
    if not graph.is_zigzag:
        raise InconsistentCover(_("132-avoiding permutations live on zigzag snakes."))
    if not validate_cover(graph, standard_labeling(graph), cover).valid:
        raise InconsistentCover(_("The cover does not fit the standard labeling."))
    n = graph.n + 1
    c = _c_edges(graph)
    code = tuple(cover[c[n - i]] for i in range(1, n)) + (0,)
    try:
        sigma = lehmer_decode(code)
    except InvalidCode:
        raise InconsistentCover(_("The final edges give an out-of-range Lehmer code."))
    if contains_pattern(sigma, (1, 3, 2)) or cat_to_cover(sigma) != cover:
        raise InconsistentCover(_("The cover does not decode to a 132-avoiding permutation."))
    return sigma
