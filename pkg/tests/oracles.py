"""Reference computations that share no code with the package.

* partitions are plain tuples of column heights, generated by a simple
  recursion;
* tangent characters come from the deformation-complex formula with one
  independent framing variable per component, written with ``Counter``
  arithmetic and specialised afterwards;
* plane partitions with bounded entries are counted by brute force over
  arrays, and the bounded MacMahon product is expanded with sympy.
"""

from collections import Counter
from functools import lru_cache

import sympy


# ---------------------------------------------------------------------------
# partitions


def partitions(n, largest=None):
    largest = n if largest is None else largest
    if n == 0:
        yield ()
        return
    for k in range(min(n, largest), 0, -1):
        for rest in partitions(n - k, k):
            yield (k,) + rest


def tuples_of_partitions(r, n):
    if r == 1:
        for p in partitions(n):
            yield (p,)
        return
    for k in range(n + 1):
        for p in partitions(k):
            for rest in tuples_of_partitions(r - 1, n - k):
                yield (p,) + rest


def inside(big, small):
    return len(small) <= len(big) and all(s <= b for s, b in zip(small, big))


def is_chain(mu):
    return all(inside(mu[a], mu[a + 1]) for a in range(len(mu) - 1))


def boxes(nu):
    return [(i + 1, j + 1) for i, h in enumerate(nu) for j in range(h)]


def column(nu, i):
    return nu[i - 1] if 1 <= i <= len(nu) else 0


def row(nu, j):
    return sum(1 for h in nu if h >= j)


def leg(nu, s):
    return column(nu, s[0]) - s[1]


def arm(nu, s):
    return row(nu, s[1]) - s[0]


# ---------------------------------------------------------------------------
# characters with independent framing variables
#
# A monomial is a tuple (q exponent, t exponent, framing exponents...).


def _mul(a, b):
    out = Counter()
    for u, cu in a.items():
        for v, cv in b.items():
            out[tuple(x + y for x, y in zip(u, v))] += cu * cv
    return Counter({k: v for k, v in out.items() if v})


def _add(*terms):
    out = Counter()
    for sign, c in terms:
        for k, v in c.items():
            out[k] += sign * v
    return Counter({k: v for k, v in out.items() if v})


def _dual(c):
    return Counter({tuple(-x for x in k): v for k, v in c.items()})


def _mono(r, qe=0, te=0, framing=None):
    exps = [0] * r
    for b, e in (framing or {}).items():
        exps[b - 1] += e
    return Counter({(qe, te) + tuple(exps): 1})


def _vertex(mu):
    r = len(mu)
    out = Counter()
    for b in range(1, r + 1):
        for i, j in boxes(mu[b - 1]):
            out += _mono(r, i - 1, j - 1, {b: -1})
    return out


def _framing(r):
    out = Counter()
    for b in range(1, r + 1):
        out += _mono(r, 0, 0, {b: -1})
    return out


def _prefactor(r):
    # -(1 - q^-1)(1 - t^-1)
    return _add((-1, _mono(r)), (1, _mono(r, -1, 0)), (1, _mono(r, 0, -1)), (-1, _mono(r, -1, -1)))


def framed_tangent(mu):
    """Tangent character at a fixed point with independent framing weights."""
    r = len(mu)
    v, w = _vertex(mu), _framing(r)
    return _add((1, _mul(_mul(_prefactor(r), v), _dual(v))),
                (1, _mul(v, _dual(w))),
                (1, _mul(_mul(_mono(r, -1, -1), _dual(v)), w)))


def framed_normal(mu, lam):
    """Character of the normal bundle of the one-box correspondence."""
    r = len(mu)
    v, vl, w = _vertex(mu), _vertex(lam), _framing(r)
    return _add((1, _mul(_mul(_prefactor(r), v), _dual(vl))),
                (1, _mul(v, _dual(w))),
                (1, _mul(_mul(_mono(r, -1, -1), _dual(vl)), w)),
                (-1, _mono(r, -1, -1)))


def framed_correspondence(mu, lam):
    return _add((1, framed_tangent(mu)), (1, framed_tangent(lam)), (-1, framed_normal(mu, lam)))


def specialise(c):
    """Send the framing weight of component b to (q t sigma)^(b - 1)."""
    out = Counter()
    for k, v in c.items():
        qe, te, framing = k[0], k[1], k[2:]
        shift = sum((b - 1) * e for b, e in enumerate(framing, start=1))
        out[(qe + shift, te + shift, shift)] += v
    return {k: v for k, v in out.items() if v}


# ---------------------------------------------------------------------------
# counting


def brute_plane_partitions(n, bound):
    """Plane partitions of n with all entries <= bound, counted over arrays."""

    def rows(remaining, above):
        # above: the previous row (weakly decreasing), or None for the first row
        if remaining == 0:
            yield 1
            return
        limit_len = len(above) if above is not None else remaining
        for row_ in _rows(remaining, limit_len, above, bound):
            yield from rows(remaining - sum(row_), row_)

    return sum(rows(n, None))


def _rows(total_max, max_len, above, bound):
    """Nonempty weakly decreasing rows with entries <= bound and <= the row above."""

    def extend(prefix, remaining):
        if prefix:
            yield tuple(prefix)
        k = len(prefix)
        if k >= max_len:
            return
        cap = min(bound, remaining, prefix[-1] if prefix else bound)
        if above is not None:
            cap = min(cap, above[k])
        for v in range(cap, 0, -1):
            yield from extend(prefix + [v], remaining - v)

    yield from extend([], total_max)


@lru_cache(maxsize=None)
def bounded_macmahon(r, order):
    """Expand prod (1 - q^n)^(-min(n, r)) as a product of truncated geometric sums."""
    q = sympy.Symbol("q")
    result = sympy.Poly(1, q)
    for n in range(1, order + 1):
        geometric = sympy.Poly(sum(q ** (n * k) for k in range(order // n + 1)), q)
        for _ in range(min(n, r)):
            result = sympy.Poly(sum(c * q ** e for (e,), c in (result * geometric).terms() if e <= order)
                                or 0, q)
    return [int(result.coeff_monomial(q ** k)) for k in range(order + 1)]


def partition_numbers(order):
    return [int(sympy.partition(n)) for n in range(order + 1)]
