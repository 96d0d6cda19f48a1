"""Torus characters of tangent spaces at fixed points, and their Euler classes.

Characters are Laurent polynomials in ``q``, ``t`` and ``sigma``; exponent
vectors are ``(q power, t power, sigma power)``.  A :class:`WeightDict` turns
each monomial into a linear form in ``x, y, z`` and the Euler class of a
character is the product of those forms with multiplicity.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, Iterable, List, Tuple

from .conventions import Convention
from .errors import ContractViolation, ZeroWeight
from .exact_algebra import RF_ONE, LaurentPoly, RatFun
from .partitions import (MultiPartition, arm, covers, enumerate_multipartitions, is_nested,
                         leg)

CHAR_VARS = ("q", "t", "sigma")

Linear = Tuple[int, int, int]


@dataclass(frozen=True)
class TangentChar:
    """A character together with the fixed point (or pair) it belongs to."""

    owner: tuple
    char: LaurentPoly

    def coefficient_sum(self) -> int:
        return int(self.char.coefficient_sum())

    def is_nonnegative(self) -> bool:
        return self.char.is_nonnegative()


@dataclass(frozen=True)
class WeightDict:
    """Assignment of linear forms in ``x, y, z`` to ``q``, ``t`` and ``sigma``.

    The default sends ``q -> x``, ``t -> y`` and ``sigma -> -(x + y + z)``;
    ``sign=-1`` negates all three.
    """

    w_q: Linear = (1, 0, 0)
    w_t: Linear = (0, 1, 0)
    w_sigma: Linear = (-1, -1, -1)

    @classmethod
    def standard(cls, sign: int = 1) -> "WeightDict":
        if sign not in (1, -1):
            raise ContractViolation("sign must be +1 or -1")
        return cls((sign, 0, 0), (0, sign, 0), (-sign, -sign, -sign))

    def linear_form(self, exp) -> Linear:
        i, j, k = exp
        return tuple(i * a + j * b + k * c for a, b, c in zip(self.w_q, self.w_t, self.w_sigma))

    def specialized_form(self, exp) -> Tuple[int, int]:
        """Linear form after ``z -> -(x + y)``, as coefficients of ``(x, y)``."""
        a, b, c = self.linear_form(exp)
        return (a - c, b - c)


def _dlp(counter: Counter) -> LaurentPoly:
    return LaurentPoly(CHAR_VARS, {e: c for e, c in counter.items() if c})


def tangent_character(mu: MultiPartition, convention: Convention = Convention()) -> TangentChar:
    """Character of the tangent space at the fixed point labelled by ``mu``."""
    return TangentChar((mu,), _dlp(_tangent_counter(mu, convention)))


@lru_cache(maxsize=None)
def _tangent_counter(mu: MultiPartition, convention: Convention) -> Counter:
    r = mu.r
    out: Counter = Counter()
    for b in range(1, r + 1):
        for c in range(1, r + 1):
            d = b - c
            mb, mc = mu[b - 1], mu[c - 1]
            for s in mb.boxes():
                out[(d - arm(mb, s, convention) - 1, d + leg(mc, s, convention), d)] += 1
            for s in mc.boxes():
                out[(d + arm(mc, s, convention), d - leg(mb, s, convention) - 1, d)] += 1
    return out


def correspondence_tangent_character(mu: MultiPartition, lam: MultiPartition,
                                     convention: Convention = Convention()) -> TangentChar:
    """Character of the tangent space of the one-box correspondence at ``(mu, lam)``.

    This is ``-1 + q^-1 + t^-1`` plus a double sum over components in which
    boxes of ``mu`` are measured against ``lam`` and vice versa.  The double
    sum contains the trivial character exactly once, which cancels the ``-1``.
    """
    if covers(mu, lam) is None:
        raise ContractViolation("correspondence character needs lam to cover mu")
    return TangentChar((mu, lam), _dlp(_correspondence_counter(mu, lam, convention)))


@lru_cache(maxsize=None)
def _correspondence_counter(mu, lam, convention) -> Counter:
    r = mu.r
    out: Counter = Counter({(0, 0, 0): -1, (-1, 0, 0): 1, (0, -1, 0): 1})
    for b in range(1, r + 1):
        for c in range(1, r + 1):
            d = b - c
            mb, lc = mu[b - 1], lam[c - 1]
            for s in mb.boxes():
                out[(d - arm(mb, s, convention) - 1, d + leg(lc, s, convention), d)] += 1
            for s in lc.boxes():
                out[(d + arm(lc, s, convention), d - leg(mb, s, convention) - 1, d)] += 1
    return out


def c00k(char: TangentChar) -> Dict[int, int]:
    """Coefficients of the pure ``sigma`` powers, keyed by the power."""
    return {exp[2]: int(c) for exp, c in char.char.items() if exp[0] == 0 and exp[1] == 0}


def s1_s2_sets(mu: MultiPartition, convention: Convention = Convention()):
    """The two sets of triples ``(b, c, box)`` that produce pure sigma weights."""
    r = mu.r
    first, second = set(), set()
    for b in range(1, r + 1):
        for c in range(1, r + 1):
            mb, mc = mu[b - 1], mu[c - 1]
            if c < b:
                for s in mb.boxes():
                    if s in mc:
                        continue
                    if (b - c + leg(mc, s, convention) == 0
                            and b - c - arm(mb, s, convention) - 1 == 0):
                        first.add((b, c, s))
            elif b < c:
                for s in mc.boxes():
                    if s in mb:
                        continue
                    if (b - c - leg(mb, s, convention) - 1 == 0
                            and b - c + arm(mc, s, convention) == 0):
                        second.add((b, c, s))
    return first, second


def sigma_part_from_sets(mu: MultiPartition, convention: Convention = Convention()) -> Dict[int, int]:
    first, second = s1_s2_sets(mu, convention)
    out: Counter = Counter()
    for b, c, _ in list(first) + list(second):
        out[b - c] += 1
    return dict(out)


def euler_factors(char: TangentChar, weights: WeightDict = WeightDict()) -> Counter:
    """Euler class as a multiset of linear forms ``(a, b, c) = a x + b y + c z``."""
    out: Counter = Counter()
    for exp, c in char.char.items():
        if exp == (0, 0, 0):
            raise ZeroWeight(f"trivial weight in the character of {char.owner}")
        if c < 0 or c.denominator != 1:
            raise ContractViolation(f"character of {char.owner} is not a genuine representation")
        out[weights.linear_form(exp)] += int(c)
    return out


def product_of_forms(forms: Counter) -> RatFun:
    """Expand a multiset of linear forms (negative multiplicity divides)."""
    num, den = RF_ONE, RF_ONE
    for form, mult in sorted(forms.items()):
        if mult > 0:
            num = num * RatFun.linear(form) ** mult
        elif mult < 0:
            den = den * RatFun.linear(form) ** (-mult)
    return num / den


def euler_class(char: TangentChar, weights: WeightDict = WeightDict()) -> RatFun:
    """Product of the weights of ``char`` (with multiplicity) as a polynomial."""
    return product_of_forms(euler_factors(char, weights))


# ---------------------------------------------------------------------------
# Exhaustive verification of the fixed-locus statements
# ---------------------------------------------------------------------------

def _cover_pairs(r: int, n: int) -> Iterable[Tuple[MultiPartition, MultiPartition]]:
    """All (mu, lam) with |mu| = n and lam obtained by adding one box."""
    for mu in enumerate_multipartitions(r, n):
        yield from _cover_pairs_of(mu)


def _cover_pairs_of(mu: MultiPartition):
    for b, part in enumerate(mu, start=1):
        for (i, _) in part.addable_boxes():
            yield mu, mu.replace_part(b, part.add_box(i))


def _removals(mu: MultiPartition) -> Iterable[MultiPartition]:
    for b, part in enumerate(mu, start=1):
        for (i, _) in part.removable_boxes():
            yield mu.replace_part(b, part.remove_box(i))


def _report(name, r, n_max, checked, violations):
    return {"lemma": name, "r": r, "n_max": n_max, "checked": checked,
            "violations": violations}


def verify_fixed_locus(r: int, n_max: int, convention: Convention = Convention()) -> List[dict]:
    """Statements about single fixed points, for every r-partition of size <= n_max.

    * ``sigma-part-identity``: the pure-sigma part of the tangent character
      equals the count coming from the two explicit sets of triples.
    * ``nested-isolated``: no pure-sigma weight at a nested point.
    * ``nested-neighbour``: a non-nested point adjacent (by one box, either
      direction) to a nested point has pure-sigma part exactly ``sigma``.
    """
    identity, isolated, neighbour = [], [], []
    n_id = n_iso = n_nb = 0
    for n in range(0, n_max + 1):
        for mu in enumerate_multipartitions(r, n):
            part = c00k(tangent_character(mu, convention))
            n_id += 1
            expected = sigma_part_from_sets(mu, convention)
            if part != expected:
                identity.append({"mu": mu.to_json(), "lambda": None,
                                 "detail": f"character gives {part}, sets give {expected}"})
            if is_nested(mu):
                n_iso += 1
                if part:
                    isolated.append({"mu": mu.to_json(), "lambda": None,
                                     "detail": f"pure sigma part {part}"})
                continue
            # non-nested: compare against nested neighbours
            neighbours = [nu for nu in _removals(mu) if is_nested(nu)]
            if n < n_max:
                neighbours += [lam for (m, lam) in _cover_pairs_of(mu) if is_nested(lam)]
            if neighbours:
                n_nb += 1
                if part != {1: 1}:
                    neighbour.append({"mu": mu.to_json(), "lambda": neighbours[0].to_json(),
                                      "detail": f"pure sigma part {part}, expected {{1: 1}}"})
    return [_report("sigma-part-identity", r, n_max, n_id, identity),
            _report("nested-isolated", r, n_max, n_iso, isolated),
            _report("nested-neighbour", r, n_max, n_nb, neighbour)]


def verify_correspondence_points(r: int, n_max: int,
                                 convention: Convention = Convention()) -> List[dict]:
    """Statements about fixed points of the one-box correspondence, |mu| <= n_max.

    * ``correspondence-isolated``: if mu or lam is nested the correspondence
      character has no pure-sigma weight.
    * ``correspondence-neighbour``: if neither is nested but mu covers a
      nested partition, the pure-sigma part is exactly ``sigma``.
    """
    iso, nb = [], []
    n_iso = n_nb = 0
    for n in range(0, n_max + 1):
        for mu, lam in _cover_pairs(r, n):
            nested_mu, nested_lam = is_nested(mu), is_nested(lam)
            part = c00k(correspondence_tangent_character(mu, lam, convention))
            if nested_mu or nested_lam:
                n_iso += 1
                if part:
                    iso.append({"mu": mu.to_json(), "lambda": lam.to_json(),
                                "detail": f"pure sigma part {part}"})
            elif n >= 1 and any(is_nested(nu) for nu in _removals(mu)):
                n_nb += 1
                if part != {1: 1}:
                    nb.append({"mu": mu.to_json(), "lambda": lam.to_json(),
                               "detail": f"pure sigma part {part}, expected {{1: 1}}"})
    return [_report("correspondence-isolated", r, n_max, n_iso, iso),
            _report("correspondence-neighbour", r, n_max, n_nb, nb)]


def verify_fixed_lemmas(r: int, n_max: int, convention: Convention = Convention()) -> List[dict]:
    """All fixed-point statements; correspondence pairs use |mu| <= n_max - 1."""
    if r < 1 or n_max < 1:
        raise ContractViolation("need r >= 1 and n_max >= 1")
    return (verify_fixed_locus(r, n_max, convention)
            + verify_correspondence_points(r, n_max - 1, convention))


def verify_dimensions(r: int, n_max: int, pair_n_max: int,
                      convention: Convention = Convention()) -> List[dict]:
    """Dimension and positivity of tangent characters.

    Fixed points: coefficient sum ``2 r n`` and no negative coefficients.
    Correspondence points (``|mu| <= pair_n_max``): sum ``2 r n + r + 1``.
    """
    single, pair = [], []
    n1 = n2 = 0
    for n in range(0, n_max + 1):
        for mu in enumerate_multipartitions(r, n):
            n1 += 1
            ch = tangent_character(mu, convention)
            if ch.coefficient_sum() != 2 * r * n or not ch.is_nonnegative():
                single.append({"mu": mu.to_json(), "lambda": None, "detail": str(ch.char)})
    for n in range(0, pair_n_max + 1):
        for mu, lam in _cover_pairs(r, n):
            n2 += 1
            ch = correspondence_tangent_character(mu, lam, convention)
            if ch.coefficient_sum() != 2 * r * n + r + 1 or not ch.is_nonnegative():
                pair.append({"mu": mu.to_json(), "lambda": lam.to_json(), "detail": str(ch.char)})
    return [_report("tangent-dimension", r, n_max, n1, single),
            _report("correspondence-dimension", r, pair_n_max, n2, pair)]
