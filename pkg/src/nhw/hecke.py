"""Hecke correspondence operators on the fixed-point basis.

Operators are stored level by level.  Level ``n`` is spanned by the
r-partitions of ``n`` (all of them, or only the nested ones) in the canonical
enumeration order.  An operator with degree shift ``d`` has one sparse block
per source level ``n``: a dict ``{(row, col): value}`` where ``col`` indexes
level ``n`` and ``row`` indexes level ``n + d``.

Matrix entries of the one-box operators are ratios of Euler classes.  Those
are kept as multisets of linear forms until the very end, so the cancellation
between numerator and denominator is purely combinatorial.
"""

from __future__ import annotations

from collections import Counter
from functools import lru_cache
from typing import Callable, Dict, Iterable, List, Tuple

from .conventions import Convention
from .errors import CapExceeded, ContractViolation, DenominatorVanishes, ZeroWeight
from .exact_algebra import RF_ZERO, RatFun, rf_substitute
from .localization import (WeightDict, correspondence_tangent_character, euler_factors,
                           product_of_forms, tangent_character)
from .partitions import MultiPartition, enumerate_multipartitions, is_nested

Block = Dict[Tuple[int, int], RatFun]

CY_VALUE = -(RatFun.var("x") + RatFun.var("y"))


# ---------------------------------------------------------------------------
# Bases
# ---------------------------------------------------------------------------

class Basis:
    """Canonical fixed-point basis, level by level, for one rank."""

    def __init__(self, r: int, mode: str = "nested"):
        if mode not in ("nested", "full"):
            raise ContractViolation("basis mode must be 'nested' or 'full'")
        if r < 1:
            raise ContractViolation("rank must be positive")
        self.r = r
        self.mode = mode
        self._levels: Dict[int, Tuple[MultiPartition, ...]] = {}
        self._index: Dict[int, Dict[MultiPartition, int]] = {}

    def level(self, n: int) -> Tuple[MultiPartition, ...]:
        if n < 0:
            return ()
        if n not in self._levels:
            elems = tuple(enumerate_multipartitions(self.r, n, self.mode == "nested"))
            self._levels[n] = elems
            self._index[n] = {m: k for k, m in enumerate(elems)}
        return self._levels[n]

    def index(self, n: int, mu: MultiPartition) -> int:
        self.level(n)
        return self._index[n][mu]

    def dim(self, n: int) -> int:
        return len(self.level(n))

    def __eq__(self, other):
        return isinstance(other, Basis) and (self.r, self.mode) == (other.r, other.mode)

    def __hash__(self):
        return hash((self.r, self.mode))


@lru_cache(maxsize=None)
def basis(r: int, mode: str = "nested") -> Basis:
    return Basis(r, mode)


# ---------------------------------------------------------------------------
# Graded operators
# ---------------------------------------------------------------------------

class GradedOperator:
    """Level-indexed family of sparse matrices.

    ``blocks[n]`` is present exactly for the source levels on which the
    operator is defined; an empty dict means the zero map on that level.
    With cap ``N`` an operator of shift ``d`` is defined on source levels
    ``0 <= n <= N`` with ``n + d <= N``.  Target levels below zero are the zero
    space, so no lower truncation is needed.
    """

    __slots__ = ("shift", "blocks", "basis", "cap")

    def __init__(self, shift: int, blocks: Dict[int, Block], basis_: Basis, cap: int):
        self.shift = shift
        self.blocks = {n: {k: v for k, v in b.items() if v} for n, b in blocks.items()}
        self.basis = basis_
        self.cap = cap

    @property
    def r(self) -> int:
        return self.basis.r

    @property
    def levels(self) -> List[int]:
        return sorted(self.blocks)

    @classmethod
    def build(cls, shift: int, basis_: Basis, cap: int,
              entry_fn: Callable[[int, MultiPartition], Iterable[Tuple[MultiPartition, RatFun]]]):
        """Build from a function giving the image of each basis vector.

        ``entry_fn(n, mu)`` yields ``(target, value)`` pairs with target at
        level ``n + shift``.
        """
        blocks = {}
        for n in default_levels(shift, cap):
            tgt = n + shift
            block: Block = {}
            if tgt >= 0:
                for col, mu in enumerate(basis_.level(n)):
                    for target, value in entry_fn(n, mu):
                        row = basis_.index(tgt, target)
                        block[(row, col)] = block.get((row, col), RF_ZERO) + value
            blocks[n] = block
        return cls(shift, blocks, basis_, cap)

    # algebra
    def _same_space(self, other: "GradedOperator"):
        if self.basis != other.basis:
            raise ContractViolation("operators act on different bases")

    def __add__(self, other: "GradedOperator") -> "GradedOperator":
        self._same_space(other)
        if self.shift != other.shift:
            raise ContractViolation("cannot add operators of different degree")
        blocks = {}
        for n in set(self.blocks) & set(other.blocks):
            b = dict(self.blocks[n])
            for k, v in other.blocks[n].items():
                b[k] = b.get(k, RF_ZERO) + v
            blocks[n] = b
        return GradedOperator(self.shift, blocks, self.basis, min(self.cap, other.cap))

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, factor) -> "GradedOperator":
        return GradedOperator(self.shift,
                              {n: {k: v * factor for k, v in b.items()} for n, b in self.blocks.items()},
                              self.basis, self.cap)

    def scale_levels(self, fn: Callable[[int], RatFun]) -> "GradedOperator":
        """Multiply the block at source level ``n`` by ``fn(n)``."""
        return GradedOperator(self.shift,
                              {n: {k: v * fn(n) for k, v in b.items()} for n, b in self.blocks.items()},
                              self.basis, self.cap)

    def __matmul__(self, other: "GradedOperator") -> "GradedOperator":
        """Composition ``self o other`` (apply ``other`` first)."""
        self._same_space(other)
        blocks = {}
        for n, inner in other.blocks.items():
            mid = n + other.shift
            if mid < 0:
                blocks[n] = {}
                continue
            if mid not in self.blocks:
                continue
            outer = self.blocks[mid]
            by_col: Dict[int, Dict[int, RatFun]] = {}
            for (row, col), v in outer.items():
                by_col.setdefault(col, {})[row] = v
            out: Block = {}
            for (mrow, col), v in inner.items():
                for row, w in by_col.get(mrow, {}).items():
                    out[(row, col)] = out.get((row, col), RF_ZERO) + w * v
            blocks[n] = out
        return GradedOperator(self.shift + other.shift, blocks, self.basis, min(self.cap, other.cap))

    def restrict(self, levels: Iterable[int]) -> "GradedOperator":
        levels = set(levels)
        return GradedOperator(self.shift, {n: b for n, b in self.blocks.items() if n in levels},
                              self.basis, self.cap)

    def entry(self, n: int, target: MultiPartition, source: MultiPartition) -> RatFun:
        if n not in self.blocks:
            raise CapExceeded(f"operator undefined on level {n}")
        row = self.basis.index(n + self.shift, target)
        col = self.basis.index(n, source)
        return self.blocks[n].get((row, col), RF_ZERO)

    def apply(self, n: int, vector: Dict[int, RatFun]) -> Dict[int, RatFun]:
        """Apply to a sparse vector on level ``n`` (dict index -> coefficient)."""
        if n not in self.blocks:
            raise CapExceeded(f"operator undefined on level {n}")
        out: Dict[int, RatFun] = {}
        for (row, col), v in self.blocks[n].items():
            if col in vector:
                out[row] = out.get(row, RF_ZERO) + v * vector[col]
        return {k: v for k, v in out.items() if v}

    def nonzero_entries(self, n: int) -> List[Tuple[int, int, RatFun]]:
        return sorted((row, col, v) for (row, col), v in self.blocks.get(n, {}).items() if v)

    def is_zero_on(self, n: int) -> bool:
        return not any(v for v in self.blocks.get(n, {}).values())

    def to_json(self) -> dict:
        return {"shift": self.shift,
                "levels": {str(n): [[row, col, v.to_json()] for row, col, v in self.nonzero_entries(n)]
                           for n in self.levels},
                "basis": self.basis.mode, "r": self.r, "cap": self.cap}

    @classmethod
    def from_json(cls, data) -> "GradedOperator":
        b = basis(int(data["r"]), data["basis"])
        blocks = {int(n): {(int(row), int(col)): RatFun.from_json(v) for row, col, v in entries}
                  for n, entries in data["levels"].items()}
        return cls(int(data["shift"]), blocks, b, int(data["cap"]))

    def __eq__(self, other):
        if not isinstance(other, GradedOperator):
            return NotImplemented
        return (self.shift == other.shift and self.basis == other.basis
                and self.levels == other.levels
                and all(self.blocks[n] == other.blocks[n] for n in self.levels))

    def __repr__(self):
        return (f"GradedOperator(shift={self.shift}, r={self.r}, basis={self.basis.mode!r}, "
                f"cap={self.cap}, levels={self.levels})")


def commutator(a: GradedOperator, b: GradedOperator) -> GradedOperator:
    return (a @ b) - (b @ a)


def default_levels(shift: int, cap: int) -> List[int]:
    return [n for n in range(0, cap + 1) if n + shift <= cap]


# ---------------------------------------------------------------------------
# Contents and weights
# ---------------------------------------------------------------------------

def content_form(component: int, box, convention: Convention = Convention()) -> Tuple[int, int, int]:
    """Content of ``box = (i, j)`` in ``component`` as coefficients of (x, y, z)."""
    i, j = box
    s = convention.content_sign
    return (s * i, s * j, s * (component - 1))


def content_cy_form(component: int, box, convention: Convention = Convention()) -> Tuple[int, int]:
    """Content after ``z -> -(x + y)``."""
    a, b, c = content_form(component, box, convention)
    return (a - c, b - c)


def content(component: int, box, convention: Convention = Convention(), cy: bool = False) -> RatFun:
    if cy:
        a, b = content_cy_form(component, box, convention)
        return RatFun.linear((a, b, 0))
    return RatFun.linear(content_form(component, box, convention))


def tau_form(mu: MultiPartition, lam: MultiPartition,
             convention: Convention = Convention()) -> Tuple[int, int, int]:
    """Weight attached to the box that ``lam`` adds to ``mu``."""
    b, box = _added_box(mu, lam)
    if convention.tau == "first-component":
        b = 1
    return content_form(b, box, convention)


@lru_cache(maxsize=None)
def _added_box(mu: MultiPartition, lam: MultiPartition):
    for b, (p, q) in enumerate(zip(mu, lam), start=1):
        if p != q:
            for i in range(1, len(q) + 1):
                if q.column(i) != p.column(i):
                    return b, (i, q.column(i))
    raise ContractViolation("lam does not cover mu")


def _ups(mu: MultiPartition) -> List[MultiPartition]:
    out = []
    for b, part in enumerate(mu, start=1):
        for (i, _) in part.addable_boxes():
            out.append(mu.replace_part(b, part.add_box(i)))
    return out


def _downs(lam: MultiPartition) -> List[MultiPartition]:
    out = []
    for b, part in enumerate(lam, start=1):
        for (i, _) in part.removable_boxes():
            out.append(lam.replace_part(b, part.remove_box(i)))
    return out


@lru_cache(maxsize=None)
def _point_factors(mu, convention, weights) -> Counter:
    return euler_factors(tangent_character(mu, convention), weights)


@lru_cache(maxsize=None)
def _pair_factors(mu, lam, convention, weights) -> Counter:
    return euler_factors(correspondence_tangent_character(mu, lam, convention), weights)


def _ratio_forms(top: Counter, bottom: Counter) -> Counter:
    out = Counter(top)
    out.subtract(bottom)
    return Counter({k: v for k, v in out.items() if v})


def _cy_forms(forms: Counter) -> Counter:
    """Specialize each linear form; a form that becomes zero raises ZeroWeight."""
    out: Counter = Counter()
    for (a, b, c), m in forms.items():
        f = (a - c, b - c, 0)
        if f == (0, 0, 0):
            raise ZeroWeight(f"weight {(a, b, c)} vanishes on the Calabi-Yau torus")
        out[f] += m
    return out


# ---------------------------------------------------------------------------
# The one-box operators on the full torus
# ---------------------------------------------------------------------------

def _check_args(l, N, r):
    if l < 0 or N < 1 or r < 1:
        raise ContractViolation("need l >= 0, N >= 1, r >= 1")


def f_up(l: int, N: int, r: int, convention: Convention = Convention(),
         weights: WeightDict = WeightDict()) -> GradedOperator:
    """Raising operator: ``mu -> sum_lam tau^l e(T_mu) / e(T_{mu,lam}) lam``."""
    _check_args(l, N, r)

    def entries(n, mu):
        for lam in _ups(mu):
            forms = _ratio_forms(_point_factors(mu, convention, weights),
                                 _pair_factors(mu, lam, convention, weights))
            forms[tau_form(mu, lam, convention)] += l
            yield lam, product_of_forms(forms)

    return GradedOperator.build(1, basis(r, "full"), N, entries)


def f_down(l: int, N: int, r: int, convention: Convention = Convention(),
           weights: WeightDict = WeightDict()) -> GradedOperator:
    """Lowering operator: ``lam -> sum_mu tau^l e(T_lam) / e(T_{mu,lam}) mu``."""
    _check_args(l, N, r)

    def entries(n, lam):
        for mu in _downs(lam):
            forms = _ratio_forms(_point_factors(lam, convention, weights),
                                 _pair_factors(mu, lam, convention, weights))
            forms[tau_form(mu, lam, convention)] += l
            yield mu, product_of_forms(forms)

    return GradedOperator.build(-1, basis(r, "full"), N, entries)


def _power_sum(mu: MultiPartition, l: int, convention: Convention, cy: bool) -> RatFun:
    total = RF_ZERO
    for a, part in enumerate(mu, start=1):
        for s in part.boxes():
            total = total + content(a, s, convention, cy) ** l
    return total


def f_diag(l: int, N: int, r: int, convention: Convention = Convention()) -> GradedOperator:
    """Diagonal operator with eigenvalue ``sum of content^l`` over all boxes."""
    _check_args(l, N, r)
    return GradedOperator.build(
        0, basis(r, "full"), N, lambda n, mu: [(mu, _power_sum(mu, l, convention, False))])


def full_operator(i: int, l: int, N: int, r: int, convention: Convention = Convention(),
                  weights: WeightDict = WeightDict()) -> GradedOperator:
    if i == 1:
        return f_up(l, N, r, convention, weights)
    if i == -1:
        return f_down(l, N, r, convention, weights)
    if i == 0:
        return f_diag(l, N, r, convention)
    raise ContractViolation("operator index must be -1, 0 or 1")


def truncate_and_specialize(op: GradedOperator) -> GradedOperator:
    """Keep the nested-to-nested block and set ``z = -(x + y)``.

    A denominator that vanishes under the substitution is not dropped: the
    :class:`DenominatorVanishes` error propagates to the caller.
    """
    if op.basis.mode != "full":
        raise ContractViolation("truncation expects an operator on the full basis")
    nested = basis(op.r, "nested")
    full = op.basis
    blocks = {}
    for n, block in op.blocks.items():
        tgt = n + op.shift
        out: Block = {}
        for (row, col), v in block.items():
            mu, lam = full.level(n)[col], full.level(tgt)[row]
            if is_nested(mu) and is_nested(lam):
                try:
                    out[(nested.index(tgt, lam), nested.index(n, mu))] = rf_substitute(v, "z", CY_VALUE)
                except DenominatorVanishes as exc:
                    raise DenominatorVanishes(
                        f"entry ({lam}, {mu}) at level {n} has a pole on the Calabi-Yau torus") from exc
        blocks[n] = out
    return GradedOperator(op.shift, blocks, nested, op.cap)


def g0_direct(i: int, l: int, N: int, r: int, convention: Convention = Convention(),
              weights: WeightDict = WeightDict()) -> GradedOperator:
    """The nested-basis operators built directly from Calabi-Yau weights."""
    _check_args(l, N, r)
    nested = basis(r, "nested")
    if i == 0:
        return GradedOperator.build(
            0, nested, N, lambda n, mu: [(mu, _power_sum(mu, l, convention, True))])

    def up_entries(n, mu):
        for lam in _ups(mu):
            if not is_nested(lam):
                continue
            forms = _ratio_forms(_cy_forms(_point_factors(mu, convention, weights)),
                                 _cy_forms(_pair_factors(mu, lam, convention, weights)))
            a, b, c = tau_form(mu, lam, convention)
            if l:
                forms[(a - c, b - c, 0)] += l
            yield lam, _product_allow_zero(forms)

    def down_entries(n, lam):
        for mu in _downs(lam):
            if not is_nested(mu):
                continue
            forms = _ratio_forms(_cy_forms(_point_factors(lam, convention, weights)),
                                 _cy_forms(_pair_factors(mu, lam, convention, weights)))
            a, b, c = tau_form(mu, lam, convention)
            if l:
                forms[(a - c, b - c, 0)] += l
            yield mu, _product_allow_zero(forms)

    if i == 1:
        return GradedOperator.build(1, nested, N, up_entries)
    if i == -1:
        return GradedOperator.build(-1, nested, N, down_entries)
    raise ContractViolation("operator index must be -1, 0 or 1")


def _product_allow_zero(forms: Counter) -> RatFun:
    # a zero tau with positive power makes the entry vanish; it is not a pole
    if forms.get((0, 0, 0), 0) > 0:
        return RF_ZERO
    if forms.get((0, 0, 0), 0) < 0:
        raise ZeroWeight("zero weight in a denominator")
    return product_of_forms(forms)


def two_path_check(r: int, N: int, l_max: int, convention: Convention = Convention(),
                   weights: WeightDict = WeightDict()) -> dict:
    """Compare truncate-then-specialize against the direct construction."""
    violations = []
    checked = 0
    for i in (-1, 0, 1):
        for l in range(l_max + 1):
            direct = g0_direct(i, l, N, r, convention, weights)
            try:
                via_full = truncate_and_specialize(full_operator(i, l, N, r, convention, weights))
            except DenominatorVanishes as exc:
                violations.append({"i": i, "l": l, "detail": str(exc)})
                continue
            for n in direct.levels:
                checked += 1
                if direct.blocks[n] != via_full.blocks.get(n):
                    violations.append({"i": i, "l": l, "level": n,
                                       "detail": "entrywise mismatch"})
    return {"check": "two-path", "r": r, "cap": N, "l_max": l_max,
            "checked": checked, "violations": violations}


def s_divisibility_check(r: int, N: int, l_max: int = 2, convention: Convention = Convention(),
                         weights: WeightDict = WeightDict()) -> dict:
    """Block structure of the raising/lowering operators relative to nesting.

    Entries from a non-nested state to a nested state must vanish at
    ``z = -(x + y)``; entries from a nested state to a non-nested one must
    stay finite there.
    """
    violations = []
    checked = 0
    for i in (1, -1):
        for l in range(l_max + 1):
            op = full_operator(i, l, N, r, convention, weights)
            full = op.basis
            for n, block in op.blocks.items():
                for (row, col), v in block.items():
                    src, tgt = full.level(n)[col], full.level(n + op.shift)[row]
                    ns, nt = is_nested(src), is_nested(tgt)
                    if ns == nt:
                        continue
                    checked += 1
                    try:
                        spec = rf_substitute(v, "z", CY_VALUE)
                    except DenominatorVanishes:
                        violations.append({"i": i, "l": l, "source": src.to_json(),
                                           "target": tgt.to_json(), "detail": "pole"})
                        continue
                    if nt and not ns and spec:
                        violations.append({"i": i, "l": l, "source": src.to_json(),
                                           "target": tgt.to_json(),
                                           "detail": "non-nested to nested entry does not vanish"})
    return {"check": "s-divisibility", "r": r, "cap": N, "l_max": l_max,
            "checked": checked, "violations": violations}
