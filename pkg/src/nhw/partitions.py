"""Young diagrams stored by column heights, r-tuples of them, and counting.

A diagram with columns of heights ``nu[0] >= nu[1] >= ...`` has boxes
``(i, j)`` with ``1 <= i <= len(nu)`` and ``1 <= j <= nu[i-1]``: ``i`` picks
the column, ``j`` the row.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterator, List, Optional, Sequence, Tuple

from .conventions import Convention
from .errors import ContractViolation

Box = Tuple[int, int]


class Partition(tuple):
    """Weakly decreasing tuple of positive column heights."""

    __slots__ = ()

    def __new__(cls, columns: Sequence[int] = ()):
        columns = tuple(int(c) for c in columns)
        if any(c <= 0 for c in columns):
            raise ContractViolation(f"column heights must be positive: {columns}")
        if any(a < b for a, b in zip(columns, columns[1:])):
            raise ContractViolation(f"column heights must be weakly decreasing: {columns}")
        return super().__new__(cls, columns)

    @classmethod
    def _trusted(cls, columns):
        return super().__new__(cls, columns)

    @property
    def size(self) -> int:
        return sum(self)

    def column(self, i: int) -> int:
        """Height of column ``i`` (1-based); zero past the last column."""
        return self[i - 1] if 1 <= i <= len(self) else 0

    def row(self, j: int) -> int:
        """Length of row ``j``, i.e. the number of columns of height >= j."""
        n = 0
        for c in self:
            if c < j:
                break
            n += 1
        return n

    def transpose(self) -> "Partition":
        if not self:
            return self
        return Partition._trusted(tuple(self.row(j) for j in range(1, self[0] + 1)))

    def boxes(self) -> List[Box]:
        return [(i, j) for i, h in enumerate(self, start=1) for j in range(1, h + 1)]

    def __contains__(self, box) -> bool:
        i, j = box
        return 1 <= j <= self.column(i)

    def contains(self, other: "Partition") -> bool:
        """Diagram containment ``other`` inside ``self``."""
        return len(other) <= len(self) and all(b <= a for a, b in zip(self, other))

    def addable_boxes(self) -> List[Box]:
        out = []
        for i in range(1, len(self) + 2):
            h = self.column(i)
            if i == 1 or self.column(i - 1) > h:
                out.append((i, h + 1))
        return out

    def removable_boxes(self) -> List[Box]:
        return [(i, h) for i, h in enumerate(self, start=1) if self.column(i + 1) < h]

    def add_box(self, i: int) -> "Partition":
        cols = list(self)
        if i == len(cols) + 1:
            cols.append(1)
        else:
            cols[i - 1] += 1
        return Partition(cols)

    def remove_box(self, i: int) -> "Partition":
        cols = list(self)
        cols[i - 1] -= 1
        if cols[i - 1] == 0:
            cols.pop()
        return Partition(cols)

    def __repr__(self):
        return f"Partition({list(self)})"


def _check_box(s: Box):
    i, j = s
    if i < 1 or j < 1:
        raise ContractViolation(f"box coordinates must be positive, got {s}")


def leg(nu: Partition, s: Box, convention: Convention = Convention()) -> int:
    """Column height at ``s`` minus its row, plus the convention offset.

    ``s`` need not lie in ``nu``; the value is then negative.
    """
    _check_box(s)
    return nu.column(s[0]) - s[1] + convention.arm_leg_offset


def arm(nu: Partition, s: Box, convention: Convention = Convention()) -> int:
    """Row length at ``s`` minus its column, plus the convention offset."""
    _check_box(s)
    return nu.row(s[1]) - s[0] + convention.arm_leg_offset


class MultiPartition(tuple):
    """Ordered tuple of ``r`` partitions (empty ones allowed)."""

    __slots__ = ()

    def __new__(cls, parts: Sequence):
        parts = tuple(p if isinstance(p, Partition) else Partition(p) for p in parts)
        if not parts:
            raise ContractViolation("a multipartition needs at least one component")
        return super().__new__(cls, parts)

    @property
    def r(self) -> int:
        return len(self)

    @property
    def size(self) -> int:
        return sum(p.size for p in self)

    def replace_part(self, b: int, part: Partition) -> "MultiPartition":
        parts = list(self)
        parts[b - 1] = part
        return MultiPartition(parts)

    def sort_key(self, n: Optional[int] = None) -> Tuple[int, ...]:
        """Zero-padded flattened column list; enumeration is in decreasing order of it."""
        n = self.size if n is None else n
        flat = []
        for p in self:
            flat.extend(p)
            flat.extend([0] * (n - len(p)))
        return tuple(flat)

    def to_json(self) -> dict:
        return {"r": self.r, "parts": [list(p) for p in self]}

    @classmethod
    def from_json(cls, data: dict) -> "MultiPartition":
        parts = data["parts"]
        if data["r"] != len(parts):
            raise ContractViolation("rank does not match the number of parts")
        return cls(parts)

    def __repr__(self):
        return "MultiPartition(" + ", ".join(str(list(p)) for p in self) + ")"


def is_nested(mu: MultiPartition) -> bool:
    """True iff each component contains the next one."""
    return all(a.contains(b) for a, b in zip(mu, mu[1:]))


def covers(mu: MultiPartition, lam: MultiPartition) -> Optional[Tuple[int, Box]]:
    """If ``lam`` is ``mu`` plus one box, return (component, box); else None."""
    if mu.r != lam.r:
        raise ContractViolation("covers() needs multipartitions of equal rank")
    found = None
    for b, (p, q) in enumerate(zip(mu, lam), start=1):
        if p == q:
            continue
        if found is not None or q.size != p.size + 1 or not q.contains(p):
            return None
        diff = [i for i in range(1, len(q) + 1) if q.column(i) != p.column(i)]
        i = diff[0]
        found = (b, (i, q.column(i)))
    return found


def partitions_of(n: int) -> Iterator[Partition]:
    """Partitions of ``n`` in decreasing lexicographic order."""
    if n < 0:
        return
    if n == 0:
        yield Partition._trusted(())
        return

    def rec(remaining, cap):
        if remaining == 0:
            yield ()
            return
        for first in range(min(remaining, cap), 0, -1):
            for rest in rec(remaining - first, first):
                yield (first,) + rest

    for cols in rec(n, n):
        yield Partition._trusted(cols)


def _partitions_inside(bound: Partition, n: int) -> Iterator[Partition]:
    """Partitions of ``n`` contained in ``bound``."""
    bound = tuple(bound)

    def rec(k, remaining, cap):
        if remaining == 0:
            yield ()
            return
        if k >= len(bound):
            return
        for first in range(min(remaining, cap, bound[k]), 0, -1):
            for rest in rec(k + 1, remaining - first, first):
                yield (first,) + rest

    for cols in rec(0, n, n):
        yield Partition._trusted(cols)


def _compositions(n: int, r: int) -> Iterator[Tuple[int, ...]]:
    if r == 1:
        yield (n,)
        return
    for first in range(n, -1, -1):
        for rest in _compositions(n - first, r - 1):
            yield (first,) + rest


def enumerate_multipartitions(r: int, n: int, nested_only: bool = False) -> List[MultiPartition]:
    """All (nested) r-partitions of ``n``.

    Ordered by decreasing lexicographic order of the zero-padded flattened
    column lists, e.g. ``((2), ()), ((1, 1), ()), ((1), (1))`` for r = n = 2.
    """
    if r < 1 or n < 0:
        raise ContractViolation("need r >= 1 and n >= 0")
    out: List[MultiPartition] = []
    if nested_only:
        def rec(prefix, remaining, bound):
            k = len(prefix)
            if k == r:
                if remaining == 0:
                    out.append(MultiPartition(prefix))
                return
            # the remaining r-k components are each inside this one
            slots = r - k
            for size in range(min(remaining, bound.size if bound is not None else remaining), -1, -1):
                if size * slots < remaining:
                    break
                pool = partitions_of(size) if bound is None else _partitions_inside(bound, size)
                for p in pool:
                    rec(prefix + [p], remaining - size, p)
        rec([], n, None)
    else:
        for sizes in _compositions(n, r):
            def rec2(k, prefix):
                if k == r:
                    out.append(MultiPartition(prefix))
                    return
                for p in partitions_of(sizes[k]):
                    rec2(k + 1, prefix + [p])
            rec2(0, [])
    out.sort(key=lambda m: m.sort_key(n), reverse=True)
    return out


def phi0(mu: MultiPartition) -> Tuple[Tuple[int, int], ...]:
    """Multiset of shifted box coordinates ``(i - a, j - a)``, as a sorted tuple."""
    return tuple(sorted((i - a, j - a)
                        for a, part in enumerate(mu, start=1) for (i, j) in part.boxes()))


def phi0_is_injective(r: int, n: int) -> Tuple[bool, list]:
    """Check injectivity of :func:`phi0` on nested r-partitions of ``n``.

    Returns ``(ok, collisions)`` where each collision is a pair of distinct
    multipartitions with the same image.
    """
    seen = {}
    collisions = []
    for mu in enumerate_multipartitions(r, n, nested_only=True):
        key = phi0(mu)
        if key in seen:
            collisions.append((seen[key], mu))
        else:
            seen[key] = mu
    return not collisions, collisions


def nested_count_series(r: int, N: int) -> List[int]:
    """Number of nested r-partitions of n for n = 0..N."""
    return [len(enumerate_multipartitions(r, n, nested_only=True)) for n in range(N + 1)]


def macmahon_series(r: int, N: int) -> List[int]:
    """Coefficients of ``prod_{n>=1} (1 - q^n)^(-min(n, r))`` up to ``q^N``."""
    if r < 1 or N < 0:
        raise ContractViolation("need r >= 1 and N >= 0")
    coeffs = [1] + [0] * N
    for n in range(1, N + 1):
        for _ in range(min(n, r)):
            # multiply by 1/(1 - q^n)
            for k in range(n, N + 1):
                coeffs[k] += coeffs[k - n]
    return coeffs


def central_charge(r: int, k):
    """``(r-1) - r(r^2-1)(k+r-1)^2/(k+r)``.

    ``k`` may be an exact number (int or Fraction) or a sympy expression; a
    string is interpreted as a sympy symbol name.
    """
    if isinstance(k, (int, Fraction)):
        level = Fraction(k) + r
        if level == 0:
            raise ContractViolation("k + r must be nonzero")
        return Fraction(r - 1) - r * (r * r - 1) * (level - 1) ** 2 / level
    import sympy

    k = sympy.Symbol(k) if isinstance(k, str) else k
    level = k + r
    if level == 0:
        raise ContractViolation("k + r must be nonzero")
    return sympy.simplify((r - 1) - r * (r ** 2 - 1) * (level - 1) ** 2 / level)

