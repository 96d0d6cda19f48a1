"""Exact arithmetic: rationals, Laurent polynomials, rational functions, power series.

Everything in here is immutable.  Rational functions live in Q(x, y, z) and are
backed by python-flint's ``fmpq_mpoly``; after every operation numerator and
denominator are divided by their gcd and the denominator is scaled so that its
leading coefficient (lex order, x > y > z) equals one.  With that normal form
two rational functions are equal exactly when their numerators and
denominators are equal, which is what ``__eq__`` uses.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Dict, Iterable, Mapping, Sequence, Tuple, Union

import flint

from .errors import ContractViolation, DenominatorVanishes

Rational = Fraction

Exponent = Tuple[int, ...]

EXPONENT_BOUND = 10_000


# ---------------------------------------------------------------------------
# Rationals
# ---------------------------------------------------------------------------

def format_rational(value) -> str:
    """Serialize a rational as ``"p/q"`` (the denominator is always written)."""
    value = Fraction(value)
    return f"{value.numerator}/{value.denominator}"


def parse_rational(text: str) -> Fraction:
    """Inverse of :func:`format_rational`; also accepts plain integers."""
    if not isinstance(text, str):
        raise ContractViolation(f"rational must be serialized as a string, got {text!r}")
    num, sep, den = text.partition("/")
    try:
        if sep:
            return Fraction(int(num), int(den))
        return Fraction(int(num))
    except (ValueError, ZeroDivisionError) as exc:
        raise ContractViolation(f"malformed rational {text!r}") from exc


def _to_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, flint.fmpq):
        return Fraction(int(value.p), int(value.q))
    if isinstance(value, flint.fmpz):
        return Fraction(int(value))
    raise ContractViolation(f"cannot interpret {value!r} as an exact rational")


# ---------------------------------------------------------------------------
# Laurent polynomials
# ---------------------------------------------------------------------------

class LaurentPoly:
    """Sparse Laurent polynomial with rational coefficients.

    ``variables`` is an ordered tuple of names; ``terms`` maps exponent tuples
    (negative entries allowed) to nonzero coefficients.
    """

    __slots__ = ("variables", "_terms")

    def __init__(self, variables: Sequence[str], terms: Mapping[Exponent, object] = ()):
        variables = tuple(variables)
        clean: Dict[Exponent, Fraction] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for exp, coef in items:
            exp = tuple(int(e) for e in exp)
            if len(exp) != len(variables):
                raise ContractViolation(
                    f"exponent {exp} does not match variables {variables}")
            if any(abs(e) > EXPONENT_BOUND for e in exp):
                raise OverflowError(f"exponent {exp} exceeds the supported range")
            c = clean.get(exp, Fraction(0)) + _to_fraction(coef)
            if c:
                clean[exp] = c
            else:
                clean.pop(exp, None)
        object.__setattr__(self, "variables", variables)
        object.__setattr__(self, "_terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("LaurentPoly is immutable")

    # construction helpers
    @classmethod
    def zero(cls, variables):
        return cls(variables)

    @classmethod
    def constant(cls, variables, value=1):
        return cls(variables, {(0,) * len(tuple(variables)): value})

    @classmethod
    def monomial(cls, variables, exp, coef=1):
        return cls(variables, {tuple(exp): coef})

    @property
    def terms(self) -> Dict[Exponent, Fraction]:
        return dict(self._terms)

    def items(self):
        """Terms sorted by exponent, for deterministic output."""
        return sorted(self._terms.items())

    def coefficient(self, exp) -> Fraction:
        return self._terms.get(tuple(exp), Fraction(0))

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def _check(self, other: "LaurentPoly"):
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        if other.variables != self.variables:
            raise ContractViolation(
                f"variable mismatch: {self.variables} vs {other.variables}")
        return None

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = LaurentPoly.constant(self.variables, other)
        if self._check(other) is NotImplemented:
            return NotImplemented
        merged = dict(self._terms)
        for exp, c in other._terms.items():
            merged[exp] = merged.get(exp, 0) + c
        return LaurentPoly(self.variables, merged)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly(self.variables, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = LaurentPoly.constant(self.variables, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return LaurentPoly(self.variables, {e: c * other for e, c in self._terms.items()})
        return lp_mul(self, other)

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = LaurentPoly.constant(self.variables, other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.variables == other.variables and self._terms == other._terms

    def __hash__(self):
        return hash((self.variables, frozenset(self._terms.items())))

    def dual(self) -> "LaurentPoly":
        """Invert every variable (the character of the dual representation)."""
        return LaurentPoly(self.variables,
                           {tuple(-e for e in exp): c for exp, c in self._terms.items()})

    def coefficient_sum(self) -> Fraction:
        return sum(self._terms.values(), Fraction(0))

    def is_nonnegative(self) -> bool:
        return all(c > 0 for c in self._terms.values())

    def to_json(self):
        return [{"exp": list(exp), "coef": format_rational(c)} for exp, c in self.items()]

    @classmethod
    def from_json(cls, variables, data):
        return cls(variables, [(tuple(t["exp"]), parse_rational(t["coef"])) for t in data])

    def __repr__(self):
        return f"LaurentPoly({self.variables}, {self})"

    def __str__(self):
        if not self._terms:
            return "0"
        pieces = []
        for exp, c in self.items():
            mono = "*".join(
                v if e == 1 else f"{v}^{e}" for v, e in zip(self.variables, exp) if e)
            if not mono:
                pieces.append(str(c))
            elif c == 1:
                pieces.append(mono)
            elif c == -1:
                pieces.append("-" + mono)
            else:
                pieces.append(f"{c}*{mono}")
        return " + ".join(pieces).replace("+ -", "- ")


def lp_mul(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    """Exact product of two Laurent polynomials over the same variables."""
    if not isinstance(a, LaurentPoly) or not isinstance(b, LaurentPoly):
        raise ContractViolation("lp_mul expects two LaurentPoly values")
    if a.variables != b.variables:
        raise ContractViolation(f"variable mismatch: {a.variables} vs {b.variables}")
    out: Dict[Exponent, Fraction] = {}
    for ea, ca in a._terms.items():
        for eb, cb in b._terms.items():
            e = tuple(i + j for i, j in zip(ea, eb))
            out[e] = out.get(e, 0) + ca * cb
    return LaurentPoly(a.variables, out)


# ---------------------------------------------------------------------------
# Rational functions in x, y, z
# ---------------------------------------------------------------------------

VARIABLES = ("x", "y", "z")
_CTX = flint.fmpq_mpoly_ctx.get(VARIABLES, "lex")
_GENS = dict(zip(VARIABLES, _CTX.gens()))
_POLY_ZERO = _CTX.from_dict({})
_POLY_ONE = _CTX.from_dict({(0, 0, 0): 1})


def _poly_from_json(data) -> "flint.fmpq_mpoly":
    terms = {}
    for t in data:
        exp = tuple(int(e) for e in t["exp"])
        if len(exp) != 3 or min(exp) < 0:
            raise ContractViolation(f"bad polynomial exponent {exp}")
        c = parse_rational(t["coef"])
        terms[exp] = flint.fmpq(c.numerator, c.denominator)
    return _CTX.from_dict(terms)


def _poly_to_json(p) -> list:
    out = []
    for exp, c in sorted((tuple(int(e) for e in exp), c) for exp, c in p.to_dict().items()):
        out.append({"exp": list(exp), "coef": format_rational(_to_fraction(c))})
    return out


class RatFun:
    """Element of Q(x, y, z) in reduced normal form."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None, _reduced: bool = False):
        num = _as_poly(num)
        den = _POLY_ONE if den is None else _as_poly(den)
        if den.is_zero():
            raise DenominatorVanishes("rational function with zero denominator")
        if not _reduced:
            if num.is_zero():
                den = _POLY_ONE
            else:
                if not den.is_constant():
                    g = num.gcd(den)
                    if not g.is_one():
                        num = num / g
                        den = den / g
                lc = den.leading_coefficient()
                if lc != 1:
                    num = num / lc
                    den = den / lc
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, name, value):
        raise AttributeError("RatFun is immutable")

    def __reduce__(self):
        return (RatFun.from_json, (self.to_json(),))

    # constructors
    @classmethod
    def var(cls, name: str) -> "RatFun":
        if name not in _GENS:
            raise ContractViolation(f"unknown variable {name!r}")
        return cls(_GENS[name], None, _reduced=True)

    @classmethod
    def const(cls, value) -> "RatFun":
        value = _to_fraction(value)
        return cls(_CTX.from_dict({(0, 0, 0): flint.fmpq(value.numerator, value.denominator)}),
                   None, _reduced=True)

    @classmethod
    def linear(cls, coeffs: Sequence) -> "RatFun":
        """The linear form ``a*x + b*y + c*z`` for ``coeffs = (a, b, c)``."""
        terms = {}
        for i, c in enumerate(coeffs):
            c = _to_fraction(c)
            if c:
                e = [0, 0, 0]
                e[i] = 1
                terms[tuple(e)] = flint.fmpq(c.numerator, c.denominator)
        return cls(_CTX.from_dict(terms), None, _reduced=True)

    # predicates
    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __bool__(self):
        return not self.num.is_zero()

    def is_polynomial(self) -> bool:
        return self.den.is_one()

    # arithmetic
    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        if self.den == other.den:
            return RatFun(self.num + other.num, self.den)
        return RatFun(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFun(-self.num, self.den, _reduced=True)

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        if self.is_zero() or other.is_zero():
            return RatFun(_POLY_ZERO, None, _reduced=True)
        # cross-cancel before multiplying keeps intermediate sizes small
        g1 = self.num.gcd(other.den)
        g2 = other.num.gcd(self.den)
        n1, d2 = self.num / g1, other.den / g1
        n2, d1 = other.num / g2, self.den / g2
        return RatFun(n1 * n2, d1 * d2)

    __rmul__ = __mul__

    def inverse(self) -> "RatFun":
        if self.is_zero():
            raise ZeroDivisionError("inverse of the zero rational function")
        return RatFun(self.den, self.num)

    def __truediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        return _coerce(other) * self.inverse()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        return RatFun(self.num ** k, self.den ** k, _reduced=True)

    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self.num == other.num and self.den == other.den

    def equals_by_cross_multiplication(self, other) -> bool:
        other = _coerce(other)
        return self.num * other.den == other.num * self.den

    def __hash__(self):
        return hash((str(self.num), str(self.den)))

    # evaluation and substitution
    def evaluate(self, point: Mapping[str, object]) -> Fraction:
        """Value at a rational point ``{"x": ..., "y": ..., "z": ...}``."""
        args = []
        for v in VARIABLES:
            q = _to_fraction(point.get(v, 0))
            args.append(flint.fmpq(q.numerator, q.denominator))
        d = self.den(*args)
        if d == 0:
            raise DenominatorVanishes(f"denominator vanishes at {dict(point)}")
        return _to_fraction(self.num(*args)) / _to_fraction(d)

    def substitute(self, var: str, value: "RatFun") -> "RatFun":
        return rf_substitute(self, var, value)

    def degree(self) -> int:
        """Total degree (numerator minus denominator)."""
        return _total_degree(self.num) - _total_degree(self.den)

    # serialization
    def to_json(self):
        return {"num": _poly_to_json(self.num), "den": _poly_to_json(self.den)}

    @classmethod
    def from_json(cls, data) -> "RatFun":
        return cls(_poly_from_json(data["num"]), _poly_from_json(data["den"]))

    def __repr__(self):
        return f"RatFun({self})"

    def __str__(self):
        if self.den.is_one():
            return str(self.num)
        return f"({self.num})/({self.den})"


def _total_degree(p) -> int:
    if p.is_zero():
        return -1
    return max(sum(e) for e in p.to_dict())


def _as_poly(p):
    if isinstance(p, flint.fmpq_mpoly):
        return p
    if isinstance(p, (int, Fraction, flint.fmpq, flint.fmpz)):
        q = _to_fraction(p)
        return _CTX.from_dict({(0, 0, 0): flint.fmpq(q.numerator, q.denominator)} if q else {})
    raise ContractViolation(f"cannot build a polynomial from {p!r}")


def _coerce(value):
    if isinstance(value, RatFun):
        return value
    if isinstance(value, (int, Fraction, flint.fmpq, flint.fmpz)):
        return RatFun.const(value)
    return NotImplemented


RF_ZERO = RatFun.const(0)
RF_ONE = RatFun.const(1)
X = RatFun.var("x")
Y = RatFun.var("y")
Z = RatFun.var("z")


def _poly_substitute(p, index: int, value: RatFun) -> RatFun:
    """Substitute a rational function for one variable of a polynomial."""
    if value.den.is_one():
        args = list(_CTX.gens())
        args[index] = value.num
        return RatFun(p.compose(*args), None)
    # group by the power of the substituted variable and clear denominators
    by_power: Dict[int, dict] = {}
    for exp, c in p.to_dict().items():
        k = exp[index]
        rest = list(exp)
        rest[index] = 0
        by_power.setdefault(k, {})[tuple(rest)] = c
    top = max(by_power) if by_power else 0
    num = _POLY_ZERO
    for k, terms in by_power.items():
        num = num + _CTX.from_dict(terms) * value.num ** k * value.den ** (top - k)
    return RatFun(num, value.den ** top)


def rf_substitute(f: RatFun, var: str, value: RatFun) -> RatFun:
    """Replace ``var`` by ``value`` in ``f``.

    Raises :class:`DenominatorVanishes` when the denominator becomes the zero
    function, which is how a pole along the substitution locus shows up.
    """
    if var not in VARIABLES:
        raise ContractViolation(f"unknown variable {var!r}")
    value = _coerce(value)
    if value is NotImplemented:
        raise ContractViolation("substitution value must be a RatFun or rational")
    index = VARIABLES.index(var)
    den = _poly_substitute(f.den, index, value)
    if den.is_zero():
        raise DenominatorVanishes(f"denominator vanishes under {var} -> {value}")
    num = _poly_substitute(f.num, index, value)
    return num / den


# ---------------------------------------------------------------------------
# Truncated power series
# ---------------------------------------------------------------------------

class PowerSeries:
    """Truncated power series ``sum_k coeffs[k] s^k`` modulo ``s^order``.

    Coefficients may be any exact commutative ring elements supporting ``+``,
    ``*`` and division by integers (Fraction and RatFun both qualify).  The
    ``ring`` string is only a tag used to refuse mixing series from different
    rings.
    """

    __slots__ = ("coeffs", "order", "ring")

    def __init__(self, coeffs: Iterable, order: int, ring: str = "QQ"):
        if not isinstance(order, int) or order < 1:
            raise ContractViolation("truncation order must be a positive integer")
        coeffs = list(coeffs)[:order]
        zero = _ring_zero(ring)
        coeffs += [zero] * (order - len(coeffs))
        object.__setattr__(self, "coeffs", tuple(coeffs))
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "ring", ring)

    def __setattr__(self, name, value):
        raise AttributeError("PowerSeries is immutable")

    @classmethod
    def variable(cls, order: int, ring: str = "QQ"):
        """The series ``s``."""
        return cls([_ring_zero(ring), _ring_one(ring)], order, ring)

    @classmethod
    def constant(cls, value, order: int, ring: str = "QQ"):
        return cls([value], order, ring)

    def __getitem__(self, k):
        return self.coeffs[k]

    def _compatible(self, other):
        if not isinstance(other, PowerSeries):
            return NotImplemented
        if other.ring != self.ring:
            raise ContractViolation(f"ring mismatch: {self.ring} vs {other.ring}")
        return min(self.order, other.order)

    def __add__(self, other):
        order = self._compatible(other)
        if order is NotImplemented:
            return PowerSeries([self.coeffs[0] + other, *self.coeffs[1:]], self.order, self.ring)
        return PowerSeries([a + b for a, b in zip(self.coeffs[:order], other.coeffs[:order])],
                           order, self.ring)

    __radd__ = __add__

    def __neg__(self):
        return PowerSeries([-a for a in self.coeffs], self.order, self.ring)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        order = self._compatible(other)
        if order is NotImplemented:
            return PowerSeries([a * other for a in self.coeffs], self.order, self.ring)
        out = [_ring_zero(self.ring)] * order
        for i, a in enumerate(self.coeffs[:order]):
            if not a:
                continue
            for j in range(order - i):
                b = other.coeffs[j]
                if b:
                    out[i + j] = out[i + j] + a * b
        return PowerSeries(out, order, self.ring)

    __rmul__ = __mul__

    def scale_variable(self, factor) -> "PowerSeries":
        """``f(s) -> f(factor * s)``."""
        out, power = [], _ring_one(self.ring)
        for a in self.coeffs:
            out.append(a * power)
            power = power * factor
        return PowerSeries(out, self.order, self.ring)

    def shift(self, k: int) -> "PowerSeries":
        """Multiply by ``s^k`` (k >= 0) and truncate."""
        return PowerSeries([_ring_zero(self.ring)] * k + list(self.coeffs), self.order, self.ring)

    def compose(self, inner: "PowerSeries") -> "PowerSeries":
        """``self(inner(s))``; ``inner`` must have zero constant term."""
        order = self._compatible(inner)
        if inner.coeffs[0]:
            raise ContractViolation("composition requires an inner series without constant term")
        result = PowerSeries.constant(self.coeffs[order - 1], order, self.ring)
        for a in reversed(self.coeffs[:order - 1]):
            result = result * inner + a
        return result

    def __eq__(self, other):
        if not isinstance(other, PowerSeries):
            return NotImplemented
        return self.ring == other.ring and self.order == other.order and self.coeffs == other.coeffs

    def __repr__(self):
        return f"PowerSeries({list(self.coeffs)}, order={self.order}, ring={self.ring!r})"


_RING_UNITS: Dict[str, Tuple[Callable[[], object], Callable[[], object]]] = {
    "QQ": (lambda: Fraction(0), lambda: Fraction(1)),
    "QQ(x,y,z)": (lambda: RF_ZERO, lambda: RF_ONE),
}


def _ring_zero(ring):
    try:
        return _RING_UNITS[ring][0]()
    except KeyError:
        raise ContractViolation(f"unknown coefficient ring {ring!r}") from None


def _ring_one(ring):
    return _RING_UNITS[ring][1]()


def ps_exp(a: PowerSeries) -> PowerSeries:
    """Exponential of a series with zero constant term.

    Uses the recurrence ``m b_m = sum_{k=1}^m k a_k b_{m-k}`` which follows from
    ``B' = A' B`` and involves only exact divisions by integers.
    """
    if a.coeffs[0]:
        raise ContractViolation("ps_exp requires a zero constant term")
    b = [_ring_one(a.ring)]
    for m in range(1, a.order):
        acc = _ring_zero(a.ring)
        for k in range(1, m + 1):
            if a.coeffs[k]:
                acc = acc + a.coeffs[k] * b[m - k] * k
        b.append(acc / m)
    return PowerSeries(b, a.order, a.ring)


def ps_log(a: PowerSeries) -> PowerSeries:
    """Logarithm of a series with constant term one."""
    if a.coeffs[0] != 1:
        raise ContractViolation("ps_log requires constant term 1")
    # L' = A'/A, solved term by term: m a_m = sum_{k=1}^m k l_k a_{m-k}
    logs = [_ring_zero(a.ring)]
    for m in range(1, a.order):
        acc = a.coeffs[m] * m
        for k in range(1, m):
            acc = acc - logs[k] * a.coeffs[m - k] * k
        logs.append(acc / m)
    return PowerSeries(logs, a.order, a.ring)


Number = Union[int, Fraction, RatFun]
