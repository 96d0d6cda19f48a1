"""Degenerate double affine Hecke algebra generators on the nested module.

The generators ``D_{k,l}`` with ``|k| <= 1`` are rescaled Calabi-Yau Hecke
operators.  Higher ``D_{+-l,0}`` come from the commutator recursion and the
diagonal ``E_l`` from a generating series.  The ``check_*`` functions return
plain-dict reports whose ``violations`` lists are empty exactly when the
relations hold.

Every relation is evaluated only on the source levels where all of its words
are defined under the level cap, so truncation never produces a spurious
residual.  Levels below zero are the zero space and need no margin.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .conventions import Convention
from .errors import CapExceeded, ContractViolation, DenominatorVanishes
from .exact_algebra import (RF_ONE, RF_ZERO, PowerSeries, RatFun, ps_exp, ps_log)
from .hecke import Basis, GradedOperator, basis, commutator, g0_direct
from .localization import WeightDict

X = RatFun.var("x")
Y = RatFun.var("y")
RING = "QQ(x,y,z)"

Key = Tuple[int, int]


@dataclass
class SHContext:
    """Rank, level cap, conventions and the central parameters."""

    r: int
    N: int
    convention: Convention = field(default_factory=Convention)
    weights: WeightDict = field(default_factory=WeightDict)

    def __post_init__(self):
        if self.r < 1 or self.N < 1:
            raise ContractViolation("need r >= 1 and N >= 1")
        self.kappa = -Y / X
        self.xi = RF_ONE - self.kappa
        self._central: Dict[int, RatFun] = {}

    @property
    def basis(self) -> Basis:
        return basis(self.r, "nested")

    def epsilon(self, a: int) -> RatFun:
        return self.xi * (a - 1)

    def central(self, l: int) -> RatFun:
        """Power sum ``sum_a epsilon_a^l`` (equal to r for l = 0)."""
        if l not in self._central:
            if l == 0:
                self._central[l] = RatFun.const(self.r)
            else:
                total = RF_ZERO
                for a in range(1, self.r + 1):
                    total = total + self.epsilon(a) ** l
                self._central[l] = total
        return self._central[l]

    def identity(self) -> GradedOperator:
        return GradedOperator.build(0, self.basis, self.N, lambda n, mu: [(mu, RF_ONE)])


@dataclass
class DGenerator:
    indices: Key
    operator: GradedOperator

    @property
    def shift(self) -> int:
        return self.operator.shift


# ---------------------------------------------------------------------------
# Generators
# ---------------------------------------------------------------------------

def lowering_sign(ctx: SHContext) -> int:
    return -1 if (ctx.r + ctx.convention.lowering_sign_shift) % 2 else 1


def build_generators(ctx: SHContext, l_max: int) -> Dict[Key, GradedOperator]:
    """``D_{1,l}``, ``D_{0,l}`` and ``D_{-1,l}`` for ``0 <= l <= l_max``.

    ``D_{1,l} = x^(1-l) y g_{1,l}``, ``D_{0,l} = x^(1-l) g_{0,l-1}`` (l >= 1)
    and ``D_{-1,l} = sign * x^(-l) g_{-1,l}`` with the convention's sign.
    """
    if l_max < 0:
        raise ContractViolation("l_max must be nonnegative")
    gens: Dict[Key, GradedOperator] = {}
    conv, w, r, N = ctx.convention, ctx.weights, ctx.r, ctx.N
    sign = lowering_sign(ctx)
    for l in range(l_max + 1):
        gens[(1, l)] = g0_direct(1, l, N, r, conv, w).scale(X ** (1 - l) * Y)
        gens[(-1, l)] = g0_direct(-1, l, N, r, conv, w).scale(X ** (-l) * sign)
        if l >= 1:
            gens[(0, l)] = g0_direct(0, l - 1, N, r, conv, w).scale(X ** (1 - l))
    return gens


def derive_higher_generators(gens: Dict[Key, GradedOperator], l_max: int) -> Dict[Key, GradedOperator]:
    """``D_{l,0}`` and ``D_{-l,0}`` for ``1 <= l <= l_max`` by the recursion

    ``[D_{1,1}, D_{l,0}] = l D_{l+1,0}`` and ``[D_{-l,0}, D_{-1,1}] = l D_{-l-1,0}``.
    """
    for key in ((1, 0), (1, 1), (-1, 0), (-1, 1)):
        if key not in gens:
            raise ContractViolation(f"generator {key} missing")
    cap = gens[(1, 0)].cap
    if l_max > cap:
        raise CapExceeded(f"D_({l_max},0) shifts by {l_max} levels but the cap is {cap}")
    out = {(1, 0): gens[(1, 0)], (-1, 0): gens[(-1, 0)]}
    for l in range(1, l_max):
        out[(l + 1, 0)] = commutator(gens[(1, 1)], out[(l, 0)]).scale(Fraction(1, l))
        out[(-l - 1, 0)] = commutator(out[(-l, 0)], gens[(-1, 1)]).scale(Fraction(1, l))
    for key, op in out.items():
        if not op.levels:
            raise CapExceeded(f"D_{key} has no level inside the cap {cap}")
    return out


# ---------------------------------------------------------------------------
# The E_l series
# ---------------------------------------------------------------------------

def g_series(l: int, a, order: int) -> PowerSeries:
    """``G_l(1 + a s)`` where ``G_0(u) = -log u`` and ``G_l(u) = (u^-l - 1)/l``."""
    arg = PowerSeries([RF_ONE, a], order, RING)
    log = ps_log(arg)
    if l == 0:
        return -log
    return (ps_exp(log * (-l)) - RF_ONE) * Fraction(1, l)


def phi_series(ctx: SHContext, l: int, order: int) -> PowerSeries:
    """``s^l G_l(1 + xi s)``: the series multiplying the central parameter ``c_l``."""
    return g_series(l, ctx.xi, order).shift(l)


def varphi_series(ctx: SHContext, l: int, order: int) -> PowerSeries:
    """``sum over q in {1, -xi, -kappa} of s^l (G_l(1 - q s) - G_l(1 + q s))``."""
    total = PowerSeries([], order, RING)
    for q in (RF_ONE, -ctx.xi, -ctx.kappa):
        total = total + (g_series(l, -q, order) - g_series(l, q, order))
    return total.shift(l)


def compute_E(ctx: SHContext, gens: Dict[Key, GradedOperator], l_top: int) -> Dict[int, GradedOperator]:
    """Diagonal operators ``E_0 .. E_l_top``.

    All ``D_{0,m}`` are diagonal, so the exponentials are expanded one basis
    vector at a time with scalar eigenvalues.  The truncation order is
    ``l_top + 2``.
    """
    order = l_top + 2
    central = PowerSeries([], order, RING)
    for l in range(order):
        central = central + phi_series(ctx, l, order) * ctx.central(l)
    # varphi_l starts at s^(l+3); drop the ones that vanish to this order
    varphis = {}
    for l in range(order):
        series = varphi_series(ctx, l, order)
        if any(series.coeffs):
            if (0, l + 1) not in gens:
                raise ContractViolation(f"D_(0,{l + 1}) is needed for E_{l_top}")
            varphis[l] = series
    for series in [central, *varphis.values()]:
        if series[0]:
            raise ContractViolation("generating series must start at order s")
    sign = ctx.convention.varphi_sign
    central_exp = ps_exp(central)
    if central_exp[0] != 1:
        raise ContractViolation("exponential must have constant term 1")
    cap = ctx.N
    results: Dict[int, Dict[int, Dict[Tuple[int, int], RatFun]]] = {l: {} for l in range(l_top + 1)}
    for n in range(cap + 1):
        for l in results:
            results[l][n] = {}
        for col, mu in enumerate(ctx.basis.level(n)):
            diag = PowerSeries([], order, RING)
            for l in varphis:
                eig = gens[(0, l + 1)].blocks[n].get((col, col), RF_ZERO)
                if eig:
                    diag = diag + varphis[l] * (eig * sign)
            total = central_exp * ps_exp(diag)
            for l in results:
                results[l][n][(col, col)] = total[l + 1] / ctx.xi
    return {l: GradedOperator(0, blocks, ctx.basis, cap) for l, blocks in results.items()}


# ---------------------------------------------------------------------------
# Relation checks
# ---------------------------------------------------------------------------

def _residual(name: str, residual: GradedOperator, params=None) -> dict:
    if not residual.levels:
        raise CapExceeded(f"relation {name} {params or ''} has no level inside the cap {residual.cap}")
    bad = []
    for n in residual.levels:
        for row, col, v in residual.nonzero_entries(n):
            bad.append({"level": n, "row": row, "col": col, "value": str(v)})
    out = {"relation": name, "window": residual.levels, "ok": not bad,
           "residuals": bad[:5], "residual_count": len(bad)}
    if params is not None:
        out["params"] = params
    return out


def _needed_l(suite: Sequence[str], sha_max: int, shc_max: int) -> int:
    return max(2 * sha_max - 1, shc_max, 3)


RELATION_SUITES = ("diagonal", "cubic", "raise-lower", "serre")


def check_relations(ctx: SHContext, suite: Iterable[str] = RELATION_SUITES,
                    sha_max: int = 3, shc_max: int = 4,
                    gens: Optional[Dict[Key, GradedOperator]] = None,
                    E: Optional[Dict[int, GradedOperator]] = None) -> dict:
    """Check the defining relations on their interior windows.

    ``suite`` selects among ``"diagonal"`` (diagonal generators against
    raising and lowering ones, indices up to ``sha_max``), ``"cubic"`` (the
    two cubic relations), ``"raise-lower"`` (commutators of lowering and
    raising generators against ``E``, ``k + l <= shc_max``) and ``"serre"``
    (the nested-commutator relations).
    """
    suite = tuple(suite)
    unknown = set(suite) - set(RELATION_SUITES)
    if unknown:
        raise ContractViolation(f"unknown relation suites {sorted(unknown)}")
    l_need = _needed_l(suite, sha_max, shc_max)
    if gens is None:
        gens = build_generators(ctx, l_need)
    D = gens
    results: List[dict] = []

    if "diagonal" in suite:
        for l in range(1, sha_max + 1):
            for k in range(1, sha_max + 1):
                results.append(_residual("diagonal-diagonal", commutator(D[(0, l)], D[(0, k)]),
                                         {"l": l, "k": k}))
        for l in range(1, sha_max + 1):
            for k in range(0, sha_max + 1):
                lhs = commutator(D[(0, l)], D[(1, k)])
                results.append(_residual("diagonal-raising", lhs - D[(1, l + k - 1)],
                                         {"l": l, "k": k}))
                lhs = commutator(D[(0, l)], D[(-1, k)])
                results.append(_residual("diagonal-lowering", lhs + D[(-1, l + k - 1)],
                                         {"l": l, "k": k}))

    if "cubic" in suite:
        kap = ctx.kappa
        coef = kap * (kap - 1)
        for sgn in (1, -1):
            d0, d1, d2, d3 = (D[(sgn, l)] for l in range(4))
            c10 = commutator(d1, d0)
            expr = commutator(d2, d1).scale(3) - commutator(d3, d0) + c10
            if sgn == 1:
                square = d0 @ d0
            elif ctx.convention.shb_variant == "lowering-square":
                square = -(d0 @ d0)
            else:
                square = -(D[(1, 0)] @ D[(1, 0)])
            if square.shift != c10.shift:
                # a square of the wrong degree cannot be added; record the failure
                results.append({"relation": "cubic-lowering", "window": [], "ok": False,
                                "residuals": [{"detail": "degree mismatch in the quadratic term"}],
                                "residual_count": 1})
                continue
            expr = expr + (square + c10).scale(coef)
            results.append(_residual("cubic-raising" if sgn == 1 else "cubic-lowering", expr))

    if "raise-lower" in suite:
        if E is None:
            E = compute_E(ctx, D, shc_max)
        for k in range(0, shc_max + 1):
            for l in range(0, shc_max + 1 - k):
                lhs = commutator(D[(-1, k)], D[(1, l)])
                results.append(_residual("raise-lower", lhs - E[k + l], {"k": k, "l": l}))

    if "serre" in suite:
        for sgn in (1, -1):
            d0, d1 = D[(sgn, 0)], D[(sgn, 1)]
            results.append(_residual("serre-raising" if sgn == 1 else "serre-lowering",
                                     commutator(d0, commutator(d0, d1))))

    for res in results:
        levels = res["window"]
        res["window"] = [min(levels), max(levels)] if levels else []
        res.update(r=ctx.r, N=ctx.N, status="ok" if res["ok"] else "fail")
    violations = [r for r in results if not r["ok"]]
    return {"schema": 1, "check": "relations", "r": ctx.r, "cap": ctx.N,
            "convention": ctx.convention.to_json(), "checked": len(results),
            "results": results, "violations": violations}


# ---------------------------------------------------------------------------
# Heisenberg subalgebra
# ---------------------------------------------------------------------------

def heisenberg_modes(ctx: SHContext, higher: Dict[Key, GradedOperator], l_max: int):
    """``(lowering, raising)`` dicts with ``lowering[l] = b_l``, ``raising[l] = b_{-l}``."""
    lower, raise_ = {}, {}
    for l in range(1, l_max + 1):
        if ctx.convention.heisenberg == "balanced":
            lower[l] = higher[(-l, 0)].scale(X ** l)
        else:
            lower[l] = higher[(-l, 0)].scale((-X) ** (-l))
        raise_[l] = higher[(l, 0)].scale(Y ** (-l))
    return lower, raise_


def check_heisenberg(ctx: SHContext, l_max: int,
                     gens: Optional[Dict[Key, GradedOperator]] = None) -> dict:
    """``[b_l, b_{-k}] = l kappa^-1 delta_{l,k} c_0`` and same-sign commutativity."""
    if gens is None:
        gens = build_generators(ctx, 1)
    higher = derive_higher_generators(gens, l_max)
    lower, raise_ = heisenberg_modes(ctx, higher, l_max)
    ident = ctx.identity()
    scalar = ctx.kappa.inverse() * ctx.central(0)
    results = []
    for l in range(1, l_max + 1):
        for k in range(1, l_max + 1):
            comm = commutator(lower[l], raise_[k])
            if l == k:
                comm = comm - ident.scale(scalar * l)
            results.append(_residual("lowering-raising", comm, {"l": l, "k": k}))
    for l in range(1, l_max + 1):
        for k in range(l + 1, l_max + 1):
            results.append(_residual("lowering-lowering", commutator(lower[l], lower[k]),
                                     {"l": l, "k": k}))
            results.append(_residual("raising-raising", commutator(raise_[l], raise_[k]),
                                     {"l": l, "k": k}))
    violations = [r for r in results if not r["ok"]]
    return {"schema": 1, "check": "heisenberg", "r": ctx.r, "cap": ctx.N,
            "convention": ctx.convention.to_json(), "checked": len(results),
            "results": results, "violations": violations}


# ---------------------------------------------------------------------------
# Vacuum and cyclicity
# ---------------------------------------------------------------------------

def _reachable_exact(ctx, raising, n_max):
    """Rank of the span of raising words applied to the vacuum, level by level."""
    ranks = []
    current = [{0: RF_ONE}]
    for n in range(1, n_max + 1):
        images = []
        for v in current:
            for op in raising:
                w = op.apply(n - 1, v)
                if w:
                    images.append(w)
        current = _independent_exact(images)
        ranks.append(len(current))
    return ranks


def _independent_exact(vectors):
    kept, pivots = [], {}
    for vec in vectors:
        v = dict(vec)
        for p in sorted(pivots):
            if p in v:
                factor = v[p]
                for k, w in pivots[p].items():
                    v[k] = v.get(k, RF_ZERO) - factor * w
                v = {k: c for k, c in v.items() if c}
        if v:
            p = min(v)
            inv = v[p].inverse()
            pivots[p] = {k: c * inv for k, c in v.items()}
            kept.append(vec)
    return kept


def _reachable_at_point(raising, n_max, point):
    evaluated = []
    for op in raising:
        ev = {}
        for n, block in op.blocks.items():
            ev[n] = {k: v.evaluate(point) for k, v in block.items()}
        evaluated.append(ev)
    ranks = []
    current = [{0: Fraction(1)}]
    for n in range(1, n_max + 1):
        images = []
        for v in current:
            for ev in evaluated:
                out: Dict[int, Fraction] = {}
                for (row, col), c in ev[n - 1].items():
                    if col in v:
                        out[row] = out.get(row, Fraction(0)) + c * v[col]
                out = {k: c for k, c in out.items() if c}
                if out:
                    images.append(out)
        current = _independent_fractions(images)
        ranks.append(len(current))
    return ranks


def _independent_fractions(vectors):
    kept, pivots = [], {}
    for vec in vectors:
        v = dict(vec)
        for p in sorted(pivots):
            if p in v:
                factor = v[p]
                for k, w in pivots[p].items():
                    v[k] = v.get(k, Fraction(0)) - factor * w
                v = {k: c for k, c in v.items() if c}
        if v:
            p = min(v)
            pivots[p] = {k: c / v[p] for k, c in v.items()}
            kept.append(vec)
    return kept


def check_vacuum_and_cyclicity(ctx: SHContext, n_max: int, l_vac: int = 4,
                               method: str = "exact", seed: int = 0, retries: int = 5,
                               gens: Optional[Dict[Key, GradedOperator]] = None) -> dict:
    """Vacuum annihilation and level-wise cyclicity under the raising generators.

    The raising words use ``D_{1,l}`` for ``0 <= l <= n_max``.  With
    ``method="evaluation"`` ranks are computed at random rational points.  A
    full rank at any point proves full rank over Q(x, y); the result is
    accepted only when two independent points agree, and a point where some
    entry has a pole or the rank drops is retried (up to ``retries`` times)
    before falling back to the exact computation.
    """
    if n_max >= ctx.N:
        raise ContractViolation("n_max must be below the level cap")
    l_gen = max(n_max, l_vac, 1)
    if gens is None:
        gens = build_generators(ctx, l_gen)
    violations = []
    # vacuum annihilation
    vac_checked = 0
    higher = derive_higher_generators(gens, min(l_vac, ctx.N))
    for l in range(1, l_vac + 1):
        for op_key, op in (((0, l), gens.get((0, l))), ((-l, 0), higher.get((-l, 0)))):
            if op is None:
                continue
            vac_checked += 1
            image = op.apply(0, {0: RF_ONE})
            if image:
                violations.append({"check": "vacuum", "generator": list(op_key),
                                   "detail": f"image {image}"})
    raising = [gens[(1, l)] for l in range(0, n_max + 1)]
    dims = [ctx.basis.dim(n) for n in range(1, n_max + 1)]
    ranks = None
    used = method
    if method == "evaluation":
        rng = random.Random(seed)
        agreeing = []
        for _ in range(retries):
            point = {"x": Fraction(rng.randint(1, 97), rng.randint(1, 89)),
                     "y": Fraction(-rng.randint(1, 97), rng.randint(1, 89))}
            try:
                got = _reachable_at_point(raising, n_max, point)
            except DenominatorVanishes:
                continue
            if got == dims:
                agreeing.append(got)
                if len(agreeing) == 2:
                    ranks = got
                    break
        if ranks is None:
            used = "exact"
    elif method != "exact":
        raise ContractViolation("method must be 'exact' or 'evaluation'")
    if ranks is None:
        ranks = _reachable_exact(ctx, raising, n_max)
    for n, (rank, dim) in enumerate(zip(ranks, dims), start=1):
        if rank != dim:
            violations.append({"check": "cyclicity", "level": n,
                               "detail": f"reachable rank {rank} < dimension {dim}"})
    return {"schema": 1, "check": "vacuum-cyclicity", "r": ctx.r, "cap": ctx.N, "n_max": n_max,
            "method": used, "checked": vac_checked + len(dims), "vacuum_checked": vac_checked, "ranks": ranks, "dims": dims,
            "violations": violations}
