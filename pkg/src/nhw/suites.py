"""Verification suites shared by the command line and the acceptance tests.

Each suite takes explicit bounds and a :class:`Convention` and returns a
report dict with a ``violations`` list, a ``checked`` count and the elapsed
time.  Suites that loop over ranks farm the ranks out to worker processes.
"""

from __future__ import annotations

import os
import time
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Dict, List, Optional, Sequence

from .conventions import Convention
from .daha import SHContext, check_heisenberg, check_relations, check_vacuum_and_cyclicity
from .errors import CapExceeded, DenominatorVanishes, ZeroWeight
from .hecke import s_divisibility_check, two_path_check
from .localization import (WeightDict, verify_correspondence_points, verify_dimensions,
                           verify_fixed_locus)
from .partitions import macmahon_series, nested_count_series, phi0_is_injective


def worker_count(requested: Optional[int] = None) -> int:
    """Explicit request, else ``NHW_WORKERS``, else the number of CPUs."""
    if requested:
        return max(1, int(requested))
    env = os.environ.get("NHW_WORKERS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            pass
    return os.cpu_count() or 1


def _map(fn: Callable, args: Sequence[tuple], workers: int) -> List:
    if workers <= 1 or len(args) <= 1:
        return [fn(*a) for a in args]
    with ProcessPoolExecutor(max_workers=min(workers, len(args))) as pool:
        futures = [pool.submit(fn, *a) for a in args]
        return [f.result() for f in futures]


def _finish(name: str, parts: List[dict], start: float, **extra) -> dict:
    violations, checked = [], 0
    for p in parts:
        checked += p.get("checked", 0)
        for v in p.get("violations", []):
            violations.append({"source": p.get("lemma") or p.get("check"), "r": p.get("r"), **v})
    out = {"schema": 1, "suite": name, "checked": checked, "violations": violations,
           "parts": [{k: v for k, v in p.items() if k not in ("violations", "results")}
                     | {"violation_count": len(p.get("violations", []))} for p in parts],
           "seconds": round(time.perf_counter() - start, 3)}
    out.update(extra)
    return out


def _internal_error(exc: Exception, **context) -> dict:
    return {"check": "internal", "checked": 1, **context,
            "violations": [{"detail": f"{type(exc).__name__}: {exc}"}]}


# ---------------------------------------------------------------------------

def character_suite(r_min: int = 1, r_max: int = 4, N: int = 12, **_) -> dict:
    start = time.perf_counter()
    parts = []
    for r in range(r_min, r_max + 1):
        enum, prod = nested_count_series(r, N), macmahon_series(r, N)
        parts.append({"check": "character", "r": r, "checked": N + 1,
                      "enumeration": enum, "product": prod,
                      "violations": [] if enum == prod else
                      [{"detail": f"enumeration {enum} != product {prod}"}]})
    return _finish("character", parts, start)


def _dims_task(r, n_max, pair_n_max, conv):
    return verify_dimensions(r, n_max, pair_n_max, conv)


def dimension_suite(r_min=1, r_max=3, n_max=8, pair_n_max=6, convention=Convention(), workers=1, **_):
    start = time.perf_counter()
    res = _map(_dims_task, [(r, n_max, pair_n_max, convention) for r in range(r_min, r_max + 1)], workers)
    return _finish("dimensions", [p for rs in res for p in rs], start)


def _fixed_task(r, n_max, conv):
    return verify_fixed_locus(r, n_max, conv)


def fixed_locus_suite(r_min=1, r_max=3, n_max=8, convention=Convention(), workers=1, **_):
    start = time.perf_counter()
    res = _map(_fixed_task, [(r, n_max, convention) for r in range(r_min, r_max + 1)], workers)
    return _finish("fixed-lemmas", [p for rs in res for p in rs], start)


def _corr_task(r, n_max, conv):
    return verify_correspondence_points(r, n_max, conv)


def correspondence_suite(r_min=1, r_max=3, n_max=6, convention=Convention(), workers=1, **_):
    start = time.perf_counter()
    res = _map(_corr_task, [(r, n_max, convention) for r in range(r_min, r_max + 1)], workers)
    return _finish("correspondence", [p for rs in res for p in rs], start)


def injectivity_suite(r_min=1, r_max=4, n_max=10, **_):
    start = time.perf_counter()
    parts = []
    for r in range(r_min, r_max + 1):
        for n in range(0, n_max + 1):
            ok, coll = phi0_is_injective(r, n)
            parts.append({"check": "injectivity", "r": r, "n": n, "checked": 1,
                          "violations": [{"mu": a.to_json(), "lambda": b.to_json()} for a, b in coll]})
    return _finish("injectivity", parts, start)


def _guard(fn, *args, **context):
    try:
        return fn(*args)
    except (ZeroWeight, DenominatorVanishes, CapExceeded) as exc:
        return _internal_error(exc, **context)


def _two_path_task(r, cap, l_max, conv, weights):
    return _guard(two_path_check, r, cap, l_max, conv, weights, r=r)


def two_path_suite(r_min=1, r_max=3, cap=5, l_max=3, convention=Convention(), weights=WeightDict(),
                   workers=1, **_):
    start = time.perf_counter()
    res = _map(_two_path_task, [(r, cap, l_max, convention, weights) for r in range(r_min, r_max + 1)],
               workers)
    return _finish("two-path", res, start)


def _sdiv_task(r, cap, l_max, conv, weights):
    return _guard(s_divisibility_check, r, cap, l_max, conv, weights, r=r)


def divisibility_suite(r_min=1, r_max=3, cap=4, l_max=2, convention=Convention(), weights=WeightDict(),
                       workers=1, **_):
    start = time.perf_counter()
    res = _map(_sdiv_task, [(r, cap, l_max, convention, weights) for r in range(r_min, r_max + 1)],
               workers)
    return _finish("s-divisibility", res, start)


def _relations_task(r, cap, sha_max, shc_max, suites, conv, weights):
    def run():
        ctx = SHContext(r, cap, conv, weights)
        return check_relations(ctx, suites, sha_max=sha_max, shc_max=shc_max)
    return _guard(run, r=r)


def relations_suite(r_min=1, r_max=3, cap=6, sha_max=3, shc_r_max=2, shc_max=4,
                    convention=Convention(), weights=WeightDict(), workers=1, **_):
    """Diagonal, cubic and Serre relations for r <= r_max; raise-lower for r <= shc_r_max."""
    start = time.perf_counter()
    tasks = []
    for r in range(r_min, r_max + 1):
        suites = ["diagonal", "cubic", "serre"]
        if r <= shc_r_max:
            suites.append("raise-lower")
        tasks.append((r, cap, sha_max, shc_max, tuple(suites), convention, weights))
    res = _map(_relations_task, tasks, workers)
    return _finish("daha", res, start)


def _heisenberg_task(r, cap, l_max, conv, weights):
    return _guard(lambda: check_heisenberg(SHContext(r, cap, conv, weights), l_max), r=r)


def heisenberg_suite(r_min=1, r_max=2, cap=6, l_max=2, convention=Convention(), weights=WeightDict(),
                     workers=1, **_):
    start = time.perf_counter()
    res = _map(_heisenberg_task, [(r, cap, l_max, convention, weights) for r in range(r_min, r_max + 1)],
               workers)
    return _finish("heisenberg", res, start)


def _vacuum_task(r, cap, n_max, l_vac, conv, weights, method):
    return _guard(lambda: check_vacuum_and_cyclicity(SHContext(r, cap, conv, weights), n_max,
                                                     l_vac=l_vac, method=method), r=r)


def vacuum_suite(r_min=1, r_max=3, cap=6, n_max=4, l_vac=4, convention=Convention(), weights=WeightDict(),
                 method="exact", workers=1, **_):
    start = time.perf_counter()
    res = _map(_vacuum_task,
               [(r, cap, n_max, l_vac, convention, weights, method) for r in range(r_min, r_max + 1)],
               workers)
    return _finish("vacuum", res, start)


SUITES: Dict[str, Callable[..., dict]] = {
    "character": character_suite,
    "dimensions": dimension_suite,
    "fixed-lemmas": fixed_locus_suite,
    "correspondence": correspondence_suite,
    "injectivity": injectivity_suite,
    "two-path": two_path_suite,
    "s-divisibility": divisibility_suite,
    "daha": relations_suite,
    "heisenberg": heisenberg_suite,
    "vacuum": vacuum_suite,
}
