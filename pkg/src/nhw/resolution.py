"""Convention resolution: run the verification suites under every candidate.

The grid varies the arm/leg offset, the definition of the added-box weight
and the quadratic term of the lowering cubic relation.  Each of the eight
triples is run through the dimension, fixed-locus, correspondence,
injectivity, two-path, divisibility, relation and Heisenberg suites at the
acceptance bounds.  The run is deterministic, so repeating it reproduces the
same table.

:func:`single_flip_evidence` covers the remaining, non-grid choices: starting
from the frozen convention it flips one of them at a time and records which
relation suites break.
"""

from __future__ import annotations

import itertools
from dataclasses import replace
from typing import Dict, List, Optional

from .conventions import SHB_CHOICES, TAU_CHOICES, Convention, frozen
from .localization import WeightDict
from .suites import SUITES

GRID_SUITES = ("dimensions", "fixed-lemmas", "correspondence", "injectivity",
               "two-path", "s-divisibility", "daha", "heisenberg")


def grid() -> List[Convention]:
    base = frozen()
    return [replace(base, arm_leg_offset=o, tau=t, shb_variant=s)
            for o, t, s in itertools.product((0, -1), TAU_CHOICES, SHB_CHOICES)]


def run_grid(suites=GRID_SUITES, workers: int = 1, bounds: Optional[Dict[str, dict]] = None) -> dict:
    """Violation counts per triple and suite, plus the list of passing triples."""
    bounds = bounds or {}
    rows = []
    for conv in grid():
        counts = {}
        for name in suites:
            rep = SUITES[name](convention=conv, workers=workers, **bounds.get(name, {}))
            counts[name] = len(rep["violations"])
        rows.append({"triple": list(conv.triple), "violations": counts,
                     "passes": all(v == 0 for v in counts.values())})
    passing = [row["triple"] for row in rows if row["passes"]]
    return {"schema": 1, "check": "convention-grid", "suites": list(suites), "rows": rows,
            "passing": passing, "frozen": list(frozen().triple)}


def grid_summary(report: dict, exclude=()) -> List[list]:
    """Triples whose only violations lie in the suites listed in ``exclude``."""
    return [row["triple"] for row in report["rows"]
            if all(v == 0 for k, v in row["violations"].items() if k not in exclude)]


def single_flip_evidence(workers: int = 1) -> dict:
    """Flip each non-grid choice of the frozen convention and rerun the relation suites."""
    base = frozen()
    variants = {
        "content_sign": replace(base, content_sign=-base.content_sign),
        "lowering_sign_shift": replace(base, lowering_sign_shift=1 - base.lowering_sign_shift),
        "varphi_sign": replace(base, varphi_sign=-base.varphi_sign),
        "heisenberg": replace(base, heisenberg="inverse-powers"
                              if base.heisenberg == "balanced" else "balanced"),
    }
    rows = []
    for name, conv in variants.items():
        counts = {s: len(SUITES[s](convention=conv, workers=workers)["violations"])
                  for s in ("daha", "heisenberg")}
        rows.append({"flipped": name, "violations": counts})
    negated = WeightDict.standard(-1)
    counts = {s: len(SUITES[s](convention=base, weights=negated, workers=workers)["violations"])
              for s in ("daha", "heisenberg")}
    rows.append({"flipped": "weight_dictionary_sign", "violations": counts})
    # the negated dictionary together with negated contents
    conv = replace(base, content_sign=-base.content_sign)
    counts = {s: len(SUITES[s](convention=conv, weights=negated, workers=workers)["violations"])
              for s in ("daha", "heisenberg")}
    rows.append({"flipped": "weight_dictionary_sign+content_sign", "violations": counts})
    return {"schema": 1, "check": "single-flip-evidence", "rows": rows}
