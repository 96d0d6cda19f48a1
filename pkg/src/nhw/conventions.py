"""Global sign and offset conventions.

A handful of formulas in this construction can be read in more than one way
(the offset in the arm/leg lengths, how the weight of an added box is
defined, the sign inside one of the cubic relations).  Rather than bake one
reading in, every consumer takes a :class:`Convention`.  The values that make
the whole verification suite pass are frozen in ``frozen_convention.json``
next to this file; :func:`frozen` loads them.

The resolution grid itself (which alternatives exist, and the run that picks
one) lives in :mod:`nhw.resolution`.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, fields, replace
from importlib import resources

from .errors import ContractViolation

TAU_CHOICES = ("content", "first-component")
SHB_CHOICES = ("lowering-square", "raising-square")
HEISENBERG_CHOICES = ("balanced", "inverse-powers")


@dataclass(frozen=True)
class Convention:
    """Bundle of convention choices.

    arm_leg_offset
        Constant added to both arm and leg lengths (0 or -1).
    tau
        ``"content"``: the weight of the box added by a cover is its content in
        the component it is added to.  ``"first-component"``: the same content
        formula, always evaluated as if the box sat in the first component.
    shb_variant
        Quadratic term of the lowering cubic relation: ``-D_{-1,0}^2``
        (``"lowering-square"``) or ``-D_{1,0}^2`` (``"raising-square"``).
    lowering_sign_shift
        ``D_{-1,l}`` carries the sign ``(-1)^(r + lowering_sign_shift)``.
    varphi_sign
        Sign with which the diagonal generators enter the exponential that
        defines the ``E_l``.
    content_sign
        Overall sign of box contents: a box ``(i, j)`` in component ``a`` has
        content ``content_sign * (i x + j y + (a - 1) z)``.
    heisenberg
        ``"balanced"``: ``b_l = x^l D_{-l,0}``, ``b_{-l} = y^-l D_{l,0}``.
        ``"inverse-powers"``: ``b_l = (-x)^-l D_{-l,0}``, ``b_{-l} = y^-l D_{l,0}``.
    """

    arm_leg_offset: int = 0
    tau: str = "content"
    shb_variant: str = "lowering-square"
    lowering_sign_shift: int = 0
    varphi_sign: int = -1
    content_sign: int = -1
    heisenberg: str = "balanced"

    def __post_init__(self):
        if self.arm_leg_offset not in (0, -1):
            raise ContractViolation("arm_leg_offset must be 0 or -1")
        if self.tau not in TAU_CHOICES:
            raise ContractViolation(f"tau must be one of {TAU_CHOICES}")
        if self.shb_variant not in SHB_CHOICES:
            raise ContractViolation(f"shb_variant must be one of {SHB_CHOICES}")
        if self.lowering_sign_shift not in (0, 1):
            raise ContractViolation("lowering_sign_shift must be 0 or 1")
        if self.varphi_sign not in (1, -1):
            raise ContractViolation("varphi_sign must be +1 or -1")
        if self.content_sign not in (1, -1):
            raise ContractViolation("content_sign must be +1 or -1")
        if self.heisenberg not in HEISENBERG_CHOICES:
            raise ContractViolation(f"heisenberg must be one of {HEISENBERG_CHOICES}")

    @property
    def triple(self):
        """The three choices decided by the resolution run."""
        return (self.arm_leg_offset, self.tau, self.shb_variant)

    def with_overrides(self, **kwargs) -> "Convention":
        kwargs = {k: v for k, v in kwargs.items() if v is not None}
        return replace(self, **kwargs)

    def to_json(self) -> dict:
        return asdict(self)

    @classmethod
    def from_json(cls, data: dict) -> "Convention":
        known = {f.name for f in fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise ContractViolation(f"unknown convention keys {sorted(unknown)}")
        return cls(**data)


FROZEN_FILE = "frozen_convention.json"


def frozen() -> Convention:
    """The convention recorded in the package's frozen configuration file."""
    text = resources.files("nhw").joinpath(FROZEN_FILE).read_text(encoding="utf-8")
    return Convention.from_json(json.loads(text)["convention"])
