"""Iterative quasi-fixed points: suprema of ⊥, f ⊥, f² ⊥, ...

With a bottom element, ω-completeness and ω-continuity the iterates have
suprema and each is a quasi-fixed point.  Under attractivity these suprema are
exactly the least quasi-fixed points.  The Kleene iteration also serves as a
plain dataflow solver on a finite lattice.
"""

from __future__ import annotations

from ..bounds import extreme_bounds, extremes_of
from ..core import ElemSet, EndoMap, RelatedSet, lowest, members
from ..errors import InternalFailure, PreconditionViolation
from ..props import OK, Witness
from .common import note, qfp_set, require_complete, require_map, require_property


def bottoms(R: RelatedSet) -> ElemSet:
    full = R.full
    return sum(1 << b for b, r in enumerate(R.rows) if r == full)


def kleene_iterates(R: RelatedSet, f: EndoMap, bot: int, trace: list[str] | None = None) -> ElemSet:
    if not (0 <= bot < R.n) or not bottoms(R) >> bot & 1:
        raise PreconditionViolation("bottom element", f"{bot} is not a bottom")
    seen = 0
    x = bot
    while not seen >> x & 1:
        seen |= 1 << x
        note(trace, f"iterate {R.names[x]}")
        x = f.target[x]
    return seen


def _require(R, f, bot):
    require_complete(R, "omega")
    require_map(R, f, "omega_continuous")
    if not bottoms(R) >> bot & 1:
        raise PreconditionViolation("bottom element", R.names[bot] if 0 <= bot < R.n else str(bot))


def kleene_qfps(R: RelatedSet, f: EndoMap, bot: int, check: bool = True,
                trace: list[str] | None = None) -> ElemSet:
    """All suprema of the iterates, each validated as a quasi-fixed point."""
    if check:
        _require(R, f, bot)
    Fn = kleene_iterates(R, f, bot, trace)
    sups = extreme_bounds(R, Fn)
    if not sups:
        raise InternalFailure("iterates have no supremum")
    sims = R.sim_rows
    for p in members(sups):
        if not sims[p] >> f.target[p] & 1:
            raise InternalFailure(f"supremum {R.names[p]} of the iterates is not a quasi-fixed point")
    note(trace, f"suprema: {{{', '.join(R.label_set(sups))}}}")
    return sups


def kleene_least_equivalence(R: RelatedSet, f: EndoMap, bot: int, check: bool = True) -> Witness:
    """Suprema of the iterates coincide with the least quasi-fixed points."""
    if check:
        _require(R, f, bot)
        require_property(R, "attractive")
    sups = extreme_bounds(R, kleene_iterates(R, f, bot))
    least = extremes_of(R, qfp_set(R, f), "least")
    diff = sups ^ least
    if diff:
        x = lowest(diff)
        clause = ("supremum of iterates is a least quasi-fixed point" if sups >> x & 1
                  else "least quasi-fixed point is a supremum of iterates")
        return Witness(False, (x,), clause=clause)
    return OK
