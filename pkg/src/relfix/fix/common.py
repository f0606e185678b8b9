from __future__ import annotations

from ..classes import check_complete
from ..core import ElemSet, EndoMap, RelatedSet
from ..errors import PreconditionViolation
from ..props import Witness, check_map_condition, check_property


def qfp_set(R: RelatedSet, f: EndoMap) -> ElemSet:
    """Quasi-fixed points: x with f x ∼ x."""
    sims = R.sim_rows
    return sum(1 << x for x, t in enumerate(f.target) if sims[x] >> t & 1)


def fixed_set(f: EndoMap) -> ElemSet:
    return f.fixed


def _raise(clause: str, w: Witness, R: RelatedSet) -> None:
    raise PreconditionViolation(clause, w.describe(R))


def require_property(R: RelatedSet, p: str) -> None:
    w = check_property(R, p)
    if not w:
        _raise(p, w, R)


def require_complete(R: RelatedSet, cls: str) -> None:
    w = check_complete(R, cls)
    if not w:
        _raise(f"{cls}-complete", w, R)


def require_map(R: RelatedSet, f: EndoMap, c: str) -> None:
    w = check_map_condition(R, f, c)
    if not w:
        _raise(c, w, R)


def note(trace: list[str] | None, msg: str) -> None:
    if trace is not None:
        trace.append(msg)
