"""Least quasi-fixed points on attractive relations, and completeness of the
set of quasi-fixed points.

Collapsing similarity classes turns an attractive relation into an
antisymmetric one, where the derivation engine yields a least fixed point; any
member of that class is a least quasi-fixed point.  Restricting to the bounds
of a subset X and repeating gives a supremum of X among the quasi-fixed points.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..bounds import bounds_of
from ..classes import check_complete, is_in_class, normalize_class, set_le, subsets_in_class
from ..core import ElemSet, EndoMap, RelatedSet, lowest, members, restrict, restrict_map, submasks
from ..errors import InternalFailure, PartitionFailure, PreconditionViolation
from ..props import OK, Witness
from .common import note, qfp_set, require_complete, require_map, require_property
from .derivation import least_fp_mono


@dataclass(frozen=True)
class Quotient:
    classes: tuple[ElemSet, ...]
    class_of: tuple[int, ...]
    qrel: RelatedSet
    qmap: EndoMap | None


def build_quotient(R: RelatedSet, f: EndoMap | None = None, check: bool = True) -> Quotient:
    if check:
        require_property(R, "attractive")
        if f is not None:
            require_map(R, f, "monotone")
    eclass = [s | (1 << x) for x, s in enumerate(R.sim_rows)]
    for x in range(R.n):
        for y in members(eclass[x]):
            if eclass[y] != eclass[x]:
                raise PartitionFailure("similarity-or-equality is transitive",
                                       f"{R.names[x]}, {R.names[y]}")
    classes: list[ElemSet] = []
    class_of = [-1] * R.n
    for x in range(R.n):
        if class_of[x] < 0:
            for y in members(eclass[x]):
                class_of[y] = len(classes)
            classes.append(eclass[x])
    names = tuple("[" + ",".join(R.label_set(c)) + "]" for c in classes)
    rows = tuple(sum(1 << j for j, Q in enumerate(classes) if set_le(R, P, Q)) for P in classes)
    qrel = RelatedSet(names, rows)
    qmap = None
    if f is not None:
        target = []
        for c in classes:
            images = {class_of[f.target[x]] for x in members(c)}
            if len(images) != 1:
                raise PreconditionViolation("monotone", "quotient map depends on representative")
            target.append(images.pop())
        qmap = EndoMap(tuple(target))
    if any(s & ~(1 << i) for i, s in enumerate(qrel.sim_rows)):
        raise InternalFailure("quotient relation is not antisymmetric")
    if check and check_complete(R, "well") and not check_complete(qrel, "well"):
        raise InternalFailure("quotient lost well-completeness")
    return Quotient(tuple(classes), tuple(class_of), qrel, qmap)


def least_qfp_attractive(R: RelatedSet, f: EndoMap, check: bool = True,
                         trace: list[str] | None = None) -> int:
    if check:
        require_property(R, "attractive")
        require_complete(R, "well")
        require_map(R, f, "monotone")
    Q = build_quotient(R, f, check=False)
    note(trace, "classes: " + " ".join(Q.qrel.names))
    try:
        P = least_fp_mono(Q.qrel, Q.qmap, check=check)
    except PreconditionViolation as exc:
        raise InternalFailure(f"quotient outside derivation hypotheses: {exc}") from exc
    c = lowest(Q.classes[P])
    note(trace, f"least fixed class {Q.qrel.names[P]}; representative {R.names[c]}")
    sims, rows, t = R.sim_rows, R.rows, f.target
    if not sims[c] >> t[c] & 1:
        raise InternalFailure(f"{R.names[c]} is not a quasi-fixed point")
    targets = qfp_set(R, f) | f.fixed
    if targets & ~rows[c]:
        raise InternalFailure(f"{R.names[c]} is not below every (quasi-)fixed point")
    note(trace, f"f {R.names[c]} = {R.names[t[c]]} ∼ {R.names[c]}")
    return c


def _class_contains_well(R: RelatedSet, cls: str) -> bool:
    return all(is_in_class(R, X, cls) for X in subsets_in_class(R, "well"))


def _require_qfp_complete_hyps(R, f, cls, P):
    require_property(R, "attractive")
    require_complete(R, cls)
    if not _class_contains_well(R, cls):
        raise PreconditionViolation(f"every well-related subset is in class {cls}")
    require_map(R, f, "monotone")
    if P & ~f.fixed:
        raise PreconditionViolation("P consists of strict fixed points",
                                    ", ".join(R.label_set(P & ~f.fixed)))


def _is_sup_within(R: RelatedSet, S: ElemSet, X: ElemSet, q: int) -> bool:
    bnds = bounds_of(R, X) & S
    return bool(bnds >> q & 1) and bnds & ~R.rows[q] == 0


def qfp_sup_in_class(R: RelatedSet, f: EndoMap, cls: str, X: ElemSet, P: ElemSet = 0,
                     check: bool = True, trace: list[str] | None = None) -> int:
    """A supremum of X inside (quasi-fixed points ∪ P, ⊑)."""
    cls = normalize_class(cls)
    S = qfp_set(R, f) | P
    if check:
        _require_qfp_complete_hyps(R, f, cls, P)
        if X & ~S:
            raise PreconditionViolation("X lies within quasi-fixed points ∪ P")
        if not is_in_class(R, X, cls):
            raise PreconditionViolation(f"X is in class {cls}")
    B = bounds_of(R, X)
    sub, idx = restrict(R, B)
    fB = restrict_map(f, idx)
    if fB is None:
        raise InternalFailure("bounds of X are not closed under f")
    note(trace, f"bounds of X: {{{', '.join(R.label_set(B))}}}")
    try:
        c = least_qfp_attractive(sub, fB, check=check, trace=trace)
    except PreconditionViolation as exc:
        raise InternalFailure(f"bound set outside hypotheses: {exc}") from exc
    q = idx[c]
    if not _is_sup_within(R, S, X, q):
        raise InternalFailure(f"{R.names[q]} is not a supremum of X among quasi-fixed points")
    return q


def verify_qfp_complete(R: RelatedSet, f: EndoMap, cls: str, P: ElemSet = 0,
                        check: bool = True) -> Witness:
    """Brute force: every class subset of (quasi-fixed points ∪ P) has a supremum there."""
    cls = normalize_class(cls)
    if check:
        _require_qfp_complete_hyps(R, f, cls, P)
    S = qfp_set(R, f) | P
    rows = R.rows
    for X in submasks(S):
        if not is_in_class(R, X, cls):
            continue
        bnds = bounds_of(R, X) & S
        if not any(bnds & ~rows[q] == 0 for q in members(bnds)):
            return Witness(False, subset=X, clause=f"{cls}-class subset has a supremum among quasi-fixed points")
    return OK
