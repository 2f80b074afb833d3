"""Constructors for derived diagrams: braid closures, torus links, cables,
connected sums and disjoint unions.

The cable construction is the blackboard p-parallel of the companion diagram
(every crossing becomes a p x p block of same-sign crossings) followed by
t - writhe full twists on p strands spliced into the ribbon of the
highest-labeled edge, so the resulting framing is p*t.  Any correct diagram
of the cable yields the same homology; the same-link checks in the test
suite guard this construction.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .diagrams import Crossing, Diagram, canonical_relabel, relabeled, stats
from .errors import DiagramError


@dataclass(frozen=True)
class CableSpec:
    """Parallel p-strand cable with framing p*t."""

    p: int
    t: int

    def __post_init__(self):
        if self.p < 1:
            raise DiagramError("cable strand count must be >= 1")


class _Labels:
    def __init__(self, start: int = 1):
        self._next = itertools.count(start)

    def take(self) -> int:
        return next(self._next)

    def batch(self, n: int) -> list[int]:
        return [next(self._next) for _ in range(n)]


def _braid_crossings(word: list[int], strand_edges: list[int], labels: _Labels) -> tuple[list[Crossing], list[int]]:
    """Emit crossings for a braid word acting on the given incoming edge
    labels (index 0 = leftmost strand); returns the outgoing labels.

    Strands travel upward; a positive letter i crosses strand i over
    strand i+1.
    """
    st = list(strand_edges)
    out: list[Crossing] = []
    for letter in word:
        i = abs(letter) - 1
        if not (0 <= i < len(st) - 1):
            raise DiagramError(f"braid letter {letter} out of range for {len(st)} strands")
        u, v = st[i], st[i + 1]
        x, y = labels.take(), labels.take()
        if letter > 0:
            # over-strand SW->NE: under enters at SE
            out.append((v, y, x, u))
        else:
            # over-strand SE->NW: under enters at SW
            out.append((u, v, y, x))
        st[i], st[i + 1] = x, y
    return out, st


def braid_closure(word: list[int], n_strands: int, name: str | None = None) -> Diagram:
    """Close up a braid word on n_strands strands."""
    if n_strands < 1:
        raise DiagramError("braid needs at least one strand")
    labels = _Labels()
    start = labels.batch(n_strands)
    crossings, end = _braid_crossings(list(word), start, labels)
    # identify each final strand label with its initial one
    subst = {}
    circles = 0
    for s, e in zip(start, end):
        if s == e:
            circles += 1  # untouched strand closes into a bare circle
        else:
            subst[e] = s
    closed = tuple(tuple(subst.get(e, e) for e in t) for t in crossings)
    if closed:
        d = Diagram(closed, circles)
        d = canonical_relabel(d)
        return d.with_name(name) if name else d
    return Diagram((), circles, name)


def torus_diagram(p: int, q: int) -> Diagram:
    """Closed-braid diagram of the (p, q) torus link: (s1...s_{p-1})^q closed
    up, all crossings positive for q > 0 and negative for q < 0."""
    if p < 1:
        raise DiagramError("torus link needs p >= 1")
    name = f"T({p},{q})"
    if p == 1:
        return Diagram((), 1, name)
    if q == 0:
        return Diagram((), p, name)
    letters = list(range(1, p)) if q > 0 else [-i for i in range(p - 1, 0, -1)]
    word = letters * abs(q)
    return braid_closure(word, p, name=name)


def disjoint_union(d1: Diagram, d2: Diagram) -> Diagram:
    shift = max((e for t in d1.crossings for e in t), default=0)
    d2s = relabeled(d2, {e: e + shift for e in d2.edges}) if d2.crossings else d2
    hints = frozenset(d1.full_hints()) | frozenset(
        (e, ci + len(d1.crossings), pos) for e, ci, pos in d2s.full_hints()
    )
    name = None
    if d1.name and d2.name:
        name = f"{d1.name} u {d2.name}"
    return Diagram(d1.crossings + d2s.crossings, d1.circles + d2.circles, name, hints)


def connected_sum(d1: Diagram, d2: Diagram, e1: int | None = None, e2: int | None = None) -> Diagram:
    """Splice two knot diagrams along edges e1, e2, respecting orientation."""
    if d1.n_components != 1 or d2.n_components != 1:
        raise DiagramError("connected sum is only defined for knot diagrams (1 component each)")
    name = f"{d1.name} # {d2.name}" if d1.name and d2.name else None
    if not d1.crossings:
        return d2.with_name(name) if name else d2
    if not d2.crossings:
        return d1.with_name(name) if name else d1
    if e1 is None:
        e1 = max(d1.edges)
    if e1 not in d1._occurrences:
        raise DiagramError(f"edge {e1} not in first diagram")
    shift = max(d1.edges)
    d2s = relabeled(d2, {e: e + shift for e in d2.edges})
    e2 = (max(d2.edges) if e2 is None else e2) + shift
    if e2 not in d2s._occurrences:
        raise DiagramError(f"edge {e2 - shift} not in second diagram")

    fresh = max(d2s.edges) + 1
    # cut e1 and e2; rejoin so d1's outgoing half flows into d2's incoming half
    c1 = list(list(t) for t in d1.crossings)
    c2 = list(list(t) for t in d2s.crossings)
    hci, hpos = d2s.head(e2)
    c2[hci][hpos] = e1  # d1 tail-half ... -> e2 head crossing
    hci, hpos = d1.head(e1)
    c1[hci][hpos] = fresh  # d2 tail-half (relabeled fresh) -> e1 head crossing
    tci, tpos = d2s.tail(e2)
    c2[tci][tpos] = fresh
    merged = tuple(tuple(t) for t in c1 + c2)
    out = canonical_relabel(Diagram(merged, 0))
    return out.with_name(name) if name else out


def cable_diagram(d: Diagram, p: int | CableSpec, t: int | None = None) -> Diagram:
    """Blackboard p-parallel of a knot diagram with framing corrected to p*t
    by full twists; all components carry the orientation parallel to d."""
    spec = p if isinstance(p, CableSpec) else CableSpec(p, 0 if t is None else t)
    p, t = spec.p, spec.t
    if d.n_components != 1:
        raise DiagramError("cabling is only defined for knot diagrams")
    base = d.name or "K"
    name = f"{base}({p},{p * t})"
    if not d.crossings:
        return torus_diagram(p, p * t).with_name(name)
    if p == 1:
        return canonical_relabel(d).with_name(name)

    w = stats(d).writhe
    m = t - w  # full twists to insert
    labels = _Labels(max(d.edges) * (p + 1) + 1)
    cop = {e: labels.batch(p) for e in d.edges}

    e_star = max(d.edges)
    if m != 0:
        n_letters = p * abs(m)
        base_letters = list(range(1, p)) if m > 0 else [-i for i in range(p - 1, 0, -1)]
        word = base_letters * n_letters
        twist_crossings, tw_out = _braid_crossings(word, cop[e_star], labels)
    else:
        twist_crossings, tw_out = [], cop[e_star]

    def head_copies(e: int) -> list[int]:
        return tw_out if e == e_star else cop[e]

    out: list[Crossing] = []
    for ci, tup in enumerate(d.crossings):
        a, b, c, e = tup
        positive = d.signs[ci] > 0
        A = head_copies(a)  # copies entering from the south, west to east
        C = cop[c]
        over_in, over_out = (e, b) if positive else (b, e)
        OI = head_copies(over_in)
        OO = cop[over_out]
        vseg = [[labels.take() for _ in range(p)] for _ in range(p - 1)]  # [gap j][col k]
        hseg = [[labels.take() for _ in range(p - 1)] for _ in range(p)]  # [row j][gap k]
        for j in range(1, p + 1):      # rows, north to south
            # over-ribbon copy living in row j (copy 1 = leftmost of travel)
            oc = j if positive else p + 1 - j
            for k in range(1, p + 1):  # columns, west to east
                south = A[k - 1] if j == p else vseg[j - 1][k - 1]
                north = C[k - 1] if j == 1 else vseg[j - 2][k - 1]
                west = OI[oc - 1] if (k == 1 and positive) else (
                    OO[oc - 1] if k == 1 else hseg[j - 1][k - 2])
                east = OI[oc - 1] if (k == p and not positive) else (
                    OO[oc - 1] if k == p else hseg[j - 1][k - 1])
                out.append((south, east, north, west))
    out.extend(twist_crossings)
    return canonical_relabel(Diagram(tuple(out), 0)).with_name(name)
