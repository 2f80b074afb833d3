"""Oriented link diagrams as signed PD codes.

A crossing is a 4-tuple of edge labels listed counterclockwise starting from
the incoming under-strand.  Orientations are recovered from the under-strand
convention (slot 0 incoming, slot 2 outgoing) by walking each closed strand;
components that never pass under are oriented by explicit hints when given,
otherwise by the increasing-label heuristic.  A crossing is positive exactly
when the over-strand enters at slot 3, i.e. the over-strand crosses the
oriented under-strand left to right.

Zero-crossing unknot components cannot be expressed by PD entries and are
carried as an explicit circle count.
"""

from __future__ import annotations

import hashlib
import json
import re
from dataclasses import dataclass, field
from functools import cached_property

from .errors import DiagramError, ParseError

Crossing = tuple[int, int, int, int]
Slot = tuple[int, int]  # (crossing index, position 0..3)


@dataclass(frozen=True)
class DiagramStats:
    c_plus: int
    c_minus: int
    writhe: int
    n_components: int


@dataclass(frozen=True)
class _Structure:
    """Derived orientation data: filled in once per diagram."""

    heads: dict[int, Slot]          # edge -> slot where it is incoming
    tails: dict[int, Slot]          # edge -> slot where it is outgoing
    signs: tuple[int, ...]          # per crossing, +1 / -1
    components: tuple[tuple[int, ...], ...]  # edge cycles in orientation order
    comp_of_edge: dict[int, int]


@dataclass(frozen=True)
class Diagram:
    """Immutable oriented link diagram.

    orientation_hints pins orientations of components that never pass under:
    each hint (edge, crossing_index, position) declares that the edge is
    incoming at that slot.  Hints for components already pinned by an
    under-strand are checked for consistency and otherwise ignored.
    """

    crossings: tuple[Crossing, ...]
    circles: int = 0
    name: str | None = None
    orientation_hints: frozenset[tuple[int, int, int]] = field(default_factory=frozenset)

    def __post_init__(self):
        object.__setattr__(self, "crossings", tuple(tuple(c) for c in self.crossings))
        object.__setattr__(self, "orientation_hints", frozenset(tuple(h) for h in self.orientation_hints))
        if self.circles < 0:
            raise DiagramError("negative circle count")
        if not self.crossings and self.circles == 0:
            raise DiagramError("empty diagram: no crossings and no circles")
        for c in self.crossings:
            if len(c) != 4:
                raise DiagramError(f"crossing {c!r} is not a 4-tuple")
            for e in c:
                if not isinstance(e, int) or e <= 0:
                    raise DiagramError(f"edge label {e!r} is not a positive integer")
        self._structure  # force validation at construction time

    # -- derived structure ------------------------------------------------

    @cached_property
    def _occurrences(self) -> dict[int, list[Slot]]:
        occ: dict[int, list[Slot]] = {}
        for ci, t in enumerate(self.crossings):
            for pos in range(4):
                occ.setdefault(t[pos], []).append((ci, pos))
        for e, slots in occ.items():
            if len(slots) != 2:
                raise DiagramError(f"edge {e} occurs {len(slots)} times; every edge must occur exactly twice")
        return occ

    @cached_property
    def _structure(self) -> _Structure:
        occ = self._occurrences
        edges = sorted(occ)
        seen: set[int] = set()
        heads: dict[int, Slot] = {}
        tails: dict[int, Slot] = {}
        cycles: list[tuple[int, ...]] = []

        def other(e: int, slot: Slot) -> Slot:
            a, b = occ[e]
            return b if slot == a else a

        for start in edges:
            if start in seen:
                continue
            # walk the closed strand through (pos+2)%4 at each crossing,
            # recording the candidate head slot of each edge for direction A
            cycle: list[int] = []
            cand_heads: list[Slot] = []
            e, head = start, occ[start][0]
            while True:
                cycle.append(e)
                cand_heads.append(head)
                seen.add(e)
                ci, pos = head
                exit_slot = (ci, (pos + 2) % 4)
                e2 = self.crossings[ci][(pos + 2) % 4]
                head2 = other(e2, exit_slot)
                e, head = e2, head2
                if e == start and head == occ[start][0]:
                    break
                if len(cycle) > 2 * len(self.crossings) + 1:
                    raise DiagramError("strand walk failed to close; corrupt PD structure")

            direction = self._pick_direction(cycle, cand_heads, occ)
            if direction == +1:
                chosen = list(zip(cycle, cand_heads))
            else:
                # reversed traversal: each edge's head becomes its other slot
                chosen = [(e, other(e, h)) for e, h in zip(cycle, cand_heads)]
                chosen.reverse()
            # rotate so the cycle starts at its minimal edge
            kmin = min(range(len(chosen)), key=lambda i: chosen[i][0])
            chosen = chosen[kmin:] + chosen[:kmin]
            cycles.append(tuple(e for e, _ in chosen))
            for e, h in chosen:
                heads[e] = h
                tails[e] = other(e, h)

        cycles.sort(key=lambda cyc: cyc[0])
        comp_of_edge = {e: i for i, cyc in enumerate(cycles) for e in cyc}

        signs = []
        for ci, t in enumerate(self.crossings):
            if heads[t[0]] != (ci, 0) or tails[t[2]] != (ci, 2):
                raise DiagramError(f"crossing {ci}: inconsistent over/under structure")
            if heads[t[3]] == (ci, 3):
                signs.append(+1)
            elif heads[t[1]] == (ci, 1):
                signs.append(-1)
            else:
                raise DiagramError(f"crossing {ci}: over-strand has no incoming edge")
        return _Structure(heads, tails, tuple(signs), tuple(cycles), comp_of_edge)

    def _pick_direction(self, cycle: list[int], cand_heads: list[Slot], occ) -> int:
        """+1 keeps the walk direction, -1 reverses it."""
        # position-0 slots must be incoming, position-2 slots outgoing
        viol_a = viol_b = 0
        under_seen = False
        for e, h in zip(cycle, cand_heads):
            a, b = occ[e]
            t = b if h == a else a
            if h[1] in (0, 2) or t[1] in (0, 2):
                under_seen = True
            viol_a += (h[1] == 2) + (t[1] == 0)
            viol_b += (t[1] == 2) + (h[1] == 0)
        if under_seen:
            if viol_a == 0:
                return +1
            if viol_b == 0:
                return -1
            raise DiagramError("inconsistent under-strand orientation along a component")
        # everywhere-over component: consult hints first
        hints = {(e, ci, pos) for (e, ci, pos) in self.orientation_hints if e in cycle}
        if hints:
            for e, h in zip(cycle, cand_heads):
                if (e, h[0], h[1]) in hints:
                    return +1
                a, b = occ[e]
                t = b if h == a else a
                if (e, t[0], t[1]) in hints:
                    return -1
            raise DiagramError("orientation hint does not match any slot of its component")
        # increasing-label heuristic, lexicographic tie-break
        n = len(cycle)
        asc_a = sum(1 for i in range(n) if cycle[(i + 1) % n] > cycle[i])
        rev = list(reversed(cycle))
        asc_b = sum(1 for i in range(n) if rev[(i + 1) % n] > rev[i])
        if asc_a != asc_b:
            return +1 if asc_a > asc_b else -1
        # same ascent count (e.g. 2-edge components): fix by smallest head slot
        i = cycle.index(min(cycle))
        h = cand_heads[i]
        a, b = occ[cycle[i]]
        t = b if h == a else a
        return +1 if h <= t else -1

    # -- public accessors --------------------------------------------------

    @property
    def n_crossings(self) -> int:
        return len(self.crossings)

    @property
    def edges(self) -> list[int]:
        return sorted(self._occurrences)

    @property
    def signs(self) -> tuple[int, ...]:
        return self._structure.signs

    @property
    def components(self) -> tuple[tuple[int, ...], ...]:
        """Edge cycles in orientation order; explicit circles are not listed
        here but count toward n_components (they come after edge components)."""
        return self._structure.components

    @property
    def n_components(self) -> int:
        return len(self._structure.components) + self.circles

    def component_of_edge(self, e: int) -> int:
        return self._structure.comp_of_edge[e]

    def head(self, e: int) -> Slot:
        return self._structure.heads[e]

    def tail(self, e: int) -> Slot:
        return self._structure.tails[e]

    def successor(self, e: int) -> int:
        ci, pos = self._structure.heads[e]
        return self.crossings[ci][(pos + 2) % 4]

    def with_name(self, name: str) -> "Diagram":
        return Diagram(self.crossings, self.circles, name, self.orientation_hints)

    def full_hints(self) -> frozenset[tuple[int, int, int]]:
        """The complete orientation as a hint set (edge, crossing, position)."""
        return frozenset((e, ci, pos) for e, (ci, pos) in self._structure.heads.items())


def stats(d: Diagram) -> DiagramStats:
    c_plus = sum(1 for s in d.signs if s > 0)
    c_minus = len(d.signs) - c_plus
    return DiagramStats(c_plus, c_minus, c_plus - c_minus, d.n_components)


def linking_number(d: Diagram, a: int, b: int) -> int:
    """Half the signed count of crossings between components a and b."""
    n = d.n_components
    if not (0 <= a < n and 0 <= b < n):
        raise DiagramError(f"component index out of range (diagram has {n})")
    if a == b:
        raise DiagramError("self-linking of a component is framing-dependent and not defined")
    total = 0
    comp = d._structure.comp_of_edge
    for ci, t in enumerate(d.crossings):
        cu = comp[t[0]]
        co = comp[t[1]]
        if {cu, co} == {a, b}:
            total += d.signs[ci]
    if total % 2:
        raise DiagramError("odd signed inter-component count; corrupt diagram")
    return total // 2


def mirror(d: Diagram) -> Diagram:
    """Switch every crossing's over/under assignment (same plane projection)."""
    new_crossings = []
    rotations = []
    for ci, t in enumerate(d.crossings):
        k = 3 if d.signs[ci] > 0 else 1  # slot where the over-strand comes in
        rotations.append(k)
        new_crossings.append(tuple(t[(k + i) % 4] for i in range(4)))
    hints = frozenset(
        (e, ci, (pos - rotations[ci]) % 4) for e, (ci, pos) in d._structure.heads.items()
    )
    name = f"m{d.name}" if d.name else None
    return Diagram(tuple(new_crossings), d.circles, name, hints)


def reverse_component(d: Diagram, k: int) -> Diagram:
    """Reverse the orientation of component k (0-based, edge components first)."""
    n = d.n_components
    if not (0 <= k < n):
        raise DiagramError(f"component index out of range (diagram has {n})")
    if k >= len(d.components):
        return d  # explicit circle: reversal is invisible
    edges_k = set(d.components[k])
    rotations = []
    new_crossings = []
    for ci, t in enumerate(d.crossings):
        rot = 2 if t[0] in edges_k else 0
        rotations.append(rot)
        new_crossings.append(tuple(t[(rot + i) % 4] for i in range(4)))
    hints = set()
    for e, (ci, pos) in d._structure.heads.items():
        if e in edges_k:
            ci, pos = d._structure.tails[e]  # reversed: old tail is new head
        hints.add((e, ci, (pos - rotations[ci]) % 4))
    return Diagram(tuple(new_crossings), d.circles, d.name, frozenset(hints))


def relabeled(d: Diagram, mapping: dict[int, int]) -> Diagram:
    new_crossings = tuple(tuple(mapping[e] for e in t) for t in d.crossings)
    hints = frozenset((mapping[e], ci, pos) for e, ci, pos in d.full_hints())
    return Diagram(new_crossings, d.circles, d.name, hints)


def canonical_relabel(d: Diagram) -> Diagram:
    """Relabel edges 1..2n in orientation order along each component."""
    mapping: dict[int, int] = {}
    nxt = 1
    for cyc in d.components:
        for e in cyc:
            mapping[e] = nxt
            nxt += 1
    return relabeled(d, mapping)


def diagram_hash(d: Diagram) -> str:
    payload = json.dumps(
        [list(map(list, d.crossings)), d.circles, sorted(d.full_hints())],
        separators=(",", ":"),
    )
    return hashlib.sha256(payload.encode()).hexdigest()[:16]


# -- parsing and serialization ---------------------------------------------

_X_RE = re.compile(r"X\[\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*\]", re.IGNORECASE)
_U_RE = re.compile(r"\bU(\d+)\b", re.IGNORECASE)


def parse_pd(text: str) -> Diagram:
    """Parse PD notation: X[a,b,c,d] entries plus U<n> circle tokens, with an
    optional PD[...] wrapper, or the JSON form (array of 4-tuples, or an
    object with crossings / circles / orientation / name fields)."""
    s = text.strip()
    if not s:
        raise ParseError("empty PD text")
    if s[0] in "[{":
        return _parse_json(s)
    crossings = [tuple(int(g) for g in m.groups()) for m in _X_RE.finditer(s)]
    circles = sum(int(m.group(1)) for m in _U_RE.finditer(s))
    leftover = _U_RE.sub("", _X_RE.sub("", s))
    leftover = re.sub(r"(?i)\bPD\b", "", leftover)
    if leftover.strip(" \t\r\n,[]()"):
        raise ParseError(f"unrecognized PD tokens: {leftover.strip()!r}")
    if not crossings and circles == 0:
        raise ParseError("no crossings or circles found in PD text")
    try:
        return Diagram(tuple(crossings), circles)
    except DiagramError as exc:
        raise ParseError(str(exc)) from exc


def _parse_json(s: str) -> Diagram:
    try:
        data = json.loads(s)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON PD form: {exc}") from exc
    if isinstance(data, list):
        data = {"crossings": data}
    if not isinstance(data, dict):
        raise ParseError("JSON PD form must be an array or object")
    crossings = data.get("crossings", [])
    if not all(isinstance(c, (list, tuple)) and len(c) == 4 for c in crossings):
        raise ParseError("crossings must be 4-element arrays")
    hints = frozenset(tuple(h) for h in data.get("orientation", []))
    try:
        return Diagram(
            tuple(tuple(int(e) for e in c) for c in crossings),
            int(data.get("circles", 0)),
            data.get("name"),
            hints,
        )
    except (DiagramError, ValueError) as exc:
        raise ParseError(str(exc)) from exc


def to_text(d: Diagram) -> str:
    """PD text form; orientation hints are not expressible here (use
    to_json_dict for diagrams with everywhere-over components)."""
    parts = [f"X[{a},{b},{c},{e}]" for a, b, c, e in d.crossings]
    if d.circles:
        parts.append(f"U{d.circles}")
    return " ".join(parts)


def to_json_dict(d: Diagram) -> dict:
    out: dict = {"crossings": [list(c) for c in d.crossings]}
    if d.circles:
        out["circles"] = d.circles
    if d.name:
        out["name"] = d.name
    if d.orientation_hints:
        out["orientation"] = sorted(list(h) for h in d.orientation_hints)
    return out
