"""Cube of resolutions over Q: chain groups, differentials and gradings.

Conventions.  Smoothings are orientation-independent: at a crossing
(a, b, c, d) the 0-smoothing joins a-b and c-d (the channel you open turning
left along the over-strand), the 1-smoothing joins a-d and b-c.  A state
with r ones sits in unnormalized homological degree r; a circle labeling
contributes e = (#plus - #minus), and the normalized bidegree is

    i = r - c_minus,      j = e + r + c_plus - 2*c_minus,

which makes the resulting table a link invariant with the unknot at (0, +-1).
Edge signs follow the number of ones before the flipped coordinate.
"""

from __future__ import annotations

from dataclasses import dataclass

from .diagrams import Diagram, stats
from .errors import CubeLimitError, DiagramError, InternalInvariantError
from .laurent import Laurent, lp_add, lp_scale
from .linalg import SparseMatrix

DEFAULT_CUBE_LIMIT = 14


@dataclass(frozen=True)
class ResolutionState:
    choices: tuple[int, ...]
    n_circles: int
    circle_membership: dict[int, int]  # edge -> circle index

    def __post_init__(self):
        if self.n_circles < 1:
            raise InternalInvariantError("resolution with no circles")


def _circles_of_mask(d: Diagram, mask: int) -> tuple[int, dict[int, int]]:
    """Circle count and edge membership for the resolution given by mask
    (bit x = smoothing choice at crossing x); explicit circles included in
    the count but not the membership map."""
    n = len(d.crossings)
    parent = list(range(4 * n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x: int, y: int) -> None:
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[rx] = ry

    for ci in range(n):
        base = 4 * ci
        if (mask >> ci) & 1:
            union(base + 0, base + 3)
            union(base + 1, base + 2)
        else:
            union(base + 0, base + 1)
            union(base + 2, base + 3)
    occ: dict[int, list[int]] = {}
    for ci, t in enumerate(d.crossings):
        for pos in range(4):
            occ.setdefault(t[pos], []).append(4 * ci + pos)
    for slots in occ.values():
        union(slots[0], slots[1])
    roots: dict[int, int] = {}
    membership: dict[int, int] = {}
    for e in sorted(occ):
        r = find(occ[e][0])
        membership[e] = roots.setdefault(r, len(roots))
    return len(roots) + d.circles, membership


def resolve(d: Diagram, choices) -> ResolutionState:
    """Smooth every crossing according to its bit."""
    choices = tuple(int(b) for b in choices)
    if len(choices) != len(d.crossings):
        raise DiagramError(f"expected {len(d.crossings)} smoothing choices, got {len(choices)}")
    if any(b not in (0, 1) for b in choices):
        raise DiagramError("smoothing choices must be 0 or 1")
    mask = sum(b << i for i, b in enumerate(choices))
    k, membership = _circles_of_mask(d, mask)
    return ResolutionState(choices, k, membership)


@dataclass
class CubeComplex:
    """Full cube: bases are (state mask, labeling mask) pairs where labeling
    bit c set means circle c carries the minus generator."""

    groups: dict[int, list[tuple[int, int]]]
    diffs: dict[int, SparseMatrix]
    c_plus: int
    c_minus: int
    circle_count: dict[int, int]
    membership: dict[int, dict[int, int]]
    n_crossings: int
    extra_circles: int

    def dim(self, r: int) -> int:
        return len(self.groups.get(r, ()))

    def quantum_degree(self, state: int, labeling: int) -> int:
        k = self.circle_count[state] - self.extra_circles
        e = k - 2 * bin(labeling).count("1")
        r = bin(state).count("1")
        return e + r + self.c_plus - 2 * self.c_minus

    def homological_degree(self, state: int) -> int:
        return bin(state).count("1") - self.c_minus


def build_cube(d: Diagram, limit: int = DEFAULT_CUBE_LIMIT, check: bool = False) -> CubeComplex:
    """Construct chain groups and differentials of the resolution cube.

    Labelings run over the edge-circles only; explicit crossingless circles
    are tensored in at table/Euler level.  Raises CubeLimitError above the
    crossing limit (use the scan backend there).  check=True verifies
    d.d = 0 exactly.
    """
    n = len(d.crossings)
    if n > limit:
        raise CubeLimitError(
            f"diagram has {n} crossings, naive cube limit is {limit}; use the scan backend"
        )
    st = stats(d)
    circle_count: dict[int, int] = {}
    membership: dict[int, dict[int, int]] = {}
    reps: dict[int, list[int]] = {}
    for mask in range(1 << n):
        k, mem = _circles_of_mask(d, mask)
        circle_count[mask] = k
        membership[mask] = mem
        rep = [0] * (k - d.circles)
        for e in sorted(mem, reverse=True):
            rep[mem[e]] = e
        reps[mask] = rep

    groups: dict[int, list[tuple[int, int]]] = {r: [] for r in range(n + 1)}
    index: dict[int, dict[tuple[int, int], int]] = {r: {} for r in range(n + 1)}
    for mask in range(1 << n):
        r = bin(mask).count("1")
        k = circle_count[mask] - d.circles
        for lab in range(1 << k):
            index[r][(mask, lab)] = len(groups[r])
            groups[r].append((mask, lab))

    diffs: dict[int, SparseMatrix] = {}
    for r in range(n):
        entries: list[tuple[int, int, int]] = []
        for col, (mask, lab) in enumerate(groups[r]):
            for target, val in _differential_of(d, mask, lab, membership, reps):
                entries.append((index[r + 1][target], col, val))
        diffs[r] = SparseMatrix(len(groups[r + 1]), len(groups[r]), entries)

    cx = CubeComplex(groups, diffs, st.c_plus, st.c_minus, circle_count, membership, n, d.circles)
    if check:
        verify_d_squared(cx)
    return cx


def _differential_of(d, mask, lab, membership, reps):
    """Images of one generator: list of ((state, labeling), +-1)."""
    n = len(d.crossings)
    out = []
    mem = membership[mask]
    rep = reps[mask]
    for x in range(n):
        if (mask >> x) & 1:
            continue
        sign = -1 if bin(mask & ((1 << x) - 1)).count("1") % 2 else 1
        tmask = mask | (1 << x)
        tmem = membership[tmask]
        t = d.crossings[x]
        c1, c2 = mem[t[0]], mem[t[2]]
        # carry over labels of circles not touching this crossing
        base = 0
        for c, e in enumerate(rep):
            if c in (c1, c2):
                continue
            if (lab >> c) & 1:
                base |= 1 << tmem[e]
        if c1 != c2:
            # merge: m(v+,v+)=v+, m(v+,v-)=m(v-,v+)=v-, m(v-,v-)=0
            b1, b2 = (lab >> c1) & 1, (lab >> c2) & 1
            if b1 and b2:
                continue
            tlab = base
            if b1 | b2:
                tlab |= 1 << tmem[rep[c1]]
            out.append(((tmask, tlab), sign))
        else:
            # split: D(v+) = v+v- + v-v+, D(v-) = v-v-
            d1, d2 = tmem[t[0]], tmem[t[1]]
            if (lab >> c1) & 1:
                out.append(((tmask, base | (1 << d1) | (1 << d2)), sign))
            else:
                out.append(((tmask, base | (1 << d2)), sign))
                out.append(((tmask, base | (1 << d1)), sign))
    return out


def verify_d_squared(cx: CubeComplex) -> None:
    """Exact d.d = 0 check on every pair of consecutive differentials."""
    for r in range(cx.n_crossings - 1):
        a, b = cx.diffs[r], cx.diffs[r + 1]
        cols_a: dict[int, dict[int, object]] = {}
        for rr, cc, v in a.entries():
            cols_a.setdefault(cc, {})[rr] = v
        cols_b: dict[int, dict[int, object]] = {}
        for rr, cc, v in b.entries():
            cols_b.setdefault(cc, {})[rr] = v
        for col, acol in cols_a.items():
            acc: dict[int, object] = {}
            for mid, v in acol.items():
                for rr, w in cols_b.get(mid, {}).items():
                    s = acc.get(rr, 0) + v * w
                    if s:
                        acc[rr] = s
                    else:
                        acc.pop(rr, None)
            if acc:
                raise InternalInvariantError(f"d.d != 0 at degree {r}, column {col}")


def euler_characteristic(cx: CubeComplex) -> Laurent:
    """Graded Euler characteristic in q, unknot normalized to q + 1/q."""
    out: Laurent = {}
    for r, gens in cx.groups.items():
        i = r - cx.c_minus
        s = -1 if i % 2 else 1
        for state, lab in gens:
            j = cx.quantum_degree(state, lab)
            v = out.get(j, 0) + s
            if v:
                out[j] = v
            else:
                out.pop(j, None)
    # each explicit circle tensors a q + 1/q factor
    for _ in range(cx.extra_circles):
        out = lp_add(lp_scale(out, 1, 1), lp_scale(out, 1, -1))
    return out
