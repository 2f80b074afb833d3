"""Normalized Khovanov Betti tables and the derived diagram invariants.

kh_table is the single entry point for homology: it dispatches between the
full-cube backend (small diagrams) and the scanning backend, and always
returns the same normalized table.  jones_via_kauffman is a deliberately
independent oracle: a bare Kauffman bracket state sum with writhe
correction, sharing no code with the chain-complex pipeline.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field

from . import cube as cube_mod
from .diagrams import Diagram, diagram_hash, stats
from .errors import DiagramError, InternalInvariantError
from .laurent import Laurent, lp, lp_add, lp_divexact, lp_mul, lp_pow, lp_scale
from .linalg import SparseMatrix, rank

KAUFFMAN_LIMIT = 20


@dataclass(frozen=True)
class KhTable:
    """Betti numbers of rational Khovanov homology by normalized (i, j)."""

    betti: tuple[tuple[int, int, int], ...]  # sorted (i, j, rank) triples
    c_plus: int
    c_minus: int
    backend: str
    diagram_name: str | None = None
    diagram_hash: str = ""

    @classmethod
    def from_dict(cls, betti: dict[tuple[int, int], int], **kw) -> "KhTable":
        triples = tuple(sorted((i, j, r) for (i, j), r in betti.items() if r))
        return cls(betti=triples, **kw)

    def as_dict(self) -> dict[tuple[int, int], int]:
        return {(i, j): r for i, j, r in self.betti}

    @property
    def total_rank(self) -> int:
        return sum(r for _, _, r in self.betti)

    def i_max(self) -> int:
        return max(i for i, _, _ in self.betti)

    def i_min(self) -> int:
        return min(i for i, _, _ in self.betti)

    def euler(self) -> Laurent:
        out: Laurent = {}
        for i, j, r in self.betti:
            c = out.get(j, 0) + (-r if i % 2 else r)
            if c:
                out[j] = c
            else:
                out.pop(j, None)
        return out

    def shifted(self, di: int, dj: int) -> "KhTable":
        return KhTable(
            betti=tuple(sorted((i + di, j + dj, r) for i, j, r in self.betti)),
            c_plus=self.c_plus,
            c_minus=self.c_minus,
            backend=self.backend,
            diagram_name=self.diagram_name,
            diagram_hash=self.diagram_hash,
        )

    def table_hash(self) -> str:
        payload = json.dumps(
            [list(self.betti), self.c_plus, self.c_minus, self.diagram_hash],
            separators=(",", ":"),
        )
        return hashlib.sha256(payload.encode()).hexdigest()[:16]

    def validate(self) -> None:
        if not self.betti:
            raise InternalInvariantError("empty homology table; every link has nonzero homology")
        if not any(i == 0 for i, _, _ in self.betti):
            raise InternalInvariantError("no homology in degree zero")
        if self.i_max() > self.c_plus or -self.i_min() > self.c_minus:
            raise InternalInvariantError(
                "homology support violates the diagram-level degree bounds"
            )

    def to_json(self) -> str:
        payload = {
            "diagram": {"name": self.diagram_name, "hash": self.diagram_hash},
            "backend": self.backend,
            "c_plus": self.c_plus,
            "c_minus": self.c_minus,
            "betti": [list(t) for t in self.betti],
        }
        return json.dumps(payload, sort_keys=True, separators=(",", ": "))

    @classmethod
    def from_json(cls, text: str) -> "KhTable":
        data = json.loads(text)
        return cls(
            betti=tuple(sorted(tuple(t) for t in data["betti"])),
            c_plus=data["c_plus"],
            c_minus=data["c_minus"],
            backend=data["backend"],
            diagram_name=data["diagram"].get("name"),
            diagram_hash=data["diagram"].get("hash", ""),
        )


def extreme_degrees(t: KhTable) -> tuple[int, int]:
    """(i_min, i_max) of the table; the table is never empty."""
    if not t.betti:
        raise InternalInvariantError("empty homology table")
    return t.i_min(), t.i_max()


def _tensor_unknot(betti: dict[tuple[int, int], int], n: int) -> dict[tuple[int, int], int]:
    for _ in range(n):
        nxt: dict[tuple[int, int], int] = {}
        for (i, j), r in betti.items():
            for dj in (1, -1):
                nxt[(i, j + dj)] = nxt.get((i, j + dj), 0) + r
        betti = nxt
    return betti


def kh_table_naive(d: Diagram, limit: int = cube_mod.DEFAULT_CUBE_LIMIT) -> KhTable:
    """Betti numbers from the full cube, ranks computed per quantum degree."""
    cx = cube_mod.build_cube(d, limit=limit)
    # partition the bases by (r, j); differentials preserve j
    index: dict[int, dict[int, list[int]]] = {}
    jview: dict[int, list[int]] = {}
    for r, gens in cx.groups.items():
        by_j: dict[int, list[int]] = {}
        for col, (mask, lab) in enumerate(gens):
            by_j.setdefault(cx.quantum_degree(mask, lab), []).append(col)
        index[r] = by_j
        jview[r] = [cx.quantum_degree(mask, lab) for mask, lab in gens]

    ranks: dict[tuple[int, int], int] = {}
    for r, m in cx.diffs.items():
        split: dict[int, list[tuple[int, int, object]]] = {}
        pos_in: dict[int, dict[int, int]] = {j: {c: k for k, c in enumerate(cols)} for j, cols in index[r].items()}
        pos_out: dict[int, dict[int, int]] = {j: {c: k for k, c in enumerate(cols)} for j, cols in index[r + 1].items()}
        for rr, cc, v in m.entries():
            j = jview[r][cc]
            if jview[r + 1][rr] != j:
                raise InternalInvariantError("differential does not preserve the quantum grading")
            split.setdefault(j, []).append((pos_out[j][rr], pos_in[j][cc], v))
        for j, entries in split.items():
            sm = SparseMatrix(len(index[r + 1].get(j, ())), len(index[r].get(j, ())), entries)
            ranks[(r, j)] = rank(sm)

    betti: dict[tuple[int, int], int] = {}
    for r, by_j in index.items():
        for j, cols in by_j.items():
            b = len(cols) - ranks.get((r, j), 0) - ranks.get((r - 1, j), 0)
            if b < 0:
                raise InternalInvariantError("negative Betti number")
            if b:
                betti[(r - cx.c_minus, j)] = b
    betti = _tensor_unknot(betti, d.circles)
    st = stats(d)
    table = KhTable.from_dict(
        betti,
        c_plus=st.c_plus,
        c_minus=st.c_minus,
        backend="naive",
        diagram_name=d.name,
        diagram_hash=diagram_hash(d),
    )
    table.validate()
    return table


def kh_table(
    d: Diagram,
    backend: str = "auto",
    *,
    naive_limit: int = cube_mod.DEFAULT_CUBE_LIMIT,
    auto_limit: int = 10,
    ceiling: int = 10_000_000,
    progress=None,
) -> KhTable:
    """Rational Khovanov Betti table in normalized bidegrees.

    backend 'auto' uses the full cube up to auto_limit crossings and the
    scanning backend beyond; both backends produce identical tables.
    """
    if backend == "auto":
        backend = "naive" if len(d.crossings) <= auto_limit else "scan"
    if backend == "naive":
        return kh_table_naive(d, limit=naive_limit)
    if backend == "scan":
        from . import scan as scan_mod

        return scan_mod.scan(d, ceiling=ceiling, progress=progress)
    raise DiagramError(f"unknown backend {backend!r}")


# -- Kauffman bracket oracle -------------------------------------------------


def jones_via_kauffman(d: Diagram, limit: int = KAUFFMAN_LIMIT) -> Laurent:
    """Unnormalized Jones polynomial (unknot -> q + 1/q) by the bracket
    state sum with writhe correction; independent of the chain complex."""
    n = len(d.crossings)
    if n > limit:
        raise DiagramError(f"Kauffman state sum limited to {limit} crossings (diagram has {n})")
    st = stats(d)

    # per-state circle counting over crossing slots, inlined union-find
    occ: dict[int, list[int]] = {}
    for ci, t in enumerate(d.crossings):
        for pos in range(4):
            occ.setdefault(t[pos], []).append(4 * ci + pos)
    edge_joins = [tuple(slots) for slots in occ.values()]

    counts: dict[tuple[int, int], int] = {}
    for mask in range(1 << n):
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
        for a, b in edge_joins:
            union(a, b)
        k = len({find(4 * ci + pos) for ci in range(n) for pos in range(4)})
        r = bin(mask).count("1")
        key = (r, k)
        counts[key] = counts.get(key, 0) + 1

    loop = lp((1, 1), (-1, 1))  # q + 1/q
    total: Laurent = {}
    kmax = max((k for _, k in counts), default=0)
    loop_pow = [lp_pow(loop, k) for k in range(kmax + 1)]
    for (r, k), cnt in counts.items():
        sign = -1 if r % 2 else 1
        total = lp_add(total, lp_scale(loop_pow[k], sign * cnt, r))
    for _ in range(d.circles):
        total = lp_mul(total, loop)
    sign = -1 if st.c_minus % 2 else 1
    return lp_scale(total, sign, st.c_plus - 2 * st.c_minus)


def euler_matches_jones(d: Diagram, table: KhTable) -> bool:
    return table.euler() == jones_via_kauffman(d)


def determinant(d: Diagram) -> int:
    """|V(-1)| of a knot diagram, from the bracket oracle."""
    if d.n_components != 1:
        raise DiagramError("determinant helper is restricted to knots")
    jhat = jones_via_kauffman(d)
    v = lp_divexact(jhat, lp((1, 1), (-1, 1)))
    total = 0
    for e, c in v.items():
        if e % 2:
            raise InternalInvariantError("odd exponent in a knot's reduced Jones polynomial")
        total += c * (-1) ** ((e // 2) % 2)
    return abs(total)


# -- adequacy and reducedness -------------------------------------------------


def plus_adequate(d: Diagram) -> bool:
    """True when no circle of the extreme resolution state controlling the
    top homological degree touches itself at a crossing.

    A diagram satisfies i_max = c_plus exactly when it passes this test
    (the top corner of the cube survives); the single-kink unknot fails it.
    """
    if not d.crossings:
        return True
    top = (1 << len(d.crossings)) - 1
    _, mem = cube_mod._circles_of_mask(d, top)
    for t in d.crossings:
        # the 1-smoothing arcs pair slots (0,3) and (1,2)
        if mem[t[0]] == mem[t[1]]:
            return False
    return True


def is_reduced(d: Diagram) -> bool:
    """True when no crossing is a cut crossing of the underlying 4-valent
    graph (no nugatory crossings)."""
    n = len(d.crossings)
    occ: dict[int, list[int]] = {}
    for ci, t in enumerate(d.crossings):
        for pos in range(4):
            occ.setdefault(t[pos], []).append(4 * ci + pos)
    for x in range(n):
        parent = list(range(4 * n))

        def find(a: int) -> int:
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        def union(a: int, b: int) -> None:
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[ra] = rb

        for ci in range(n):
            if ci == x:
                continue
            base = 4 * ci
            for pos in range(1, 4):
                union(base, base + pos)
        kink = degenerate = False
        for slots in occ.values():
            a, b = slots
            a_at_x, b_at_x = a // 4 == x, b // 4 == x
            if a_at_x and b_at_x:
                if (a % 4 - b % 4) % 4 in (1, 3):
                    kink = True  # loop over an adjacent quadrant: nugatory
                else:
                    degenerate = True  # non-planar 1-crossing component
            elif a_at_x or b_at_x:
                continue
            else:
                union(a, b)
        if kink:
            return False
        if degenerate:
            continue
        far = []
        for pos in range(4):
            a, b = occ[d.crossings[x][pos]]
            far.append(find(b if a == 4 * x + pos else a))
        s0, s1, s2, s3 = far
        if {s0, s1}.isdisjoint({s2, s3}) or {s1, s2}.isdisjoint({s3, s0}):
            return False
    return True
