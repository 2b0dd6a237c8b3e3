"""
Oriented planar diagrams in PD notation.

Each crossing lists its four edge ids counterclockwise, starting from the
incoming under-strand, so the under-strand always runs slot 0 → slot 2.
The over-strand runs slot 3 → slot 1 on a positive crossing and
slot 1 → slot 3 on a negative one. Crossingless circles are kept as
separate loop edge ids ("O e" records).

PD text format:
    X a b c d      crossing
    O e            crossingless circle
    B w l1 l2 ...  braid closure (must be the only record)
    # ...          comment
"""
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from apps.khovanov.errors import DiagramError


@dataclass(frozen=True)
class Crossing:
    edges: Tuple[int, int, int, int]
    sign: int

    def __post_init__(self):
        if len(self.edges) != 4:
            raise DiagramError(f"crossing needs 4 edges, got {len(self.edges)}")
        if self.sign not in (1, -1):
            raise DiagramError(f"crossing sign must be +1 or -1, got {self.sign}")

    def incoming(self, slot: int) -> bool:
        """True if the edge at this slot points into the crossing."""
        return slot == 0 or (slot == 3 and self.sign > 0) or (slot == 1 and self.sign < 0)


@dataclass(frozen=True)
class LinkDiagram:
    crossings: Tuple[Crossing, ...]
    loops: Tuple[int, ...] = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "crossings", tuple(self.crossings))
        object.__setattr__(self, "loops", tuple(sorted(self.loops)))
        _validate(self)

    @property
    def n(self) -> int:
        return len(self.crossings)

    @property
    def edges(self) -> Tuple[int, ...]:
        ids = {e for x in self.crossings for e in x.edges}
        ids.update(self.loops)
        return tuple(sorted(ids))

    @property
    def signs(self) -> Tuple[int, ...]:
        return tuple(x.sign for x in self.crossings)

    def occurrences(self) -> Dict[int, List[Tuple[int, int]]]:
        """edge id -> [(crossing index, slot), ...] (two entries, none for loops)."""
        occ: Dict[int, List[Tuple[int, int]]] = {e: [] for e in self.loops}
        for c, x in enumerate(self.crossings):
            for p, e in enumerate(x.edges):
                occ.setdefault(e, []).append((c, p))
        return occ

    def __str__(self):
        return to_pd_text(self)


def _validate(d: LinkDiagram) -> None:
    occ = d.occurrences()
    for e in d.loops:
        if occ[e]:
            raise DiagramError(f"loop edge {e} also appears in a crossing")
    if len(set(d.loops)) != len(d.loops):
        raise DiagramError("duplicate loop edge id")
    for e, places in occ.items():
        if e in d.loops:
            continue
        if len(places) != 2:
            raise DiagramError(f"edge {e} occurs {len(places)} times, expected 2")
        heads = sum(1 for c, p in places if d.crossings[c].incoming(p))
        if heads != 1:
            raise DiagramError(f"inconsistent orientation on edge {e}")


def crossing_signs(d: LinkDiagram) -> Tuple[int, int]:
    """(n_plus, n_minus)."""
    n_plus = sum(1 for x in d.crossings if x.sign > 0)
    return n_plus, d.n - n_plus


def _components(d: LinkDiagram) -> List[Tuple[int, ...]]:
    parent = {e: e for e in d.edges}

    def find(e):
        while parent[e] != e:
            parent[e] = parent[parent[e]]
            e = parent[e]
        return e

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)

    for x in d.crossings:
        union(x.edges[0], x.edges[2])
        union(x.edges[1], x.edges[3])
    groups: Dict[int, List[int]] = {}
    for e in d.edges:
        groups.setdefault(find(e), []).append(e)
    return sorted((tuple(sorted(g)) for g in groups.values()), key=lambda g: g[0])


def components_and_linking(d: LinkDiagram) -> Tuple[List[Tuple[int, ...]], List[List[int]]]:
    """Components (edge tuples, ordered by lowest edge) and the symmetric linking matrix."""
    comps = _components(d)
    where = {e: i for i, comp in enumerate(comps) for e in comp}
    k = len(comps)
    doubled = [[0] * k for _ in range(k)]
    for x in d.crossings:
        a, b = where[x.edges[0]], where[x.edges[1]]
        if a != b:
            doubled[a][b] += x.sign
            doubled[b][a] += x.sign
    for row in doubled:
        for v in row:
            if v % 2:
                raise DiagramError("odd crossing count between two components")
    return comps, [[v // 2 for v in row] for row in doubled]


def mirror(d: LinkDiagram) -> LinkDiagram:
    """Switch every crossing; the result lists edges from the new under-strand."""
    out = []
    for x in d.crossings:
        a, b, c, e = x.edges
        if x.sign > 0:
            out.append(Crossing((e, a, b, c), -1))
        else:
            out.append(Crossing((b, c, e, a), 1))
    return LinkDiagram(tuple(out), d.loops)


def relabel(d: LinkDiagram, mapping: Dict[int, int]) -> LinkDiagram:
    return LinkDiagram(
        tuple(Crossing(tuple(mapping[e] for e in x.edges), x.sign) for x in d.crossings),
        tuple(mapping[e] for e in d.loops),
    )


def disjoint_union(d1: LinkDiagram, d2: LinkDiagram) -> LinkDiagram:
    """Split union; the second diagram's edges are shifted past the first's."""
    offset = max(d1.edges, default=0)
    shifted = relabel(d2, {e: e + offset for e in d2.edges}) if offset else d2
    return LinkDiagram(d1.crossings + shifted.crossings, d1.loops + shifted.loops)


def add_kink(d: LinkDiagram, edge: int, sign: int = -1) -> LinkDiagram:
    """Reidemeister-I kink on `edge`: X[e,f,f,g] when negative, X[e,g,f,f] when positive."""
    if edge not in d.edges:
        raise DiagramError(f"no edge {edge} in diagram")
    if sign not in (1, -1):
        raise DiagramError(f"kink sign must be +1 or -1, got {sign}")
    top = max(d.edges)
    f = top + 1
    if edge in d.loops:
        g = edge
        loops = tuple(e for e in d.loops if e != edge)
        crossings = list(d.crossings)
    else:
        g = top + 2
        loops = d.loops
        crossings = []
        for x in d.crossings:
            edges = list(x.edges)
            for p, e in enumerate(edges):
                if e == edge and x.incoming(p):
                    edges[p] = g
            crossings.append(Crossing(tuple(edges), x.sign))
    kink = Crossing((edge, f, f, g), -1) if sign < 0 else Crossing((edge, g, f, f), 1)
    return LinkDiagram(tuple(crossings) + (kink,), loops)


def _orient(crossings: Sequence[Tuple[int, int, int, int]], line_of: Sequence[int]) -> List[int]:
    """Walk every strand from its entry slots and read off the crossing signs."""
    occ: Dict[int, List[Tuple[int, int]]] = {}
    for c, edges in enumerate(crossings):
        for p, e in enumerate(edges):
            occ.setdefault(e, []).append((c, p))
    for e, places in occ.items():
        if len(places) != 2:
            line = line_of[places[-1][0]]
            raise DiagramError(f"edge {e} occurs {len(places)} times, expected 2", line)

    signs: List[Optional[int]] = [None] * len(crossings)
    entered = set()

    def other(e, here):
        a, b = occ[e]
        return b if a == here else a

    def walk(c, p):
        start = (c, p)
        while True:
            entered.add((c, p))
            out = (p + 2) % 4
            nxt = other(crossings[c][out], (c, out))
            c, p = nxt
            if (c, p) == start:
                return
            if p == 2:
                raise DiagramError("inconsistent orientation", line_of[c])
            if p in (1, 3):
                s = 1 if p == 3 else -1
                if signs[c] is not None and signs[c] != s:
                    raise DiagramError("inconsistent orientation", line_of[c])
                signs[c] = s
            if (c, p) in entered:
                raise DiagramError("inconsistent orientation", line_of[c])

    for c in range(len(crossings)):
        if (c, 0) not in entered:
            walk(c, 0)
    # components that never pass under: orient by edge numbering at the first crossing
    for c, edges in enumerate(crossings):
        if signs[c] is None:
            x, y = edges[1], edges[3]
            positive = x - y == 1 or y - x > 1
            signs[c] = 1 if positive else -1
            walk(c, 3 if positive else 1)
    return signs


def parse_pd(text: str) -> LinkDiagram:
    crossings: List[Tuple[int, int, int, int]] = []
    line_of: List[int] = []
    loops: List[int] = []
    braid = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tag, *rest = line.split()
        try:
            values = [int(v) for v in rest]
        except ValueError:
            raise DiagramError(f"malformed record {line!r}", lineno) from None
        if tag == "X":
            if len(values) != 4:
                raise DiagramError(f"crossing needs 4 edge ids, got {len(values)}", lineno)
            crossings.append(tuple(values))
            line_of.append(lineno)
        elif tag == "O":
            if len(values) != 1:
                raise DiagramError("circle record needs exactly 1 edge id", lineno)
            if values[0] in loops:
                raise DiagramError(f"edge {values[0]} occurs 2 times as a circle", lineno)
            loops.append(values[0])
        elif tag == "B":
            if braid is not None or not values:
                raise DiagramError("malformed braid record", lineno)
            braid = (lineno, values)
        else:
            raise DiagramError(f"unknown record type {tag!r}", lineno)

    if braid is not None:
        if crossings or loops:
            raise DiagramError("braid record cannot be mixed with X/O records", braid[0])
        from apps.khovanov.knots.braids import BraidWord, from_braid

        return from_braid(BraidWord(braid[1][0], tuple(braid[1][1:])))
    if not crossings and not loops:
        raise DiagramError("no crossings")
    used = {e for edges in crossings for e in edges}
    for e in loops:
        if e in used:
            raise DiagramError(f"circle edge {e} also appears in a crossing")
    signs = _orient(crossings, line_of)
    return LinkDiagram(tuple(Crossing(edges, s) for edges, s in zip(crossings, signs)), tuple(loops))


def renumber(d: LinkDiagram) -> LinkDiagram:
    """
    Relabel edges 1, 2, ... consecutively along each oriented component.

    Every component starts at the edge entering its lowest-index crossing,
    so a component that only passes over is read back with the same
    direction by the edge-numbering rule of parse_pd. Loops come last.
    """
    head: Dict[int, Tuple[int, int]] = {}
    starts: List[int] = []
    for c, x in enumerate(d.crossings):
        for p in (0, 1, 3):
            if x.incoming(p):
                starts.append(x.edges[p])
        for p, e in enumerate(x.edges):
            if x.incoming(p):
                head[e] = (c, p)
    mapping: Dict[int, int] = {}
    for e in starts:
        while e not in mapping:
            mapping[e] = len(mapping) + 1
            c, p = head[e]
            e = d.crossings[c].edges[(p + 2) % 4]
    for e in d.loops:
        mapping[e] = len(mapping) + 1
    return relabel(d, mapping)


def to_pd_text(d: LinkDiagram) -> str:
    """PD records of the renumbered diagram; parse_pd(to_pd_text(d)) == renumber(d)."""
    d = renumber(d)
    lines = [f"X {a} {b} {c} {e}" for a, b, c, e in (x.edges for x in d.crossings)]
    lines.extend(f"O {e}" for e in d.loops)
    return "\n".join(lines) + "\n"
