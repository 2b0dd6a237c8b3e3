"""
Partial resolutions D_k (crossings 1..k 1-smoothed) and D̄_k (1..k−1
1-smoothed, crossing k 0-smoothed) of a diagram along an ordered
selection of crossings.

Orientation rule: when the smoothing applied at step k is the oriented
resolution of crossing k (0 for a positive crossing, 1 for a negative
one) the new diagram inherits the orientation of D_{k−1}; the other
diagram is re-oriented by walking its strands, each walk starting from
the lowest unvisited edge in its old direction.
"""
from dataclasses import dataclass
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from apps.khovanov.errors import DiagramError
from apps.khovanov.knots.diagram import Crossing, LinkDiagram, crossing_signs
from apps.khovanov.telemetry import get_logger

logger = get_logger(__name__)

# slot partner at a smoothed crossing, per smoothing bit
_PARTNER = {
    0: {0: 1, 1: 0, 2: 3, 3: 2},
    1: {0: 3, 3: 0, 1: 2, 2: 1},
}


@dataclass(frozen=True)
class PartialResolution:
    k: int
    kind: str  # "closed" (D_k) or "open" (D̄_k)
    diagram: LinkDiagram
    crossing_map: Tuple[int, ...]  # original index of each remaining crossing
    inherited: bool
    resolved_sign: int = 0  # sign of crossing k in D_{k-1}; 0 for k = 0

    @property
    def n_plus(self) -> int:
        return crossing_signs(self.diagram)[0]

    @property
    def n_minus(self) -> int:
        return crossing_signs(self.diagram)[1]


@dataclass(frozen=True)
class PartialDiagrams:
    """closed[k] = D_k and open[k] = D̄_k for k = 0..m (both equal D at k = 0)."""

    base: LinkDiagram
    selected: Tuple[int, ...]
    closed: Tuple[PartialResolution, ...]
    open: Tuple[PartialResolution, ...]

    @property
    def m(self) -> int:
        return len(self.selected)

    def __iter__(self) -> Iterator[PartialResolution]:
        yield from self.closed
        yield from self.open[1:]


def smooth_crossing(
    d: LinkDiagram, index: int, bit: int, rng: Optional[np.random.Generator] = None
) -> Tuple[LinkDiagram, Tuple[int, ...]]:
    """
    Smooth one crossing and re-orient the result.

    Returns the new diagram and, for each of its crossings, the index of
    the crossing of `d` it came from. Without `rng` every strand walk
    starts in the old direction of its lowest edge, which reproduces the
    old orientation whenever the smoothing is the oriented one; with
    `rng` each walk picks its direction at random.
    """
    if not 0 <= index < d.n:
        raise DiagramError(f"crossing index {index} out of range for {d.n} crossings")
    if bit not in (0, 1):
        raise DiagramError(f"smoothing bit must be 0 or 1, got {bit}")

    occ = d.occurrences()
    partner = _PARTNER[bit]
    removed = d.crossings[index]

    # edges joined at the smoothed crossing merge; representative is the min id
    parent = {e: e for e in occ}

    def find(e):
        while parent[e] != e:
            parent[e] = parent[parent[e]]
            e = parent[e]
        return e

    for p in range(4):
        a, b = find(removed.edges[p]), find(removed.edges[partner[p]])
        if a != b:
            parent[max(a, b)] = min(a, b)

    def other(e, here):
        a, b = occ[e]
        return b if a == here else a

    def tail(e):
        return next(place for place in occ[e] if not d.crossings[place[0]].incoming(place[1]))

    entries: Dict[int, List[int]] = {c: [] for c in range(d.n) if c != index}
    visited = set()
    for e in sorted(occ):
        if e in visited or not occ[e]:
            continue
        start_from = tail(e)
        if rng is not None and rng.random() < 0.5:
            start_from = other(e, start_from)
        cur, frm = e, start_from
        while True:
            visited.add(cur)
            c, p = other(cur, frm)
            if c == index:
                out = partner[p]
            else:
                entries[c].append(p)
                out = (p + 2) % 4
            frm = (c, out)
            cur = d.crossings[c].edges[out]
            if cur == e and frm == start_from:
                break

    crossings = []
    crossing_map = []
    for c in sorted(entries):
        x = d.crossings[c]
        slots = entries[c]
        under = next(p for p in slots if p in (0, 2))
        over = next(p for p in slots if p in (1, 3))
        edges = tuple(find(e) for e in x.edges)
        if under == 2:
            edges = edges[2:] + edges[:2]
            over = (over + 2) % 4
        crossings.append(Crossing(edges, 1 if over == 3 else -1))
        crossing_map.append(c)

    used = {e for x in crossings for e in x.edges}
    loops = set(d.loops)
    loops.update(find(e) for e in occ if occ[e] and find(e) not in used)
    return LinkDiagram(tuple(crossings), tuple(sorted(loops))), tuple(crossing_map)


def partial_diagrams(
    d: LinkDiagram, selected: Sequence[int], rng: Optional[np.random.Generator] = None
) -> PartialDiagrams:
    """
    Build D_0..D_m and D̄_0..D̄_m for the ordered crossing selection.

    `rng` randomizes the orientation of every diagram that does not
    inherit its orientation; the inheriting one is always unchanged.
    """
    selected = tuple(int(c) for c in selected)
    if len(set(selected)) != len(selected):
        raise DiagramError(f"duplicate crossing in selection {selected}")
    for c in selected:
        if not 0 <= c < d.n:
            raise DiagramError(f"selected crossing {c} out of range for {d.n} crossings")

    identity = tuple(range(d.n))
    start = PartialResolution(0, "closed", d, identity, True)
    closed = [start]
    opened = [PartialResolution(0, "open", d, identity, True)]
    current, current_map = d, identity
    for k, original in enumerate(selected, 1):
        idx = current_map.index(original)
        sign = current.crossings[idx].sign
        # the 1-smoothing is the oriented resolution of a negative crossing
        closed_inherits = sign < 0
        dk, dk_map = smooth_crossing(current, idx, 1, None if closed_inherits else rng)
        dbar, dbar_map = smooth_crossing(current, idx, 0, rng if closed_inherits else None)
        closed.append(
            PartialResolution(k, "closed", dk, tuple(current_map[c] for c in dk_map), closed_inherits, sign)
        )
        opened.append(
            PartialResolution(k, "open", dbar, tuple(current_map[c] for c in dbar_map), not closed_inherits, sign)
        )
        current, current_map = dk, closed[-1].crossing_map
        logger.debug(
            "partial_resolution",
            k=k,
            sign=sign,
            closed_counts=crossing_signs(dk),
            open_counts=crossing_signs(dbar),
        )
    return PartialDiagrams(d, selected, tuple(closed), tuple(opened))
