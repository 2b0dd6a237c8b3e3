"""
Smoothings of a diagram and the circles they produce.

At crossing X[a,b,c,d] the 0-smoothing joins (a,b) and (c,d), the
1-smoothing joins (a,d) and (b,c). Circles are numbered by their lowest
edge id.
"""
from dataclasses import dataclass
from typing import Dict, List, Mapping, Tuple

from apps.khovanov.errors import DiagramError
from apps.khovanov.knots.diagram import LinkDiagram

ZERO_PAIRS = ((0, 1), (2, 3))
ONE_PAIRS = ((0, 3), (1, 2))


@dataclass(frozen=True)
class Smoothing:
    bits: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "bits", tuple(self.bits))
        if any(b not in (0, 1) for b in self.bits):
            raise DiagramError("smoothing bits must be 0 or 1")

    @property
    def r(self) -> int:
        return sum(self.bits)

    @property
    def mask(self) -> int:
        return sum(1 << i for i, b in enumerate(self.bits) if b)

    @classmethod
    def from_mask(cls, n: int, mask: int) -> "Smoothing":
        return cls(tuple((mask >> i) & 1 for i in range(n)))


@dataclass(frozen=True)
class CirclePartition:
    circle_count: int
    assignment: Mapping[int, int]

    @property
    def circles(self) -> Tuple[Tuple[int, ...], ...]:
        groups: List[List[int]] = [[] for _ in range(self.circle_count)]
        for e, c in sorted(self.assignment.items()):
            groups[c].append(e)
        return tuple(tuple(g) for g in groups)


class CircleResolver:
    """Precomputed edge indexing for repeated resolution of one diagram."""

    def __init__(self, d: LinkDiagram):
        self.diagram = d
        self.edge_ids = d.edges
        index = {e: i for i, e in enumerate(self.edge_ids)}
        self._slots = [tuple(index[e] for e in x.edges) for x in d.crossings]

    def labels(self, mask: int) -> Tuple[int, List[int]]:
        """(circle count, circle index per edge position) for the smoothing `mask`."""
        parent = list(range(len(self.edge_ids)))

        def find(i):
            while parent[i] != i:
                parent[i] = parent[parent[i]]
                i = parent[i]
            return i

        for c, slots in enumerate(self._slots):
            pairs = ONE_PAIRS if (mask >> c) & 1 else ZERO_PAIRS
            for p, q in pairs:
                ra, rb = find(slots[p]), find(slots[q])
                if ra != rb:
                    parent[max(ra, rb)] = min(ra, rb)
        circle_of: Dict[int, int] = {}
        out = []
        for i in range(len(self.edge_ids)):
            root = find(i)
            if root not in circle_of:
                circle_of[root] = len(circle_of)
            out.append(circle_of[root])
        return len(circle_of), out


def resolve(d: LinkDiagram, s: Smoothing) -> CirclePartition:
    if len(s.bits) != d.n:
        raise DiagramError(f"smoothing has {len(s.bits)} bits, diagram has {d.n} crossings")
    resolver = CircleResolver(d)
    count, labels = resolver.labels(s.mask)
    return CirclePartition(count, dict(zip(resolver.edge_ids, labels)))
