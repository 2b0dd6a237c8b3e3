"""
Homology dimensions of a finite chain complex by cancelling isomorphisms.

A nonzero entry d(a) ∋ p·b pairs a generator a of degree r with a
generator b of degree r+1. Cancelling the pair removes both generators;
every remaining path x → b ← a → y is replaced by the zig-zag correction

    d(x)[y] −= d(x)[b] · d(a)[y] / p

and the entries into a and out of b disappear with them. The result is a
chain homotopy equivalent complex. When no entries are left, the surviving
generators of each degree count the homology in that degree.

Pairs are taken from the generator with the shortest current image,
matched to the target with a unit coefficient and the fewest incoming
entries (the smallest zig-zag fill-in). Non-unit pivots are
allowed and turn the entries they touch into Fractions.
"""
import heapq
import time
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from typing import Dict, Iterable, List, Sequence, Tuple

from apps.khovanov import telemetry
from apps.khovanov.errors import ConsistencyError
from apps.khovanov.linalg.sparse import Number


def _ratio(t: Number, p: Number) -> Number:
    if p == 1:
        return t
    if p == -1:
        return -t
    v = Fraction(t) / p
    return v.numerator if v.denominator == 1 else v


class CancellationComplex:
    """Mutable complex on generators 0..n−1 with d raising the degree by one."""

    __slots__ = ("degree", "out", "inc", "alive")

    def __init__(self, degrees: Sequence[int]):
        self.degree: List[int] = list(degrees)
        self.out: List[Dict[int, Number]] = [{} for _ in self.degree]
        self.inc: List[Dict[int, Number]] = [{} for _ in self.degree]
        self.alive: List[bool] = [True] * len(self.degree)

    def __len__(self) -> int:
        return len(self.degree)

    def add_entry(self, src: int, dst: int, value: Number) -> None:
        """Add `value` to the coefficient of dst in d(src)."""
        if self.degree[dst] != self.degree[src] + 1:
            raise ValueError(f"entry {src} → {dst} does not raise the degree by one")
        v = self.out[src].get(dst, 0) + value
        if v:
            self.out[src][dst] = v
            self.inc[dst][src] = v
        else:
            self.out[src].pop(dst, None)
            self.inc[dst].pop(src, None)

    def nnz(self) -> int:
        return sum(len(o) for o in self.out)

    def _drop(self, g: int) -> None:
        for y in self.out[g]:
            del self.inc[y][g]
        for x in self.inc[g]:
            del self.out[x][g]
        self.out[g] = {}
        self.inc[g] = {}
        self.alive[g] = False

    def cancel(self, a: int, b: int) -> List[int]:
        """Cancel the pair (a, b); returns the sources whose image changed."""
        p = self.out[a][b]
        targets = [(y, u) for y, u in self.out[a].items() if y != b]
        sources = [(x, w) for x, w in self.inc[b].items() if x != a]
        self._drop(a)
        self._drop(b)
        for x, w in sources:
            row = self.out[x]
            for y, u in targets:
                v = row.get(y, 0) - _ratio(w * u, p)
                if v:
                    row[y] = v
                    self.inc[y][x] = v
                else:
                    row.pop(y, None)
                    self.inc[y].pop(x, None)
        return [x for x, _ in sources]

    def _partner(self, a: int) -> int:
        image = self.out[a]
        return min(image, key=lambda y: (abs(image[y]) != 1, len(self.inc[y]), y))

    def reduce(self) -> int:
        """Cancel until d = 0; returns the number of cancelled pairs."""
        heap = [(len(o), g) for g, o in enumerate(self.out) if o]
        heapq.heapify(heap)
        pairs = 0
        while heap:
            size, a = heapq.heappop(heap)
            if not self.alive[a]:
                continue
            current = len(self.out[a])
            if current == 0:
                continue
            if current != size:
                heapq.heappush(heap, (current, a))
                continue
            for x in self.cancel(a, self._partner(a)):
                if self.out[x]:
                    heapq.heappush(heap, (len(self.out[x]), x))
            pairs += 1
        return pairs

    def survivors(self) -> Counter:
        """degree -> number of surviving generators."""
        return Counter(r for r, live in zip(self.degree, self.alive) if live)


def homology_dims(cx: CancellationComplex) -> Counter:
    """Reduce the complex in place and count the survivors per degree."""
    start = time.perf_counter()
    size = len(cx)
    cx.reduce()
    telemetry.record_elimination((time.perf_counter() - start) * 1000, size)
    if cx.nnz():
        raise ConsistencyError("cancellation stopped with a nonzero differential")
    return cx.survivors()


def homology_dims_many(
    complexes: Iterable[Tuple[object, CancellationComplex]], workers: int = 1
) -> Dict[object, Counter]:
    """homology_dims over independent complexes, optionally in a process pool (key order kept)."""
    items = list(complexes)
    if workers <= 1 or len(items) < 2:
        return {key: homology_dims(cx) for key, cx in items}
    with ProcessPoolExecutor(max_workers=workers) as pool:
        results = pool.map(homology_dims, [cx for _, cx in items], chunksize=max(1, len(items) // (4 * workers)))
        return {key: dims for (key, _), dims in zip(items, results)}
