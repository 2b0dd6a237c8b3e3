"""Braid words and their closures (strands run downward through the braid)."""
from dataclasses import dataclass
from typing import Tuple

import numpy as np

from apps.khovanov.errors import DiagramError
from apps.khovanov.knots.diagram import Crossing, LinkDiagram


@dataclass(frozen=True)
class BraidWord:
    width: int
    letters: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "letters", tuple(int(l) for l in self.letters))
        if self.width < 1:
            raise DiagramError(f"braid width must be positive, got {self.width}")
        for l in self.letters:
            if l == 0 or abs(l) >= self.width:
                raise DiagramError(f"braid letter {l} out of range for width {self.width}")

    def permutation(self) -> Tuple[int, ...]:
        """perm[i] = final position of the strand starting at position i."""
        pos = list(range(self.width))
        for l in self.letters:
            p = abs(l)
            pos[p - 1], pos[p] = pos[p], pos[p - 1]
        perm = [0] * self.width
        for final, start in enumerate(pos):
            perm[start] = final
        return tuple(perm)

    def component_count(self) -> int:
        perm = self.permutation()
        seen = set()
        cycles = 0
        for i in range(self.width):
            if i in seen:
                continue
            cycles += 1
            while i not in seen:
                seen.add(i)
                i = perm[i]
        return cycles

    def __str__(self):
        return "B " + " ".join(str(v) for v in (self.width,) + self.letters)


def from_braid(b: BraidWord) -> LinkDiagram:
    labels = list(range(1, b.width + 1))
    next_id = b.width + 1
    raw = []
    for l in b.letters:
        p = abs(l)
        x, y = labels[p - 1], labels[p]
        x2, y2 = next_id, next_id + 1
        next_id += 2
        if l > 0:
            raw.append(((x, x2, y2, y), 1))
        else:
            raw.append(((y, x, x2, y2), -1))
        labels[p - 1], labels[p] = x2, y2

    # closure: bottom labels are identified with the top ones
    closing = {final: start for start, final in enumerate(labels, 1) if final != start}
    crossings = tuple(Crossing(tuple(closing.get(e, e) for e in edges), s) for edges, s in raw)
    loops = tuple(start for start, final in enumerate(labels, 1) if final == start)
    return LinkDiagram(crossings, loops)


def torus_braid(q: int) -> BraidWord:
    """Negative (3, q) torus braid: (σ1⁻¹ σ2⁻¹)^q."""
    if q < 1:
        raise DiagramError(f"torus parameter q must be positive, got {q}")
    return BraidWord(3, (-1, -2) * q)


def random_braid(rng: np.random.Generator, width: int, length: int) -> BraidWord:
    if width < 2:
        raise DiagramError("random braids need at least 2 strands")
    gens = rng.integers(1, width, size=length)
    signs = rng.choice([-1, 1], size=length)
    return BraidWord(width, tuple(int(g * s) for g, s in zip(gens, signs)))


def stabilize(b: BraidWord, sign: int = -1) -> BraidWord:
    """Markov stabilization: one more strand and the letter ±width."""
    if sign not in (1, -1):
        raise DiagramError(f"stabilization sign must be +1 or -1, got {sign}")
    return BraidWord(b.width + 1, b.letters + (sign * b.width,))
