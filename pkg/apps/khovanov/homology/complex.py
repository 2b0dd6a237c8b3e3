"""
Cube-of-resolutions chain complexes.

A generator is a pair (mask, labels): `mask` is the smoothing (bit c set
when crossing c is 1-smoothed) and bit i of `labels` is set when circle i
carries the second basis vector (x, or b for the diagonal Lee basis).
Circles of a smoothing are numbered by their lowest edge id.

Degrees are stored unnormalized: r = popcount(mask) and
q = k − 2·popcount(labels) + r. The normalized bidegree is
(i, j) = (r − n⁻, q + n⁺ − 2n⁻).
"""
import math
from dataclasses import dataclass
from typing import Callable, Dict, Hashable, List, Sequence, Tuple

from opentelemetry import trace

from apps.khovanov import config, telemetry
from apps.khovanov.errors import ConsistencyError, CubeLimitError
from apps.khovanov.homology.frobenius import KHOVANOV, FrobeniusAlgebra
from apps.khovanov.knots.diagram import LinkDiagram, crossing_signs
from apps.khovanov.knots.smoothing import CircleResolver
from apps.khovanov.linalg.cancel import CancellationComplex
from apps.khovanov.linalg.sparse import SparseMat

tracer = trace.get_tracer(__name__)
logger = telemetry.get_logger(__name__)

Generator = Tuple[int, int]


def popcount(v: int) -> int:
    return bin(v).count("1")


def check_cube_limit(d: LinkDiagram, limit: int = None) -> None:
    limit = config.cube_limit(limit)
    if d.n > limit:
        raise CubeLimitError(d.n, limit)


def cube_circles(d: LinkDiagram) -> Tuple[List[int], List[List[int]]]:
    """Circle count and per-edge circle index for every vertex of the cube."""
    resolver = CircleResolver(d)
    counts, labels = [], []
    for mask in range(1 << d.n):
        k, lab = resolver.labels(mask)
        counts.append(k)
        labels.append(lab)
    return counts, labels


@dataclass(frozen=True, eq=False)
class ChainComplex:
    diagram: LinkDiagram
    algebra: FrobeniusAlgebra
    n_plus: int
    n_minus: int
    bases: Dict[int, List[Generator]]
    qdegs: Dict[int, List[int]]
    differentials: Dict[int, SparseMat]
    circle_labels: List[List[int]]

    @property
    def n(self) -> int:
        return self.diagram.n

    @property
    def q_shift(self) -> int:
        return self.n_plus - 2 * self.n_minus

    def homological_degrees(self) -> List[int]:
        return [r - self.n_minus for r in sorted(self.bases)]

    def basis(self, i: int) -> List[Generator]:
        return self.bases.get(i + self.n_minus, [])

    def jdegs(self, i: int) -> List[int]:
        return [q + self.q_shift for q in self.qdegs.get(i + self.n_minus, [])]

    def differential(self, i: int) -> SparseMat:
        """d: C^i → C^{i+1} (normalized degree)."""
        r = i + self.n_minus
        if r in self.differentials:
            return self.differentials[r]
        return SparseMat.zeros(len(self.bases.get(r + 1, [])), len(self.bases.get(r, [])))

    def dimensions(self) -> Dict[Tuple[int, int], int]:
        dims: Dict[Tuple[int, int], int] = {}
        for r, qs in self.qdegs.items():
            for q in qs:
                key = (r - self.n_minus, q + self.q_shift)
                dims[key] = dims.get(key, 0) + 1
        return dims

    def total_dimension(self) -> int:
        return sum(len(b) for b in self.bases.values())

    def check_d_squared(self) -> None:
        for r in range(self.n - 1):
            composite = self.differentials[r + 1].matmul(self.differentials[r])
            if not composite.is_zero():
                raise ConsistencyError(f"d∘d ≠ 0 at degree {r - self.n_minus} ({self.algebra.name})")

    def split_blocks(
        self, i: int, key: Callable[[int, Generator, int], Hashable]
    ) -> Dict[Hashable, Tuple[List[int], List[int], SparseMat]]:
        """
        Restrict d: C^i → C^{i+1} to blocks of generators sharing a key.

        `key(r, generator, q)` must be preserved by the differential.
        Returns key -> (source indices, target indices, block matrix).
        """
        r = i + self.n_minus
        src, dst = self.bases.get(r, []), self.bases.get(r + 1, [])
        src_keys = [key(r, g, q) for g, q in zip(src, self.qdegs.get(r, []))]
        dst_keys = [key(r + 1, g, q) for g, q in zip(dst, self.qdegs.get(r + 1, []))]
        rows: Dict[Hashable, List[int]] = {}
        position = []
        for idx, k in enumerate(dst_keys):
            group = rows.setdefault(k, [])
            position.append(len(group))
            group.append(idx)
        cols: Dict[Hashable, List[int]] = {}
        columns: Dict[Hashable, List[Dict[int, int]]] = {}
        d = self.differential(i)
        for idx, col in enumerate(d.columns()):
            k = src_keys[idx]
            moved = {}
            for row, v in col.items():
                if dst_keys[row] != k:
                    raise ConsistencyError(f"differential leaves block {k!r} at degree {i}")
                moved[position[row]] = v
            cols.setdefault(k, []).append(idx)
            columns.setdefault(k, []).append(moved)
        blocks = {}
        for k in set(cols) | set(rows):
            c_idx, r_idx = cols.get(k, []), rows.get(k, [])
            blocks[k] = (c_idx, r_idx, SparseMat(len(r_idx), len(c_idx), columns.get(k, [])))
        return blocks

    def quantum_slices(self) -> List[Tuple[int, CancellationComplex]]:
        """
        One cancellation complex per unnormalized quantum degree q, with
        generators carrying their normalized homological degree.
        Only valid for graded algebras, whose differential preserves q.
        """
        if not self.algebra.graded:
            raise ConsistencyError(f"{self.algebra.name} complex has no quantum grading")
        local: Dict[int, List[int]] = {}
        degrees: Dict[int, List[int]] = {}
        for r in sorted(self.bases):
            ids = []
            for q in self.qdegs[r]:
                group = degrees.setdefault(q, [])
                ids.append(len(group))
                group.append(r - self.n_minus)
            local[r] = ids
        slices = {q: CancellationComplex(degs) for q, degs in degrees.items()}
        for r, d in self.differentials.items():
            src_q, dst_q = self.qdegs[r], self.qdegs[r + 1]
            src_ids, dst_ids = local[r], local[r + 1]
            for col, entries in enumerate(d.columns()):
                q = src_q[col]
                target = slices[q]
                for row, v in entries.items():
                    if dst_q[row] != q:
                        raise ConsistencyError(f"differential changes q at degree {r - self.n_minus}")
                    target.add_entry(src_ids[col], dst_ids[row], v)
        return sorted(slices.items())


def _edge_rule(lab_src: Sequence[int], k_src: int, lab_dst: Sequence[int], a_pos: int, c_pos: int):
    first_edge = [-1] * k_src
    for pos, circle in enumerate(lab_src):
        if first_edge[circle] < 0:
            first_edge[circle] = pos
    a, c = lab_src[a_pos], lab_src[c_pos]
    carried = [(i, lab_dst[first_edge[i]]) for i in range(k_src) if i != a and i != c]
    return a != c, a, c, carried, lab_dst[a_pos], lab_dst[c_pos]


def _apply(alg: FrobeniusAlgebra, rule, labels: int):
    merge, a, c, carried, out_a, out_c = rule
    base = 0
    for i, t in carried:
        if (labels >> i) & 1:
            base |= 1 << t
    la = (labels >> a) & 1
    if merge:
        lc = (labels >> c) & 1
        for v, coeff in alg.mult[(la, lc)].items():
            yield base | (v << out_a), coeff
    else:
        for (u, v), coeff in alg.comult[la].items():
            yield base | (u << out_a) | (v << out_c), coeff


def build_complex(d: LinkDiagram, algebra: FrobeniusAlgebra = KHOVANOV, cube_limit: int = None) -> ChainComplex:
    check_cube_limit(d, cube_limit)
    with tracer.start_as_current_span("build_complex") as span:
        n = d.n
        span.set_attribute("crossings", n)
        span.set_attribute("algebra", algebra.name)
        n_plus, n_minus = crossing_signs(d)
        counts, labels = cube_circles(d)

        bases: Dict[int, List[Generator]] = {r: [] for r in range(n + 1)}
        qdegs: Dict[int, List[int]] = {r: [] for r in range(n + 1)}
        for mask in range(1 << n):
            r, k = popcount(mask), counts[mask]
            for lab in range(1 << k):
                bases[r].append((mask, lab))
                qdegs[r].append(k - 2 * popcount(lab) + r)
        index = {r: {g: i for i, g in enumerate(gens)} for r, gens in bases.items()}

        resolver_edges = d.edges
        pos = {e: i for i, e in enumerate(resolver_edges)}
        slot_a = [pos[x.edges[0]] for x in d.crossings]
        slot_c = [pos[x.edges[2]] for x in d.crossings]

        differentials: Dict[int, SparseMat] = {}
        for r in range(n):
            rules: Dict[Tuple[int, int], tuple] = {}
            target_index = index[r + 1]
            columns = []
            for mask, lab in bases[r]:
                col: Dict[int, int] = {}
                for c in range(n):
                    if (mask >> c) & 1:
                        continue
                    target = mask | (1 << c)
                    rule = rules.get((mask, c))
                    if rule is None:
                        rule = _edge_rule(labels[mask], counts[mask], labels[target], slot_a[c], slot_c[c])
                        rules[(mask, c)] = rule
                    sign = -1 if popcount(mask & ((1 << c) - 1)) & 1 else 1
                    for lab2, coeff in _apply(algebra, rule, lab):
                        row = target_index[(target, lab2)]
                        v = col.get(row, 0) + sign * coeff
                        if v:
                            col[row] = v
                        else:
                            col.pop(row)
                columns.append(col)
            differentials[r] = SparseMat(len(bases[r + 1]), len(bases[r]), columns)

        cx = ChainComplex(d, algebra, n_plus, n_minus, bases, qdegs, differentials, labels)
        span.set_attribute("dimension", cx.total_dimension())
        if config.debug_checks():
            cx.check_d_squared()
        telemetry.record_complex_built(n, algebra.name)
        logger.debug("complex_built", crossings=n, algebra=algebra.name, dimension=cx.total_dimension())
        return cx


def chain_dimensions(d: LinkDiagram, normalized: bool = True, cube_limit: int = None) -> Dict[Tuple[int, int], int]:
    """Bigraded dimensions of the chain groups, without building differentials."""
    check_cube_limit(d, cube_limit)
    resolver = CircleResolver(d)
    n_plus, n_minus = crossing_signs(d)
    h_shift, q_shift = (-n_minus, n_plus - 2 * n_minus) if normalized else (0, 0)
    dims: Dict[Tuple[int, int], int] = {}
    for mask in range(1 << d.n):
        r = popcount(mask)
        k, _ = resolver.labels(mask)
        for t in range(k + 1):
            key = (r + h_shift, k - 2 * t + r + q_shift)
            dims[key] = dims.get(key, 0) + math.comb(k, t)
    return dims
