"""
Cancellation tests: hand complexes, zig-zag corrections, and agreement with
block ranks on real cube complexes.
"""
from collections import Counter
from fractions import Fraction

import numpy as np
import pytest

from apps.khovanov.errors import ConsistencyError
from apps.khovanov.homology.complex import build_complex
from apps.khovanov.homology.frobenius import LEE
from apps.khovanov.knots.braids import from_braid, random_braid
from apps.khovanov.linalg.cancel import CancellationComplex, homology_dims, homology_dims_many
from apps.khovanov.linalg.sparse import rank


def _rank_homology(cx):
    """Homology per (i, q) slice from kernel and image ranks of the q-blocks."""
    ranks = {}
    for i in cx.homological_degrees()[:-1]:
        for q, (_, _, block) in cx.split_blocks(i, lambda r, g, q: q).items():
            ranks[(i, q)] = rank(block)
    sizes = Counter()
    for i in cx.homological_degrees():
        r = i + cx.n_minus
        for q in cx.qdegs[r]:
            sizes[(i, q)] += 1
    return {
        (i, q): n - ranks.get((i, q), 0) - ranks.get((i - 1, q), 0)
        for (i, q), n in sizes.items()
        if n - ranks.get((i, q), 0) - ranks.get((i - 1, q), 0)
    }


class TestCancellationComplex:
    def test_single_isomorphism(self):
        cx = CancellationComplex([0, 1])
        cx.add_entry(0, 1, 1)
        assert homology_dims(cx) == Counter()

    def test_zero_differential(self):
        cx = CancellationComplex([0, 0, 1, 2])
        assert homology_dims(cx) == {0: 2, 1: 1, 2: 1}

    def test_non_unit_pivot(self):
        """Multiplication by 2 is invertible over the rationals."""
        cx = CancellationComplex([0, 1])
        cx.add_entry(0, 1, 2)
        assert homology_dims(cx) == Counter()

    def test_entries_accumulate(self):
        cx = CancellationComplex([0, 1])
        cx.add_entry(0, 1, 1)
        cx.add_entry(0, 1, -1)
        assert cx.nnz() == 0
        assert homology_dims(cx) == {0: 1, 1: 1}

    def test_degree_checked(self):
        cx = CancellationComplex([0, 0])
        with pytest.raises(ValueError):
            cx.add_entry(0, 1, 1)

    def test_zig_zag_correction(self):
        """d(x) = b, d(a) = b + y: cancelling (a, b) leaves d(x) = −y."""
        x, a, b, y = range(4)
        cx = CancellationComplex([0, 0, 1, 1])
        cx.add_entry(x, b, 1)
        cx.add_entry(a, b, 1)
        cx.add_entry(a, y, 1)
        assert cx.cancel(a, b) == [x]
        assert cx.out[x] == {y: -1}
        assert cx.inc[y] == {x: -1}
        assert cx.survivors() == {0: 1, 1: 1}
        assert homology_dims(cx) == Counter()

    def test_fraction_correction(self):
        x, a, b, y = range(4)
        cx = CancellationComplex([0, 0, 1, 1])
        cx.add_entry(x, b, 1)
        cx.add_entry(a, b, 2)
        cx.add_entry(a, y, 3)
        cx.cancel(a, b)
        assert cx.out[x] == {y: Fraction(-3, 2)}

    def test_correction_can_cancel_entry(self):
        """d(x) = b + y and d(a) = b + y: the zig-zag removes d(x)[y]."""
        x, a, b, y = range(4)
        cx = CancellationComplex([0, 0, 1, 1])
        for src in (x, a):
            cx.add_entry(src, b, 1)
            cx.add_entry(src, y, 1)
        cx.cancel(a, b)
        assert cx.out[x] == {}
        assert homology_dims(cx) == {0: 1, 1: 1}

    def test_entries_into_a_and_out_of_b_disappear(self):
        z, a, b, w = range(4)
        cx = CancellationComplex([0, 1, 2, 3])
        cx.add_entry(z, a, 1)
        cx.add_entry(a, b, 1)
        cx.add_entry(b, w, 1)
        cx.cancel(a, b)
        assert cx.out[z] == {}
        assert cx.inc[w] == {}
        assert homology_dims(cx) == {0: 1, 3: 1}


class TestAgainstRanks:
    def setup_method(self):
        self.rng = np.random.default_rng(41)

    def _slices(self, d):
        cx = build_complex(d)
        dims = {(i, q): v for q, sl in cx.quantum_slices() for i, v in homology_dims(sl).items()}
        return cx, dims

    def test_torus_complexes(self, trefoil, t33, hopf):
        for d in (trefoil, t33, hopf):
            cx, dims = self._slices(d)
            assert dims == _rank_homology(cx)

    def test_random_braids(self):
        for _ in range(15):
            width = int(self.rng.integers(2, 5))
            d = from_braid(random_braid(self.rng, width, int(self.rng.integers(1, 9))))
            cx, dims = self._slices(d)
            assert dims == _rank_homology(cx)

    def test_parallel_matches_serial(self, t33):
        serial = homology_dims_many(build_complex(t33).quantum_slices(), workers=1)
        parallel = homology_dims_many(build_complex(t33).quantum_slices(), workers=2)
        assert serial == parallel

    def test_ungraded_algebra_rejected(self, trefoil):
        with pytest.raises(ConsistencyError, match="no quantum grading"):
            build_complex(trefoil, LEE).quantum_slices()
