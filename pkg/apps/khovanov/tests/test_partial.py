import numpy as np
import pytest

from apps.khovanov.errors import DiagramError
from apps.khovanov.homology.khovanov import KhTable, khovanov_homology
from apps.khovanov.knots.braids import from_braid, torus_braid
from apps.khovanov.knots.diagram import components_and_linking, crossing_signs, parse_pd
from apps.khovanov.knots.partial import partial_diagrams, smooth_crossing
from apps.khovanov.knots.smoothing import CircleResolver

UNKNOT_KH = KhTable({(0, -1): 1, (0, 1): 1})
UNLINK2_KH = KhTable({(0, -2): 1, (0, 0): 2, (0, 2): 1})
TREFOIL_KH = KhTable({(0, -1): 1, (0, -3): 1, (-2, -5): 1, (-3, -9): 1})


class TestSmoothCrossing:
    def test_kink_oriented_resolution(self):
        """1-smoothing a negative kink splits off a circle."""
        d, mapping = smooth_crossing(parse_pd("X 1 2 2 1"), 0, 1)
        assert d.n == 0
        assert d.loops == (1, 2)
        assert mapping == ()

    def test_kink_other_resolution(self):
        d, _ = smooth_crossing(parse_pd("X 1 2 2 1"), 0, 0)
        assert d.loops == (1,)

    def test_index_checked(self, trefoil):
        with pytest.raises(DiagramError):
            smooth_crossing(trefoil, 4, 1)

    def test_bit_checked(self, trefoil):
        with pytest.raises(DiagramError):
            smooth_crossing(trefoil, 0, 2)

    def test_oriented_smoothing_keeps_signs(self, t33):
        d, mapping = smooth_crossing(t33, 0, 1)
        assert mapping == (1, 2, 3, 4, 5)
        assert crossing_signs(d) == (0, 5)


class TestPartialDiagrams:
    def test_empty_selection(self, trefoil):
        parts = partial_diagrams(trefoil, ())
        assert parts.m == 0
        assert [p.diagram for p in parts] == [trefoil]

    def test_crossing_counts(self, t33):
        parts = partial_diagrams(t33, (0, 1))
        for k in range(3):
            assert parts.closed[k].diagram.n == 6 - k
            assert parts.open[k].diagram.n == 6 - k

    def test_exactly_one_inherits(self, t33):
        parts = partial_diagrams(t33, (0, 1))
        for k in (1, 2):
            assert parts.closed[k].inherited != parts.open[k].inherited

    def test_t33_top_two_diagrams(self, t33):
        """Top-two resolutions of T(3,3): two unknots, one unknot, and the trefoil."""
        parts = partial_diagrams(t33, (0, 1))
        assert crossing_signs(parts.open[1].diagram) == (3, 2)
        assert len(components_and_linking(parts.open[1].diagram)[0]) == 2
        assert khovanov_homology(parts.open[1].diagram) == UNLINK2_KH
        assert khovanov_homology(parts.open[2].diagram) == UNKNOT_KH
        assert khovanov_homology(parts.closed[2].diagram) == TREFOIL_KH

    def test_t36_open_counts(self):
        parts = partial_diagrams(from_braid(torus_braid(6)), (0, 1))
        assert crossing_signs(parts.open[1].diagram) == (7, 4)

    def test_crossing_map_tracks_originals(self, t33):
        parts = partial_diagrams(t33, (2, 0))
        assert parts.closed[1].crossing_map == (0, 1, 3, 4, 5)
        assert parts.closed[2].crossing_map == (1, 3, 4, 5)

    def test_duplicate_selection(self, t33):
        with pytest.raises(DiagramError, match="duplicate"):
            partial_diagrams(t33, (1, 1))

    def test_selection_out_of_range(self, t33):
        with pytest.raises(DiagramError, match="out of range"):
            partial_diagrams(t33, (0, 6))


class TestRandomOrientation:
    def setup_method(self):
        self.rng = np.random.default_rng(42)

    def test_inheriting_diagrams_unchanged(self, t33):
        """All crossings negative: the D_k chain inherits and ignores the rng."""
        plain = partial_diagrams(t33, (0, 1))
        for _ in range(10):
            randomized = partial_diagrams(t33, (0, 1), self.rng)
            assert [p.diagram for p in randomized.closed] == [p.diagram for p in plain.closed]

    def test_circles_do_not_depend_on_orientation(self, t33):
        plain = partial_diagrams(t33, (0, 1))
        for _ in range(10):
            randomized = partial_diagrams(t33, (0, 1), self.rng)
            for a, b in zip(plain.open, randomized.open):
                assert a.diagram.n == b.diagram.n
                ra, rb = CircleResolver(a.diagram), CircleResolver(b.diagram)
                for mask in range(1 << a.diagram.n):
                    assert ra.labels(mask)[0] == rb.labels(mask)[0]
