import numpy as np
import pytest

from apps.khovanov.errors import DiagramError
from apps.khovanov.knots.braids import BraidWord, from_braid, random_braid, stabilize, torus_braid
from apps.khovanov.knots.diagram import components_and_linking, crossing_signs


class TestBraidWord:
    def test_letter_out_of_range(self):
        with pytest.raises(DiagramError, match="out of range"):
            BraidWord(3, (3,))

    def test_zero_letter(self):
        with pytest.raises(DiagramError):
            BraidWord(3, (1, 0))

    def test_permutation_of_torus_braid(self):
        """(σ1⁻¹σ2⁻¹)^3 returns every strand to its start."""
        assert torus_braid(3).permutation() == (0, 1, 2)
        assert torus_braid(1).permutation() != (0, 1, 2)

    @pytest.mark.parametrize("q", range(1, 8))
    def test_component_count(self, q):
        expected = 3 if q % 3 == 0 else 1
        b = torus_braid(q)
        assert b.component_count() == expected
        assert len(components_and_linking(from_braid(b))[0]) == expected

    def test_torus_rejects_zero(self):
        with pytest.raises(DiagramError):
            torus_braid(0)


class TestClosure:
    def test_empty_braid_is_unlink(self):
        d = from_braid(BraidWord(2, ()))
        assert d.n == 0
        assert d.loops == (1, 2)

    def test_untouched_strand_is_loop(self):
        d = from_braid(BraidWord(3, (-1,)))
        assert d.n == 1
        assert d.loops == (3,)

    def test_torus_signs(self, t33):
        assert t33.n == 6
        assert crossing_signs(t33) == (0, 6)

    def test_positive_letters(self):
        d = from_braid(BraidWord(2, (1, 1, 1)))
        assert crossing_signs(d) == (3, 0)


class TestRandomAndStabilize:
    def setup_method(self):
        self.rng = np.random.default_rng(7)

    def test_random_braid_shape(self):
        for _ in range(20):
            b = random_braid(self.rng, 4, 6)
            assert b.width == 4
            assert len(b.letters) == 6
            assert all(0 < abs(l) < 4 for l in b.letters)
            from_braid(b)

    def test_random_braid_needs_two_strands(self):
        with pytest.raises(DiagramError):
            random_braid(self.rng, 1, 3)

    def test_stabilize_keeps_components(self):
        b = random_braid(self.rng, 3, 5)
        s = stabilize(b)
        assert s.width == 4
        assert s.letters[-1] == -3
        assert s.component_count() == b.component_count()

    def test_stabilize_sign(self):
        with pytest.raises(DiagramError):
            stabilize(torus_braid(2), 0)
