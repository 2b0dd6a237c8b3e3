import pytest

from apps.khovanov.errors import DiagramError
from apps.khovanov.knots.smoothing import CircleResolver, Smoothing, resolve


def _trefoil_circles(mask: int) -> int:
    zeros = {c for c in range(4) if not (mask >> c) & 1}
    if not zeros or len(zeros) == 2 and zeros in ({0, 2}, {1, 3}):
        return 3
    if len(zeros) in (1, 3):
        return 2
    return 1


class TestSmoothing:
    def test_bits_validated(self):
        with pytest.raises(DiagramError):
            Smoothing((0, 2))

    def test_mask_round_trip(self):
        s = Smoothing((1, 0, 1))
        assert s.r == 2
        assert Smoothing.from_mask(3, s.mask) == s


class TestResolve:
    def test_trefoil_all_one(self, trefoil):
        """Oriented resolution of the negative trefoil gives the three Seifert circles."""
        assert resolve(trefoil, Smoothing((1, 1, 1, 1))).circle_count == 3

    def test_trefoil_all_zero(self, trefoil):
        assert resolve(trefoil, Smoothing((0, 0, 0, 0))).circle_count == 1

    def test_trefoil_every_state(self, trefoil):
        resolver = CircleResolver(trefoil)
        for mask in range(16):
            assert resolver.labels(mask)[0] == _trefoil_circles(mask), mask

    def test_unknot(self, unknot):
        p = resolve(unknot, Smoothing(()))
        assert p.circle_count == 1
        assert p.circles == ((1,),)

    def test_loops_are_circles(self, unlink2):
        assert resolve(unlink2, Smoothing(())).circle_count == 2

    def test_bit_count_mismatch(self, trefoil):
        with pytest.raises(DiagramError, match="bits"):
            resolve(trefoil, Smoothing((1, 1)))

    def test_partition_covers_edges(self, t33):
        p = resolve(t33, Smoothing.from_mask(6, 0b101101))
        edges = sorted(e for c in p.circles for e in c)
        assert edges == sorted(t33.edges)
