from collections import Counter

import numpy as np
import pytest

from apps.khovanov.homology.khovanov import khovanov_homology
from apps.khovanov.homology.lee import LeeTable, expected_lee_degrees, lee_homology, lee_within_kh
from apps.khovanov.knots.braids import from_braid, random_braid, torus_braid
from apps.khovanov.knots.diagram import components_and_linking, mirror


class TestLeeHomology:
    def test_unknot(self, unknot):
        assert lee_homology(unknot) == {0: 2}

    def test_unlink(self, unlink2):
        assert lee_homology(unlink2) == {0: 4}
        assert expected_lee_degrees(unlink2) == Counter({0: 4})

    def test_trefoil(self, trefoil):
        assert lee_homology(trefoil) == {0: 2}

    def test_hopf(self, hopf):
        """Linking number −1 puts two generators in degree −2."""
        assert expected_lee_degrees(hopf) == Counter({0: 2, -2: 2})
        assert lee_homology(hopf) == {0: 2, -2: 2}

    def test_t33(self, t33):
        assert expected_lee_degrees(t33) == Counter({0: 2, -4: 6})
        assert lee_homology(t33) == {0: 2, -4: 6}

    def test_t33_mirror(self, t33):
        assert lee_homology(mirror(t33)) == {0: 2, 4: 6}

    @pytest.mark.parametrize("d_name", ["trefoil", "hopf", "t33"])
    def test_split_matches_direct(self, d_name, request):
        d = request.getfixturevalue(d_name)
        assert lee_homology(d, method="split") == lee_homology(d, method="direct")

    def test_unknown_method(self, trefoil):
        with pytest.raises(ValueError):
            lee_homology(trefoil, method="dense")

    def test_random_closures(self):
        rng = np.random.default_rng(17)
        for _ in range(10):
            d = from_braid(random_braid(rng, int(rng.integers(2, 5)), int(rng.integers(2, 8))))
            lee = lee_homology(d)
            assert lee == dict(expected_lee_degrees(d))
            assert lee.total_dimension() == 2 ** len(components_and_linking(d)[0])
            assert lee_within_kh(lee, khovanov_homology(d))

    @pytest.mark.slow
    def test_t36(self):
        assert lee_homology(from_braid(torus_braid(6))) == {0: 2, -8: 6}


class TestLeeWithinKh:
    def test_holds_for_t33(self, t33):
        assert lee_within_kh(lee_homology(t33), khovanov_homology(t33))

    def test_detects_excess(self, trefoil):
        assert not lee_within_kh(LeeTable({-1: 1}), khovanov_homology(trefoil))
