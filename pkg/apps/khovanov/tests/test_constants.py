import numpy as np
import pytest

from apps.khovanov.errors import DiagramError
from apps.khovanov.knots.braids import from_braid, random_braid, torus_braid
from apps.khovanov.knots.diagram import mirror
from apps.khovanov.knots.partial import partial_diagrams
from apps.khovanov.specseq.constants import claim_constants, ss_constants


def _top_two(q: int):
    return ss_constants(partial_diagrams(from_braid(torus_braid(q)), (0, 1)))


class TestShiftConstants:
    def test_t33_top_two(self, t33):
        c = ss_constants(partial_diagrams(t33, (0, 1)))
        assert c.m == 2
        assert c.a == (0, 0)
        assert c.a_tilde == (4, 4)
        assert c.b == (1, 1)
        assert c.b_tilde == (11, 11)
        assert c.A == (0, 0, 0)
        assert c.B == (0, 1, 2)

    def test_at_is_one_based(self, t33):
        c = ss_constants(partial_diagrams(t33, (0, 1)))
        assert c.at(2) == {"a": 0, "a_tilde": 4, "b": 1, "b_tilde": 11, "A": 0, "B": 2}

    def test_positive_crossing(self, trefoil):
        """A positive crossing contributes ã = 0, b̃ = −1 and a shift on the closed side."""
        c = ss_constants(partial_diagrams(mirror(trefoil), (0,)))
        assert c.a_tilde == (0,)
        assert c.b_tilde == (-1,)
        assert c.a == (-3,)
        assert c.b == (-8,)

    def test_identities_recorded(self, t33):
        c = ss_constants(partial_diagrams(t33, (0, 1)))
        assert len(c.checks) == 8
        assert all(chk["status"] == "ok" for chk in c.checks)

    def test_empty_selection(self, trefoil):
        c = ss_constants(partial_diagrams(trefoil, ()))
        assert c.m == 0
        assert c.A == (0,)
        assert c.B == (0,)

    def test_random_selections_satisfy_identities(self):
        """ss_constants raises on any failed shift identity."""
        rng = np.random.default_rng(3)
        for _ in range(20):
            d = from_braid(random_braid(rng, 3, int(rng.integers(3, 8))))
            chosen = rng.choice(d.n, size=min(3, d.n), replace=False)
            c = ss_constants(partial_diagrams(d, [int(x) for x in chosen], rng))
            for k in range(1, c.m + 1):
                assert c.B[k] == 3 * c.A[k] + k
                if c.a_tilde[k - 1] == 0 and c.b_tilde[k - 1] == -1:
                    continue
                assert c.a[k - 1] == 0


class TestClaimConstants:
    @pytest.mark.parametrize("q", [2, 3, 4, 5, 6, 7, 10, 13])
    def test_closed_form_matches_diagrams(self, q):
        claim = claim_constants(q)
        c = _top_two(q)
        for k, value in claim.a_tilde.items():
            assert c.a_tilde[k - 1] == value
        for k, value in claim.b_tilde.items():
            assert c.b_tilde[k - 1] == value

    def test_residue_classes(self):
        assert claim_constants(9).claim == 1
        assert claim_constants(10).claim == 2
        assert claim_constants(11).claim == 3

    @pytest.mark.parametrize("q", [3, 4, 6, 7, 10])
    def test_open_counts(self, q):
        claim = claim_constants(q)
        parts = partial_diagrams(from_braid(torus_braid(q)), (0, 1))
        assert (parts.open[1].n_plus, parts.open[1].n_minus) == claim.open_counts_1
        if claim.open_counts_2 is not None:
            assert (parts.open[2].n_plus, parts.open[2].n_minus) == claim.open_counts_2

    def test_second_step_of_claim_two(self):
        assert claim_constants(4).a_tilde == {1: 5, 2: 5}
        assert claim_constants(4).b_tilde == {1: 14, 2: 14}
        assert claim_constants(7).a_tilde == {1: 9, 2: 9}
        assert claim_constants(7).b_tilde == {1: 26, 2: 26}
        assert claim_constants(10).open_counts_2 == (12, 6)
        c = _top_two(10)
        assert (c.a_tilde[1], c.b_tilde[1]) == (13, 38)

    def test_t36_values(self):
        claim = claim_constants(6)
        assert claim.N == 2
        assert claim.a_tilde == {1: 8, 2: 8}
        assert claim.b_tilde == {1: 23, 2: 23}
        assert claim.open_counts_1 == (7, 4)

    def test_small_q_rejected(self):
        with pytest.raises(DiagramError):
            claim_constants(1)
