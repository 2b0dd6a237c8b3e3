import dataclasses

import pytest

from apps.khovanov.errors import CubeLimitError
from apps.khovanov.homology.complex import build_complex, chain_dimensions
from apps.khovanov.homology.frobenius import KHOVANOV, LEE, LEE_DIAGONAL


class TestChainComplex:
    def test_unknot(self, unknot):
        cx = build_complex(unknot)
        assert cx.homological_degrees() == [0]
        assert cx.dimensions() == {(0, -1): 1, (0, 1): 1}

    def test_trefoil_total_dimension(self, trefoil):
        """Sum of 2^k over the sixteen smoothings of the 4-crossing trefoil."""
        cx = build_complex(trefoil)
        assert cx.total_dimension() == 66
        assert cx.homological_degrees() == [-4, -3, -2, -1, 0]
        assert len(cx.basis(-4)) == 2
        assert len(cx.basis(0)) == 8

    def test_normalization_shift(self, trefoil):
        cx = build_complex(trefoil)
        assert (cx.n_plus, cx.n_minus) == (0, 4)
        assert cx.q_shift == -8
        assert sorted(set(cx.jdegs(-4))) == [-9, -7]

    @pytest.mark.parametrize("algebra", [KHOVANOV, LEE, LEE_DIAGONAL], ids=lambda a: a.name)
    def test_d_squared_zero(self, algebra, trefoil, hopf, t33):
        for d in (trefoil, hopf, t33):
            build_complex(d, algebra).check_d_squared()

    def test_differential_preserves_quantum_degree(self, t33):
        """Splitting by q raises if any entry crosses quantum degrees."""
        cx = build_complex(t33)
        for i in cx.homological_degrees()[:-1]:
            blocks = cx.split_blocks(i, lambda r, g, q: q)
            assert sum(len(src) for src, _, _ in blocks.values()) == len(cx.basis(i))

    def test_frozen(self, trefoil):
        cx = build_complex(trefoil)
        with pytest.raises(dataclasses.FrozenInstanceError):
            cx.n_plus = 1

    def test_quantum_slices_cover_the_complex(self, trefoil):
        cx = build_complex(trefoil)
        slices = cx.quantum_slices()
        assert [q for q, _ in slices] == sorted({q for q, _ in slices})
        assert sum(len(sl) for _, sl in slices) == cx.total_dimension()
        assert {q + cx.q_shift for q, _ in slices} == {j for (_, j) in cx.dimensions()}

    def test_differential_shape(self, trefoil):
        cx = build_complex(trefoil)
        d = cx.differential(-4)
        assert d.shape == (len(cx.basis(-3)), len(cx.basis(-4)))
        assert cx.differential(0).shape == (0, 8)

    def test_chain_dimensions_match(self, trefoil, hopf):
        for d in (trefoil, hopf):
            assert chain_dimensions(d) == build_complex(d).dimensions()

    def test_unnormalized_dimensions(self, trefoil):
        dims = chain_dimensions(trefoil, normalized=False)
        assert dims[(0, 1)] == 1
        assert dims[(0, -1)] == 1
        assert dims[(4, 7)] == 1

    def test_cube_limit(self, trefoil):
        with pytest.raises(CubeLimitError) as exc:
            build_complex(trefoil, cube_limit=3)
        assert exc.value.crossings == 4
        assert exc.value.limit == 3

    def test_cube_limit_from_environment(self, trefoil, monkeypatch):
        monkeypatch.setenv("KHOVANOV_CUBE_LIMIT", "2")
        with pytest.raises(CubeLimitError):
            chain_dimensions(trefoil)
