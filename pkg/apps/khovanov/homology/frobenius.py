"""
Rank-two Frobenius algebras on the ordered basis (v0, v1).

For the Khovanov and Lee algebras v0 = 1 and v1 = x; quantum degrees
(+1 and −1) are assigned by the cube builder. LEE_DIAGONAL is the Lee
algebra written in the idempotent basis a = 1 + x, b = 1 − x, where the
merge and split maps are diagonal; it carries no quantum grading.
"""
from dataclasses import dataclass
from itertools import product
from typing import Dict, Mapping, Tuple

from apps.khovanov.errors import ConsistencyError

Vec = Dict[int, int]
Vec2 = Dict[Tuple[int, int], int]
Vec3 = Dict[Tuple[int, int, int], int]


@dataclass(frozen=True, eq=False)
class FrobeniusAlgebra:
    name: str
    mult: Mapping[Tuple[int, int], Mapping[int, int]]
    comult: Mapping[int, Mapping[Tuple[int, int], int]]
    graded: bool
    basis_names: Tuple[str, str] = ("1", "x")

    def __post_init__(self):
        _check_axioms(self)

    def m(self, a: int, b: int) -> Vec:
        return dict(self.mult[(a, b)])

    def delta(self, a: int) -> Vec2:
        return dict(self.comult[a])


def _add(acc: dict, key, value) -> None:
    v = acc.get(key, 0) + value
    if v:
        acc[key] = v
    else:
        acc.pop(key, None)


def _check_axioms(alg: FrobeniusAlgebra) -> None:
    basis = (0, 1)
    failures = []
    for a, b in product(basis, repeat=2):
        if dict(alg.mult[(a, b)]) != dict(alg.mult[(b, a)]):
            failures.append(f"commutativity at ({a},{b})")
    for a, b, c in product(basis, repeat=3):
        left: Vec = {}
        for ab, x in alg.mult[(a, b)].items():
            for k, y in alg.mult[(ab, c)].items():
                _add(left, k, x * y)
        right: Vec = {}
        for bc, x in alg.mult[(b, c)].items():
            for k, y in alg.mult[(a, bc)].items():
                _add(right, k, x * y)
        if left != right:
            failures.append(f"associativity at ({a},{b},{c})")
    for a in basis:
        twisted = {(v, u): c for (u, v), c in alg.comult[a].items()}
        if twisted != {k: v for k, v in alg.comult[a].items() if v}:
            failures.append(f"cocommutativity at {a}")
        left3: Vec3 = {}
        right3: Vec3 = {}
        for (u, v), c in alg.comult[a].items():
            for (s, t), d in alg.comult[u].items():
                _add(left3, (s, t, v), c * d)
            for (s, t), d in alg.comult[v].items():
                _add(right3, (u, s, t), c * d)
        if left3 != right3:
            failures.append(f"coassociativity at {a}")
    # Δ∘m = (m⊗1)(1⊗Δ)
    for a, b in product(basis, repeat=2):
        left2: Vec2 = {}
        for ab, x in alg.mult[(a, b)].items():
            for key, y in alg.comult[ab].items():
                _add(left2, key, x * y)
        right2: Vec2 = {}
        for (u, v), x in alg.comult[b].items():
            for k, y in alg.mult[(a, u)].items():
                _add(right2, (k, v), x * y)
        if left2 != right2:
            failures.append(f"Frobenius relation at ({a},{b})")
    if failures:
        raise ConsistencyError(f"{alg.name} algebra fails: {', '.join(failures)}")


KHOVANOV = FrobeniusAlgebra(
    name="khovanov",
    mult={(0, 0): {0: 1}, (0, 1): {1: 1}, (1, 0): {1: 1}, (1, 1): {}},
    comult={0: {(0, 1): 1, (1, 0): 1}, 1: {(1, 1): 1}},
    graded=True,
)

LEE = FrobeniusAlgebra(
    name="lee",
    mult={(0, 0): {0: 1}, (0, 1): {1: 1}, (1, 0): {1: 1}, (1, 1): {0: 1}},
    comult={0: {(0, 1): 1, (1, 0): 1}, 1: {(1, 1): 1, (0, 0): 1}},
    graded=False,
)

LEE_DIAGONAL = FrobeniusAlgebra(
    name="lee-diagonal",
    mult={(0, 0): {0: 2}, (0, 1): {}, (1, 0): {}, (1, 1): {1: 2}},
    comult={0: {(0, 0): 1}, 1: {(1, 1): -1}},
    graded=False,
    basis_names=("a", "b"),
)
