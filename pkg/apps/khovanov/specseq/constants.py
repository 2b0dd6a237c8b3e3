"""
Shift constants of the partial-resolution filtration.

For step k with crossing k positive in D_{k−1}:
    a_k = n⁻_{k−1} − n⁻_k − 1,   ã_k = 0
otherwise:
    a_k = 0,                     ã_k = n⁻_{k−1} − ñ⁻_k
and always b_k = 3a_k + 1, b̃_k = 3ã_k − 1, A_k = Σ a, B_k = Σ b.
"""
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from apps.khovanov.errors import ConsistencyError, DiagramError
from apps.khovanov.knots.diagram import crossing_signs
from apps.khovanov.knots.partial import PartialDiagrams


@dataclass(frozen=True)
class SSConstants:
    a: Tuple[int, ...]  # a[k-1] = a_k
    a_tilde: Tuple[int, ...]
    b: Tuple[int, ...]
    b_tilde: Tuple[int, ...]
    A: Tuple[int, ...]  # A[k] = A_k, A[0] = 0
    B: Tuple[int, ...]
    checks: Tuple[Dict, ...] = ()

    @property
    def m(self) -> int:
        return len(self.a)

    def at(self, k: int) -> Dict[str, int]:
        """Constants of step k (1-based)."""
        return {
            "a": self.a[k - 1],
            "a_tilde": self.a_tilde[k - 1],
            "b": self.b[k - 1],
            "b_tilde": self.b_tilde[k - 1],
            "A": self.A[k],
            "B": self.B[k],
        }


def ss_constants(parts: PartialDiagrams) -> SSConstants:
    a, at, b, bt = [], [], [], []
    checks: List[Dict] = []
    for k in range(1, parts.m + 1):
        prev, closed, opened = parts.closed[k - 1], parts.closed[k], parts.open[k]
        p_prev, m_prev = crossing_signs(prev.diagram)
        p_k, m_k = crossing_signs(closed.diagram)
        pt_k, mt_k = crossing_signs(opened.diagram)
        n_prev = p_prev + m_prev
        if p_k + m_k != n_prev - 1 or pt_k + mt_k != n_prev - 1:
            raise ConsistencyError(f"step {k}: resolved diagrams must have {n_prev - 1} crossings")

        if closed.resolved_sign > 0:
            a_k, at_k = m_prev - m_k - 1, 0
        else:
            a_k, at_k = 0, m_prev - mt_k
        b_k, bt_k = 3 * a_k + 1, 3 * at_k - 1
        a.append(a_k)
        at.append(at_k)
        b.append(b_k)
        bt.append(bt_k)

        identities = {
            "closed_homological": (-m_prev + 1, -m_k - a_k),
            "closed_quantum": (p_prev - 2 * m_prev + 1, p_k - 2 * m_k - b_k),
            "open_homological": (-m_prev, -mt_k - at_k),
            "open_quantum": (p_prev - 2 * m_prev, pt_k - 2 * mt_k - bt_k),
        }
        for name, (lhs, rhs) in identities.items():
            checks.append({"k": k, "name": name, "lhs": lhs, "rhs": rhs, "status": "ok" if lhs == rhs else "violation"})
            if lhs != rhs:
                raise ConsistencyError(f"step {k}: shift identity {name} fails ({lhs} ≠ {rhs})")

    A, B = [0], [0]
    for a_k, b_k in zip(a, b):
        A.append(A[-1] + a_k)
        B.append(B[-1] + b_k)
    for k in range(parts.m + 1):
        if B[k] != 3 * A[k] + k:
            raise ConsistencyError(f"B_{k} = {B[k]} ≠ 3A_{k} + {k}")
    return SSConstants(tuple(a), tuple(at), tuple(b), tuple(bt), tuple(A), tuple(B), tuple(checks))


@dataclass(frozen=True)
class ClaimConstants:
    """Constants of the top-two selection on T(3, q) in closed form."""

    claim: int
    N: int
    a_tilde: Dict[int, int]
    b_tilde: Dict[int, int]
    open_counts_1: Optional[Tuple[int, int]] = None
    open_counts_2: Optional[Tuple[int, int]] = None


def claim_constants(q: int) -> ClaimConstants:
    """
    Closed-form ã_k, b̃_k (and ñ_k^± when known) for the two top crossings.

    Only entries that do not depend on the orientation chosen for the
    re-oriented diagrams are listed.
    """
    if q < 2:
        raise DiagramError(f"torus parameter must be at least 2, got {q}")
    if q % 3 == 0:
        N = q // 3
        return ClaimConstants(1, N, {1: 4 * N, 2: 4 * N}, {1: 12 * N - 1, 2: 12 * N - 1}, (4 * N - 1, 2 * N))
    if q % 3 == 1:
        N = (q - 1) // 3
        # the second open diagram pairs strand 1 with a turnback: 2N crossings of each sign there
        return ClaimConstants(
            2, N, {1: 4 * N + 1, 2: 4 * N + 1}, {1: 12 * N + 2, 2: 12 * N + 2}, (4 * N, 2 * N + 1), (4 * N, 2 * N)
        )
    N = (q - 2) // 3
    return ClaimConstants(3, N, {1: 4 * N + 3, 2: 4 * N + 2}, {1: 12 * N + 8, 2: 12 * N + 5})
