from collections import Counter

import pytest

from apps.khovanov.errors import ConsistencyError
from apps.khovanov.homology.khovanov import KhTable
from apps.khovanov.torus.tables import BASE_TABLES, DELTAS, expected_kh_3q
from apps.khovanov.torus.verify import (
    claim_points,
    delta_checks,
    derive_delta,
    expected_delta,
    lee_pairing_check,
    observed_delta,
    torus_lee_degrees,
    verify_family,
)


class TestLeePairing:
    def test_torus_lee_degrees(self):
        assert torus_lee_degrees(4) == Counter({0: 2})
        assert torus_lee_degrees(6) == Counter({0: 2, -8: 6})

    def test_trefoil_pairs(self):
        assert lee_pairing_check(BASE_TABLES[2], {0: 2})

    def test_t33_pairs(self):
        assert lee_pairing_check(BASE_TABLES[3], torus_lee_degrees(3))

    def test_wrong_quantum_gap(self):
        """A gap of 2 instead of a positive multiple of 4 cannot cancel."""
        table = KhTable({(0, -1): 1, (0, -3): 1, (-2, -5): 1, (-3, -7): 1})
        assert not lee_pairing_check(table, {0: 2})

    def test_odd_leftover(self):
        table = KhTable({(0, -1): 1, (0, -3): 1, (-2, -5): 1})
        assert not lee_pairing_check(table, {0: 2})

    def test_survivor_in_wrong_degree(self):
        assert not lee_pairing_check(BASE_TABLES[2], {-2: 2})

    def test_unknot(self):
        assert lee_pairing_check(KhTable({(0, -1): 1, (0, 1): 1}), {0: 2})

    def test_family_up_to_60(self):
        for q in range(2, 61):
            assert lee_pairing_check(expected_kh_3q(q), torus_lee_degrees(q)), q


class TestVerifyFamily:
    def test_small_family(self):
        report = verify_family(4, structural_bound=60)
        assert report["status"] == "ok"
        by_name = {c["name"]: c for c in report["checks"]}
        for q in (2, 3, 4):
            assert by_name[f"kh_T(3,{q})"]["detail"] == "equal"
            assert by_name[f"mirror_T(3,{q})"]["status"] == "ok"
        assert by_name["structural_T(3,2..60)"]["status"] == "ok"

    def test_structural_only(self):
        report = verify_family(1, structural_bound=200)
        assert report["status"] == "ok"
        assert [c["name"] for c in report["checks"]] == ["structural_T(3,2..200)"]

    def test_strict_raises_on_violation(self, monkeypatch):
        from apps.khovanov.torus import verify

        monkeypatch.setattr(verify, "lee_pairing_check", lambda t, lee: False)
        assert verify.verify_family(1, structural_bound=5)["status"] == "violation"
        with pytest.raises(ConsistencyError):
            verify.verify_family(1, structural_bound=5, strict=True)

    def test_engine_leg_reports_deltas(self):
        report = verify_family(5, structural_bound=20)
        names = [c["name"] for c in report["checks"]]
        assert ["delta_T(3,3)", "delta_T(3,4)", "delta_T(3,5)"] == [n for n in names if n.startswith("delta_")]
        assert "claim_points_T(3,4)" in names
        assert report["status"] == "ok"

    def test_tampered_engine_table_flagged(self, monkeypatch):
        from apps.khovanov.torus import verify

        real = verify.engine_table

        def tampered(q, cube_limit=None, workers=None):
            t = real(q, cube_limit, workers)
            if q != 4:
                return t
            entries = dict(t.items())
            entries[(-4, -15)] = 1
            return KhTable(entries)

        monkeypatch.setattr(verify, "engine_table", tampered)
        report = verify.verify_family(4, structural_bound=10)
        by_name = {c["name"]: c for c in report["checks"]}
        assert report["status"] == "violation"
        assert by_name["claim_points_T(3,4)"]["status"] == "violation"
        assert by_name["delta_T(3,4)"]["status"] == "violation"
        assert by_name["delta_T(3,3)"]["status"] == "ok"

    @pytest.mark.slow
    def test_family_to_seven(self, monkeypatch, engine_torus):
        from apps.khovanov.torus import verify

        monkeypatch.setattr(verify, "engine_table", lambda q, cube_limit=None, workers=None: engine_torus(q))
        report = verify.verify_family(7, structural_bound=200)
        by_name = {c["name"]: c for c in report["checks"]}
        assert report["status"] == "ok"
        assert by_name["affine_delta_claim1"]["status"] == "ok"
        assert by_name["affine_delta_claim2"]["status"] == "ok"
        assert "affine_delta_claim3" not in by_name


class TestDeltas:
    def test_observed_matches_frozen_corrections(self):
        for q in (3, 4, 5):
            assert observed_delta(BASE_TABLES[q - 1], BASE_TABLES[q]) == expected_delta(q)

    def test_claim_two_at_q4(self):
        assert expected_delta(4) == {(-5, -17): 1, (-5, -15): 1, (-4, -15): -2, (-4, -13): -2}
        assert BASE_TABLES[4][(-4, -13)] == 1
        assert BASE_TABLES[4][(-4, -15)] == 0

    def test_claim_three_points(self):
        for q in (2, 5, 8, 11):
            N = q // 3
            t = expected_kh_3q(q)
            assert t[(-4 * N - 3, -12 * N - 9)] == 1
            assert t[(-4 * N - 3, -12 * N - 7)] == 0

    def test_claim_points_hold_on_recursion(self):
        for q in range(2, 40):
            assert claim_points(expected_kh_3q(q), q) == [], q

    def test_claim_points_report_mismatch(self):
        entries = dict(BASE_TABLES[4].items())
        entries[(-4, -13)] = 2
        assert claim_points(KhTable(entries), 4) == ["(-4, -13): 2 ≠ 1"]
        entries = dict(BASE_TABLES[3].items())
        entries[(-4, -9)] = 2
        assert claim_points(KhTable(entries), 3)

    def test_affine_fit_recovers_corrections(self):
        tables = {q: expected_kh_3q(q) for q in range(2, 9)}
        for claim in (1, 2, 3):
            q = claim + 2
            first = observed_delta(tables[q - 1], tables[q])
            second = observed_delta(tables[q + 2], tables[q + 3])
            assert derive_delta(first, second) == tuple(sorted(DELTAS[claim].corrections))

    def test_affine_fit_needs_matching_terms(self):
        assert derive_delta({(0, 0): 1}, {(0, 0): 1, (1, 1): 1}) is None
        assert derive_delta({(0, 0): 1}, {(0, 0): 2}) is None

    def test_delta_checks_on_recursion(self):
        tables = {q: expected_kh_3q(q) for q in range(2, 9)}
        checks = delta_checks(tables)
        assert all(c["status"] == "ok" for c in checks)
        assert [c["name"] for c in checks][-3:] == ["affine_delta_claim1", "affine_delta_claim2", "affine_delta_claim3"]

    def test_delta_checks_flag_wrong_base(self):
        tables = dict(BASE_TABLES)
        tables[4] = KhTable({**dict(BASE_TABLES[4].items()), (-4, -15): 1})
        failed = [c["name"] for c in delta_checks(tables, "_frozen") if c["status"] != "ok"]
        assert failed == ["delta_frozen_T(3,4)", "delta_frozen_T(3,5)"]
