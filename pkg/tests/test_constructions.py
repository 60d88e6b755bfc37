import random

import pytest

from prymlab.constructions import (
    CurveNotFixed,
    FeasibilityError,
    characteristic_refinement,
    cyclic_nonseparating_cover,
    cyclic_separating_cover,
    is_characteristic_for,
    mapping_torus_h1_rank,
    separating_word,
    verify_corollary_4_2,
    verify_lemma_2_2,
    verify_reducible_bound,
)
from prymlab.covers import (
    CapExceeded,
    build_quotient,
    cyclic_quotient,
    kernel_contained,
    trivial_quotient,
)
from prymlab.homology import ContainmentError, homology_chart, lift_classes
from prymlab.linalg import span_dimension
from prymlab.words import AutomorphismPair, format_word, twist_about, twist_generators, twist_word


def random_twist_word(rng, g, max_len=4):
    names = [f"{f}{i}" for i in range(1, g + 1) for f in "ab"]
    return [rng.choice(["", "-"]) + rng.choice(names) for _ in range(rng.randint(1, max_len))]


class TestBuilders:
    @pytest.mark.parametrize("g, N, rank", [(2, 3, 8), (2, 1, 4), (3, 4, 18)])
    def test_nonsep_examples(self, g, N, rank):
        q, alpha = cyclic_nonseparating_cover(g, N)
        chart = homology_chart(q)
        assert chart.rank == rank
        assert len(lift_classes(chart, alpha)) == N

    @pytest.mark.parametrize("g", [2, 3])
    @pytest.mark.parametrize("N", range(1, 7))
    def test_nonsep_span(self, g, N):
        q, alpha = cyclic_nonseparating_cover(g, N)
        lifts = lift_classes(homology_chart(q), alpha)
        assert len(lifts) == N and span_dimension(lifts) == N

    @pytest.mark.parametrize("g, h", [(2, 1), (3, 1), (3, 2)])
    @pytest.mark.parametrize("N", range(1, 7))
    def test_sep_span(self, g, N, h):
        q, delta = cyclic_separating_cover(g, N, h)
        lifts = lift_classes(homology_chart(q), delta)
        assert len(lifts) == N + 1 and span_dimension(lifts) == N

    def test_separating_word(self):
        assert format_word(separating_word(1)) == "a1 b1 A1 B1"
        assert format_word(separating_word(2)) == "a1 b1 A1 B1 a2 b2 A2 B2"

    def test_degenerate_sep(self):
        q, delta = cyclic_separating_cover(2, 0, 1)
        assert q.degree == 1
        assert len(lift_classes(homology_chart(q), delta)) == 1

    @pytest.mark.parametrize("args", [(1, 2), (2, 0)])
    def test_nonsep_rejects(self, args):
        with pytest.raises(ValueError):
            cyclic_nonseparating_cover(*args)

    @pytest.mark.parametrize("args", [(2, 2, 2), (2, -1, 1), (3, 2, 0)])
    def test_sep_rejects(self, args):
        with pytest.raises(ValueError):
            cyclic_separating_cover(*args)


class TestReducibleBound:
    def test_nonsep_z5(self):
        rep = verify_reducible_bound("nonsep", 2, 5, twist_about(2, "a1"))
        assert rep.verdict == "pass"
        assert rep.computed["span_dim"] == 5 and rep.computed["fo_dim"] >= 5 and rep.computed["k"] == 1

    def test_sep(self):
        rep = verify_reducible_bound("sep", 2, 2, twist_about(2, "a1"), h=1)
        assert rep.verdict == "pass" and rep.computed["span_dim"] == 2

    def test_identity_full(self):
        rep = verify_reducible_bound("nonsep", 2, 3, AutomorphismPair.identity(2))
        assert rep.passed and rep.computed["fo_dim"] == 8

    def test_sep_degenerate(self):
        rep = verify_reducible_bound("sep", 2, 0, twist_about(2, "a1"), h=1)
        assert rep.verdict == "undetermined" and rep.params["out_of_range"]

    def test_curve_not_fixed(self):
        with pytest.raises(CurveNotFixed):
            verify_reducible_bound("nonsep", 2, 3, twist_about(2, "b1"))

    def test_cap(self):
        with pytest.raises(CapExceeded):
            verify_reducible_bound("sep", 2, 3, twist_about(2, "a1"), h=1, cap=2)

    def test_fixing_composite(self):
        # twists about curves disjoint from a1 also fix it
        phi = twist_word(3, ["a1", "a2", "b3", "-a3"])
        rep = verify_reducible_bound("nonsep", 3, 3, phi)
        assert rep.passed

    def test_as_dict(self):
        d = verify_reducible_bound("nonsep", 2, 2, twist_about(2, "a1")).as_dict()
        assert d["construction"] == "lemma32" and d["verdict"] == "pass"
        assert set(d["computed"]) >= {"rank", "lifts", "span_dim", "fo_dim", "k"}


class TestMappingTorus:
    @pytest.mark.parametrize(
        "names, expected", [([], 5), (["a1"], 4), (["a1", "a2"], 3), (["a1", "b1", "a1"], 3)]
    )
    def test_ranks(self, names, expected):
        phi = twist_word(2, names) if names else AutomorphismPair.identity(2)
        assert mapping_torus_h1_rank(2, phi) == expected

    @pytest.mark.parametrize("g", [2, 3])
    def test_single_twists(self, g):
        for t in twist_generators(g):
            rep = verify_corollary_4_2(g, t)
            assert rep.passed and rep.computed["h1_rank"] == 2 * g

    def test_random_words(self):
        rng = random.Random(42)
        for _ in range(10):
            rep = verify_corollary_4_2(2, twist_word(2, random_twist_word(rng, 2)))
            assert rep.passed


class TestCharacteristic:
    def test_mod2_homology_cover(self):
        q = build_quotient(2, 2, {"a1": [1, 0]})
        r = characteristic_refinement(q)
        assert r.degree == 16
        assert kernel_contained(r, q)
        assert is_characteristic_for(r, twist_generators(2))

    def test_trivial(self):
        assert characteristic_refinement(trivial_quotient(2)).degree == 1

    def test_z3(self):
        r = characteristic_refinement(cyclic_quotient(2, 3, {"b1": 1}))
        assert r.degree == 81

    def test_guard(self):
        with pytest.raises(FeasibilityError):
            characteristic_refinement(cyclic_quotient(2, 3, {"b1": 1}), guard=80)

    def test_input_not_characteristic(self):
        q = build_quotient(2, 2, {"a1": [1, 0]})
        assert not is_characteristic_for(q, twist_generators(2))


class TestLemma22:
    def test_z4_over_z2(self):
        rep = verify_lemma_2_2(cyclic_quotient(2, 4, {"b1": 1}), cyclic_quotient(2, 2, {"b1": 1}), twist_about(2, "a1"))
        assert rep.passed and rep.computed["iota_rank"] == 6

    def test_identical(self):
        q = cyclic_quotient(2, 3, {"b1": 1})
        rep = verify_lemma_2_2(q, q, twist_about(2, "a1"))
        assert rep.passed and rep.computed["fo_dim_sub"] == rep.computed["fo_dim"]

    def test_z6_over_z3(self):
        rep = verify_lemma_2_2(cyclic_quotient(2, 6, {"b1": 1}), cyclic_quotient(2, 3, {"b1": 1}), AutomorphismPair.identity(2))
        assert rep.passed
        assert (rep.computed["fo_dim_sub"], rep.computed["fo_dim"]) == (14, 8)

    def test_common_power(self):
        # omega moves the a1 cover; both covers need omega^2
        sub = build_quotient(2, 4, {"a1": [1, 2, 3, 0], "b1": [2, 3, 0, 1]})
        sup = build_quotient(2, 2, {"a1": [1, 0]})
        rep = verify_lemma_2_2(sub, sup, twist_word(2, ["a1", "b1", "a1"]))
        assert rep.passed and rep.computed["k"] > 1

    def test_not_contained(self):
        with pytest.raises(ContainmentError):
            verify_lemma_2_2(cyclic_quotient(2, 2, {"b1": 1}), cyclic_quotient(2, 4, {"b1": 1}), AutomorphismPair.identity(2))
