import json
from fractions import Fraction
from pathlib import Path

import pytest

import fairdiv

SCENARIOS = Path(__file__).resolve().parents[2] / "scenarios"


def test_collective_utility():
    assert fairdiv.collective_utility("nash", [4, 4]) == 16
    assert fairdiv.collective_utility("util", ["1/2", Fraction(1, 3)]) == Fraction(5, 6)
    with pytest.raises(TypeError):
        fairdiv.collective_utility("util", [0.5])
    with pytest.raises(fairdiv.DomainError):
        fairdiv.collective_utility("rank:3", [1, 2])


def test_leximin_and_axioms():
    assert fairdiv.leximin_compare([1, 7], [2, 3]) == "less"
    egal = fairdiv.survey_axiom("egal", "separability", samples=2000, seed=1)
    assert egal["violations"] > 0
    util = fairdiv.survey_axiom("util", "zi", samples=500)
    assert util["violations"] == 0 and util["checked"] == 500


def test_cut_and_choose_uniform():
    result = fairdiv.cut_cake("cut-and-choose", [(["0", "1"], ["1"]), ([0, 1], [1])])
    assert result["pieces"] == [[(Fraction(1, 2), 1)], [(0, Fraction(1, 2))]]
    assert result["envy_free"] and result["proportional"] and result["cut_count"] == 1


def test_stromquist_is_envy_free():
    skewed = ([0, "1/2", "3/4", 1], ["1/2", 2, 1])
    uniform = ([0, 1], [1])
    result = fairdiv.cut_cake("stromquist", [uniform, skewed, uniform])
    assert result["envy_free"] and result["contiguous"] and result["cut_count"] == 2


def test_allocation_example():
    scenario = json.loads((SCENARIOS / "alloc_example.json").read_text())
    fast = fairdiv.solve(scenario)
    slow = fairdiv.brute_force(scenario)
    assert fast["objective"] == slow["objective"] == 23
    assert fast["certificate"] == "optimal"
    assert fast["utilities"] == [30, 23, 25]


def test_negotiation_reaches_optimum():
    text = (SCENARIOS / "negotiation.json").read_text()
    result = fairdiv.negotiate(text, generator="any", seed=7)
    assert result["welfare"] == 100
    assert sum(result["balance"]) == 0
    welfare = [step["welfare_after"] for step in result["trace"]]
    assert welfare == sorted(set(welfare))


def test_guard_and_cli():
    goods = [f"g{k}" for k in range(13)]
    scenario = {"goods": goods, "agents": [{"id": i, "valuation": {"per_item": 1}} for i in (1, 2, 3)]}
    with pytest.raises(fairdiv.GuardExceeded):
        fairdiv.negotiate(scenario, generator="any")
    code, out, _ = fairdiv.run_cli("welfare", "eval", "--cuf", "nash", "--vector", "4,4")
    assert code == 0 and out == "16\n"
    code, _, err = fairdiv.run_cli("cake", "run", "--procedure", "nope", "--scenario", str(SCENARIOS / "cake_uniform.json"))
    assert code == 1 and "procedure" in err
