import pytest

import credo


def test_scenarios_listed():
    assert "ellsberg-two-urn" in credo.scenario_names()
    assert len(credo.scenario_names()) == 7


def test_ellsberg_scenario_passes():
    run = credo.run_scenario("ellsberg-two-urn")
    assert run["passed"]
    assert all(o["passed"] for o in run["result"]["outcomes"])


def test_neutral_agent_fails_ellsberg():
    run = credo.run_scenario("ellsberg-two-urn", calibration={"w1": 1.0, "w2": 0.0})
    assert not run["passed"]


def test_external_compare():
    result = credo.compare("known-urn-df", "unknown-urn-df", mode="external", scenario="ellsberg-two-urn")
    assert result["relation"] == "stronger"


def test_bernoulli_family_has_two_members():
    dist = {
        "id": "b",
        "space": "urn",
        "class": "physical",
        "law": {"type": "pmf", "labels": ["red", "black"], "masses": ["1/2", "1/2"]},
    }
    family = credo.event_family(dist, "1/2")
    assert sorted(m["label"] for m in family) == ["black", "red"]


def test_replay_of_recorded_requests():
    run = credo.execute({"op": "compare", "mode": "external", "scenario": "ellsberg-two-urn",
                         "f": "known-urn-df", "g": "unknown-urn-df"})
    session = {"version": credo.session_version, "verdicts": [{"request": run["request"], "result": run["result"]}]}
    report = credo.replay(session)
    assert report["entries"] == 1
    assert report["mismatches"] == 0


def test_errors_are_raised():
    with pytest.raises(credo.CredoError):
        credo.scenario("no-such")
    with pytest.raises(credo.CredoError, match="parse-error"):
        credo.execute({"op": "elicit", "scenario": "governor-election", "budget": "many"})
    with pytest.raises(ValueError):
        credo._credo.execute("{not json")
