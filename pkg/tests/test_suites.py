import pytest

from reedycheck.fincat import builtin
from reedycheck.scenario import BaseSpec, Env, Scenario
from reedycheck.suites import SUITES, replay, run, run_suite

CHAIN = BaseSpec("chain", 2, 1, 1)
FINSET = BaseSpec("finset", max_size=2)


def _env(base, index="arrow", samples=4, seed=3, suites=()):
    return Env(Scenario(base, builtin(index), suites=suites, samples=samples, seed=seed))


@pytest.mark.parametrize("name", sorted(SUITES))
@pytest.mark.parametrize("index", ["arrow", "span"])
def test_every_suite_passes_on_chain(name, index):
    rec = run_suite(_env(CHAIN, index), name)
    assert rec["passes"] + len(rec["failures"]) == rec["cases"]
    if SUITES[name].negative:
        assert rec["undetected"] == 0 and rec["detected"] == rec["injected"] > 0
    else:
        assert not rec["failures"], rec["failures"][:1]


@pytest.mark.parametrize("name", sorted(n for n, s in SUITES.items() if not s.needs_model))
def test_base_suites_pass_on_finset(name):
    rec = run_suite(_env(FINSET, "mixed"), name)
    if SUITES[name].negative:
        assert rec["undetected"] == 0
    else:
        assert not rec["failures"], rec["failures"][:1]


def test_empty_index_is_vacuous():
    env = _env(CHAIN, "empty")
    for name in ("coreduction", "thm1", "lemma8", "negative_controls"):
        rec = run_suite(env, name)
        assert rec["mode"] == "exhaustive" and not rec["failures"]


def test_eq1_is_exhaustive_on_small_finset_indices():
    rec = run_suite(_env(FINSET, "arrow"), "eq1")
    assert rec["mode"] == "exhaustive" and rec["cases"] > 4


def test_lemma8_covers_all_object_pairs():
    rec = run_suite(_env(CHAIN, "square"), "lemma8")
    assert rec["cases"] == 4 * 4 * 2


def test_run_report_shape_and_determinism():
    sc = Scenario(CHAIN, builtin("arrow"), suites=("eq1", "prop1"), samples=3, seed=11)
    a, b = run(sc), run(sc)
    assert a == b and a["ok"]
    assert set(a["suites"]) == {"eq1", "prop1"}
    assert "seconds" not in a and "seconds" in run(sc, timings=True)


def test_replay_reruns_a_case():
    sc = Scenario(CHAIN, builtin("arrow"), suites=("negative_controls",), samples=3, seed=2)
    rep = run(sc)
    f = rep["suites"]["negative_controls"]["failures"][0]
    assert f["kind"] == "detected"
    assert not replay(sc, "negative_controls", f["case"], f["descriptor"]).ok
