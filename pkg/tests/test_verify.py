import pytest

from hemilab.specs import SpecError, normalize_job
from hemilab.verify import (ADVISORY, FAIL, PASS, SKIPPED, aggregate, dumps_report, entries,
                            expected_top_betti, from_witnesses, run_job, verify_theorem_a,
                            verify_theorem_b)

FANO = {"family": "A", "n": 2, "q": 2}


def names(report):
    return {e["name"]: e for e in entries(report)}


def test_aggregate():
    assert aggregate([{"status": PASS}, {"status": FAIL}]) == FAIL
    assert aggregate([{"status": SKIPPED}, {"status": ADVISORY}]) == ADVISORY
    assert aggregate([{"status": SKIPPED}]) == SKIPPED


def test_expected_top_betti(fano, pg32, hexagon, s0_fano):
    assert expected_top_betti(fano) == 8
    assert expected_top_betti(pg32) == 64
    assert expected_top_betti(hexagon) == 1
    assert expected_top_betti(s0_fano) == 8


def test_theorem_b_on_fano_vertex():
    r = verify_theorem_b(normalize_job({"building": FANO, "poles": ["vertex:0"]}))
    e = names(r)["theorem-b/open-hemisphere"]
    assert e["status"] == PASS and e["evidence"]["top_betti"] == 3
    assert r["status"] == PASS


def test_theorem_a_with_supports():
    job = normalize_job({"building": FANO, "poles": ["vertex:0"],
                         "supports": [{"cap_complement": {"t": "1/2"}},
                                      {"cap_complement": {"t": "-1/4"}}]})
    r = verify_theorem_a(job)
    es = names(r)
    assert es["theorem-a/closed-hemisphere"]["status"] == PASS
    assert es["theorem-a/cap-complement:1/2:open"]["status"] == PASS
    # negative thresholds are outside the theorem, so at best advisory
    assert es["theorem-a/cap-complement:-1/4:open"]["status"] in (ADVISORY, FAIL)


def test_thin_gating():
    job = normalize_job({"building": {"thin": {"family": "A", "n": 2}}, "poles": ["vertex:0"],
                         "checks": ["theorem-a", "theorem-b"],
                         "supports": [{"root_complement": {"root": [1, 2]}}]})
    es = names(run_job(job))
    assert es["theorem-b"]["status"] == SKIPPED
    root = es["theorem-a/root-complement:1,2"]
    assert root["status"] == PASS
    assert root["evidence"]["noncontractible"].startswith("skipped")


def test_join_building_gating():
    job = normalize_job({"building": {"join": [{"thin": {"n": 1}}, FANO]}, "poles": ["vertex:0"],
                         "checks": ["theorem-b", "lemmas-supports"]})
    es = names(run_job(job))
    tb = es["theorem-b"]
    assert tb["status"] == SKIPPED
    # the open hemisphere complex is a single point of the thin factor
    assert tb["evidence"]["f_vector"] == [1]
    assert es["join-law"]["status"] == PASS
    assert es["reducibility-criterion"]["status"] == PASS


def test_failures_carry_witnesses():
    e = from_witnesses("x", [{"simplex": [1, 2]}], 5)
    assert e["status"] == FAIL and e["witnesses"] and e["witness_count"] == 1
    assert from_witnesses("x", [], 5)["status"] == PASS


def test_bad_supports_rejected():
    for sup in ({"cap_complement": {"t": "-1"}}, {"cap_complement": {}},
                {"root_complement": {"root": [1, 1]}}, {"ball": {}}):
        with pytest.raises(SpecError):
            normalize_job({"building": FANO, "supports": [sup]})


def test_report_is_canonical_json():
    job = normalize_job({"building": FANO, "poles": ["vertex:0"], "checks": ["solomon-tits"]})
    text = dumps_report(run_job(job))
    assert text.endswith("\n") and "timing" not in text
    assert text == dumps_report(run_job(job))


def test_metric_suite_on_pg32():
    job = normalize_job({"building": {"family": "A", "n": 3, "q": 2}, "poles": ["vertex:0"],
                         "checks": ["lemmas-metric"], "seed": 3})
    es = names(run_job(job))
    assert es["retraction-distance"]["status"] == PASS
    assert es["retraction-distance"]["instances"] == 10000
    assert es["edge-length"]["status"] == PASS
    assert es["law-of-cosines"]["instances"] == 10000
    assert es["retraction-wellposed"]["status"] == PASS
