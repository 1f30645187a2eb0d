import json

import pytest

from knitweave.campaigns import (
    campaign_lemma_si,
    campaign_pipeline_4linked,
    load_report,
    report_to_json,
    revalidate_report,
)
from knitweave.errors import InputError


def test_lemma_si_zero_samples():
    rep = campaign_lemma_si(0, seed=1, no_timestamps=True)
    assert rep["samples_run"] == 0
    assert rep["violations"] == []
    revalidate_report(rep)


def test_lemma_si_runs_clean_and_deterministic():
    rep = campaign_lemma_si(60, seed=9, no_timestamps=True)
    assert rep["samples_run"] == 60
    assert rep["violations"] == []
    rep2 = campaign_lemma_si(60, seed=9, no_timestamps=True)
    assert report_to_json(rep) == report_to_json(rep2)
    assert report_to_json(rep) != report_to_json(campaign_lemma_si(60, seed=10, no_timestamps=True))
    revalidate_report(rep)
    # both lemma record kinds appear and both side forms get exercised
    kinds = {s["lemma"] for inst in rep["instances"] for s in inst["samples"]}
    forms = {s["form"] for inst in rep["instances"] for s in inst["samples"]}
    assert kinds == {"si", "si2"}
    assert forms == {"AB", "AjBj"}


def test_lemma_si_pair_conclusions_trigger():
    rep = campaign_lemma_si(120, seed=4, no_timestamps=True)
    hot = [
        s
        for inst in rep["instances"]
        for s in inst["samples"]
        if s["lemma"] == "si2" and any(a + b >= 3 for a, b in s["pair_scores"].values())
    ]
    assert hot, "no paired sample ever met the score threshold"
    assert rep["violations"] == []


def test_revalidation_catches_tampering():
    rep = campaign_lemma_si(10, seed=2, no_timestamps=True)
    blob = json.loads(report_to_json(rep))
    for inst in blob["instances"]:
        for s in inst["samples"]:
            if s["lemma"] == "si" and s["scores"]:
                key = next(iter(s["scores"]))
                s["scores"][key] += 5
                with pytest.raises(InputError):
                    load_report(json.dumps(blob))
                return
    pytest.skip("no scored sample found")


def test_pipeline_completes_on_both_hosts():
    rep = campaign_pipeline_4linked(1, seed=11, no_timestamps=True)
    assert rep["violations"] == []
    assert len(rep["instances"]) == 2
    for inst in rep["instances"]:
        assert inst["ok"]
        stage_names = [s["stage"] for s in inst["stages"]]
        assert stage_names[0] == "massed"
        assert "linkage" in stage_names
    revalidate_report(rep)


def test_thread_cap_does_not_change_reports(monkeypatch):
    base = campaign_pipeline_4linked(1, seed=6, no_timestamps=True)
    monkeypatch.setenv("KNITWEAVE_THREADS", "3")
    threaded = campaign_pipeline_4linked(1, seed=6, no_timestamps=True)
    assert report_to_json(base) == report_to_json(threaded)


def test_pipeline_tampered_linkage_detected():
    rep = campaign_pipeline_4linked(1, seed=11, no_timestamps=True)
    blob = json.loads(report_to_json(rep))
    for st in blob["instances"][0]["stages"]:
        if st["stage"] == "linkage":
            st["paths"][0] = st["paths"][0][:1] + st["paths"][0]
    with pytest.raises(InputError):
        load_report(json.dumps(blob))
