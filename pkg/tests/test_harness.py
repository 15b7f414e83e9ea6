"""Campaign configuration, generators, JSONL stream, replay, and demo."""

import json

import numpy as np
import pytest

from bohrcheck import serialize
from bohrcheck.harness import (
    CampaignConfig,
    GenerationError,
    HarnessError,
    TrialRecord,
    demo,
    demo_table,
    generate_instance,
    replay,
    run_campaign,
    run_instance,
)
from bohrcheck.linalg import make_rng, stream_key
from bohrcheck.serialize import SerializationError

ALL_THEOREMS = (
    "bohr",
    "vasic",
    "jensen-vec",
    "jensen-map",
    "thm1",
    "cornew",
    "cor45",
    "zh",
    "prop-r2",
    "sumsq",
    "inc-convex",
)


# --- configuration -----------------------------------------------------------------


def test_config_rejects_bad_values():
    with pytest.raises(SerializationError):
        CampaignConfig("nonsense", 1, 0)
    with pytest.raises(ValueError):
        CampaignConfig("bohr", -1, 0)
    with pytest.raises(ValueError):
        CampaignConfig("bohr", 1, 0, n_range=(5, 2))
    with pytest.raises(ValueError):
        CampaignConfig("bohr", 1, 0, n_range=(0, 3))
    with pytest.raises(ValueError):
        CampaignConfig("bohr", 1, 0, r_range=(1.0, 2.0))
    with pytest.raises(ValueError):
        CampaignConfig("bohr", 1, 0, max_attempts=0)


def test_config_accepts_theorem_alias():
    cfg = CampaignConfig("cor4.5", 1, 0)
    assert cfg.theorem == "cor4.5"  # stored as given, canonicalized on use


# --- generators --------------------------------------------------------------------


@pytest.mark.parametrize("theorem", ALL_THEOREMS)
def test_generated_instances_satisfy_hypotheses(theorem):
    cfg = CampaignConfig(theorem, 0, seed=314, n_range=(2, 6), m_range=(2, 6))
    for trial in range(20):
        payload = generate_instance(cfg, trial, make_rng(cfg.seed, trial))
        assert payload["theorem"] == serialize.canonical_theorem(theorem)
        report = run_instance(payload)
        assert report.holds, (theorem, trial, report.failed_hypotheses())


@pytest.mark.parametrize("theorem", ALL_THEOREMS)
def test_generated_payloads_are_deterministic(theorem):
    cfg = CampaignConfig(theorem, 0, seed=2718)
    for trial in (0, 3, 7):
        first = generate_instance(cfg, trial, make_rng(cfg.seed, trial))
        second = generate_instance(cfg, trial, make_rng(cfg.seed, trial))
        assert serialize.digest(first) == serialize.digest(second)


def test_generated_payloads_round_trip_canonical_json():
    for theorem in ALL_THEOREMS:
        cfg = CampaignConfig(theorem, 0, seed=1)
        payload = generate_instance(cfg, 0, make_rng(1, 0))
        text = serialize.canonical_json(payload)
        assert serialize.digest(json.loads(text)) == serialize.digest(payload)


def test_jensen_map_variant_forcing():
    for variant in ("subunital", "unital"):
        cfg = CampaignConfig("jensen-map", 0, seed=9, variant=variant)
        for trial in range(6):
            payload = generate_instance(cfg, trial, make_rng(9, trial))
            assert payload["variant"] == variant
    # Default alternates, so both profiles appear across trials.
    cfg = CampaignConfig("jensen-map", 0, seed=9)
    seen = {
        generate_instance(cfg, t, make_rng(9, t))["variant"] for t in range(6)
    }
    assert seen == {"subunital", "unital"}


def test_theorem_specific_r_clipping():
    zh_cfg = CampaignConfig("zh", 0, seed=3, r_range=(1.1, 4.0))
    prop_cfg = CampaignConfig("prop-r2", 0, seed=3, r_range=(1.1, 4.0))
    for trial in range(25):
        assert generate_instance(zh_cfg, trial, make_rng(3, trial))["r"] <= 2.0
        assert generate_instance(prop_cfg, trial, make_rng(3, trial))["r"] >= 2.0


# --- run_instance dispatch ----------------------------------------------------------


def test_run_instance_requires_theorem_field():
    with pytest.raises(SerializationError):
        run_instance({"z": 1.0})
    with pytest.raises(SerializationError):
        run_instance([1, 2, 3])


def test_run_instance_reports_missing_field():
    with pytest.raises(SerializationError, match="missing field"):
        run_instance({"theorem": "bohr", "z": {"re": 1.0, "im": 0.0}})


def test_trial_record_json_line_shapes():
    rep = run_instance({"theorem": "bohr", "z": {"re": 1.0, "im": 0.0},
                        "w": {"re": 1.0, "im": 0.0}, "p": 2.0})
    ok = TrialRecord(4, "00ab", rep.input_digest, {"theorem": "bohr"}, rep)
    obj = json.loads(ok.to_json_line())
    assert obj["trial"] == 4 and obj["digest"] == rep.input_digest
    assert "elapsed" not in obj["report"]

    bad = TrialRecord(5, "00ac", None, None, None, "rejection cap hit")
    obj = json.loads(bad.to_json_line())
    assert obj["generation_failed"] is True and obj["error"] == "rejection cap hit"


# --- campaigns -----------------------------------------------------------------------


def test_campaign_zero_trials(tmp_path):
    out = tmp_path / "empty.jsonl"
    res = run_campaign(CampaignConfig("bohr", 0, 1), out)
    assert res.summary == {
        "theorem": "bohr",
        "total": 0,
        "held": 0,
        "not_applicable": 0,
        "violations": 0,
        "generation_failures": 0,
        "min_slack_overall": None,
    }
    lines = out.read_text().splitlines()
    assert len(lines) == 1 and "summary" in json.loads(lines[0])


def test_campaign_counts_and_stream_layout(tmp_path):
    out = tmp_path / "zh.jsonl"
    cfg = CampaignConfig("zh", 40, seed=17, n_range=(2, 5))
    res = run_campaign(cfg, out)
    s = res.summary
    assert s["total"] == 40
    assert s["held"] + s["not_applicable"] + s["violations"] + s["generation_failures"] == 40
    assert s["held"] == 40  # generators are constraint-aware
    assert s["min_slack_overall"] >= 0.0

    lines = out.read_text().splitlines()
    assert len(lines) == 41
    for trial, line in enumerate(lines[:-1]):
        obj = json.loads(line)
        assert obj["trial"] == trial
        assert obj["stream"] == f"{stream_key(17, trial):016x}"
        assert obj["report"]["verdict"] == "held"
    assert json.loads(lines[-1])["summary"] == s


def test_campaign_lines_reproducible_from_seed(tmp_path):
    out = tmp_path / "cor45.jsonl"
    cfg = CampaignConfig("cor45", 15, seed=23, n_range=(2, 5))
    run_campaign(cfg, out)
    for line in out.read_text().splitlines()[:-1]:
        obj = json.loads(line)
        payload = generate_instance(cfg, obj["trial"], make_rng(23, obj["trial"]))
        assert serialize.digest(payload) == obj["digest"]
        fresh = run_instance(payload)
        assert fresh.verdict == obj["report"]["verdict"]
        assert fresh.min_slack == obj["report"]["min_slack"]


def test_campaign_streams_are_byte_identical(tmp_path):
    cfg = CampaignConfig("cor45", 30, seed=42)
    a, b = tmp_path / "a.jsonl", tmp_path / "b.jsonl"
    run_campaign(cfg, a)
    run_campaign(cfg, b)
    assert a.read_bytes() == b.read_bytes()


def test_campaign_without_sink_returns_records():
    res = run_campaign(CampaignConfig("vasic", 5, seed=4))
    assert len(res.records) == 5
    assert all(r.report is not None and r.report.holds for r in res.records)
    assert res.violation_paths == []


def test_campaign_counts_generation_failures(tmp_path, monkeypatch):
    import bohrcheck.harness as harness_mod

    real = harness_mod.generate_instance

    def flaky(cfg, trial, rng):
        if trial % 2 == 1:
            raise GenerationError("forced failure")
        return real(cfg, trial, rng)

    monkeypatch.setattr(harness_mod, "generate_instance", flaky)
    out = tmp_path / "flaky.jsonl"
    res = harness_mod.run_campaign(CampaignConfig("bohr", 6, 8), out)
    assert res.summary["generation_failures"] == 3
    assert res.summary["held"] == 3
    failed = [json.loads(l) for l in out.read_text().splitlines()[:-1] if "generation_failed" in l]
    assert len(failed) == 3
    assert all(f["error"] == "forced failure" for f in failed)


def test_campaign_persists_violations_for_replay(tmp_path):
    out = tmp_path / "mutated.jsonl"
    cfg = CampaignConfig("cor45", 40, seed=5, rhs_scale=0.4)
    res = run_campaign(cfg, out)
    assert res.summary["violations"] == 14
    assert len(res.violation_paths) == 14
    for vpath in res.violation_paths:
        name = vpath.rsplit("/", 1)[-1]
        assert name.startswith("mutated.violation-") and name.endswith(".json")
        saved = json.loads((tmp_path / name).read_text())
        assert set(saved) == {"instance", "report"}
        assert saved["report"]["verdict"] == "violated"
        assert saved["report"]["extras"]["rhs_scale"] == 0.4
        rep = replay(tmp_path / name)  # honors the stored rhs_scale
        assert rep.violated


# --- replay ---------------------------------------------------------------------------


def _bohr_payload():
    return {
        "theorem": "bohr",
        "z": {"re": 1.0, "im": 0.5},
        "w": {"re": -0.25, "im": 2.0},
        "p": 3.0,
    }


def test_replay_accepts_dict_and_path(tmp_path):
    payload = _bohr_payload()
    from_dict = replay(payload)
    path = tmp_path / "inst.json"
    path.write_text(json.dumps(payload))
    from_path = replay(path)
    assert from_dict.verdict == from_path.verdict == "held"
    assert from_dict.min_slack == from_path.min_slack
    assert from_dict.input_digest == from_path.input_digest


def test_replay_verifies_stored_report(tmp_path):
    payload = _bohr_payload()
    fresh = run_instance(payload)
    wrapped = {"instance": payload, "report": fresh.to_json()}
    assert replay(wrapped).verdict == fresh.verdict

    tampered = json.loads(json.dumps(wrapped))
    tampered["report"]["verdict"] = "violated"
    with pytest.raises(HarnessError, match="verdict"):
        replay(tampered)

    tampered = json.loads(json.dumps(wrapped))
    tampered["report"]["min_slack"] += 1e-9
    with pytest.raises(HarnessError, match="min_slack"):
        replay(tampered)


def test_replay_reuses_stored_tolerance(tmp_path):
    payload = _bohr_payload()
    loose = run_instance(payload, tol=1e6)
    wrapped = {"instance": payload, "report": loose.to_json()}
    rep = replay(wrapped)
    assert rep.tol_used == 1e6 and rep.verdict == loose.verdict


def test_replay_rejects_malformed_json(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text('{"theorem": "bohr",\n  "z": }\n')
    with pytest.raises(SerializationError, match="line 2"):
        replay(path)
    with pytest.raises(FileNotFoundError):
        replay(tmp_path / "missing.json")


# --- demo ------------------------------------------------------------------------------


def test_demo_rows():
    rows = demo()
    assert len(rows) == 4
    assert [r["verdict"] for r in rows] == ["held"] * 4

    scalar = rows[0]
    assert scalar["lhs"] == pytest.approx(4.0, abs=1e-14)
    assert scalar["rhs"] == pytest.approx(4.0, abs=1e-14)
    assert scalar["slack"] == pytest.approx(0.0, abs=1e-14)

    vasic = rows[1]
    assert vasic["lhs"] == pytest.approx(18.5673, abs=1e-3)
    assert vasic["slack"] == pytest.approx(0.0, abs=1e-10)

    dilation = rows[2]
    assert dilation["lhs"] <= 1e-12  # reconstruction residual
    assert dilation["rhs"] <= 1e-12  # isometry defect

    eigen = rows[3]
    assert tuple(eigen["lhs"]) == pytest.approx((1.0, 2.0), abs=1e-12)
    assert tuple(eigen["rhs"]) == pytest.approx((2.0, 4.0), abs=1e-12)
    assert eigen["slack"] == pytest.approx(1.0, abs=1e-12)


def test_demo_table_layout():
    text = demo_table()
    lines = text.splitlines()
    assert len(lines) == 5
    assert lines[0].startswith("case") and lines[0].rstrip().endswith("verdict")
    assert all("held" in line for line in lines[1:])
