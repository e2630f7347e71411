import json

from gstab.cli import main, run_scenario


BASE_SCENARIO = {
    "model": "a2_path",
    "stability_conditions": {
        "base": {"charge": [[0, 1], [-1, 0]], "heart": {"id": "std", "shift": 0}},
        "doubled": {"charge": [[0, 2], [-1, 0]], "heart": {"id": "std", "shift": 0}},
    },
    "sequences": {
        "fade": {
            "heart": {"id": "std", "shift": 0},
            "A": [[0, 0], [-1, 0]],
            "B": [[0, 1], [0, 0]],
            "n0": 1,
        }
    },
    "analyses": [
        {"analysis": "hn", "sigma": "base", "object": [["E", 0]]},
        {"analysis": "mass", "sigma": "base", "object": [["E", 0], ["E", 5]]},
        {
            "analysis": "distances",
            "pairs": [["base", "doubled"]],
            "kinds": ["bridgeland", "slicing", "charge", "stab"],
            "csv": "dist.csv",
        },
        {"analysis": "k_sigma", "sequence": "fade"},
        {"analysis": "support", "sequence": "fade"},
        {"analysis": "j", "sequence": "fade"},
        {
            "analysis": "mass_profile",
            "sequence": "fade",
            "object": [["S1", 0]],
            "n": list(range(1, 101)),
            "csv": "mass.csv",
        },
    ],
}


def write_scenario(tmp_path, payload, name="scenario.json"):
    path = tmp_path / name
    path.write_text(json.dumps(payload))
    return path


def test_run_scenario_end_to_end(tmp_path):
    path = write_scenario(tmp_path, BASE_SCENARIO)
    out = tmp_path / "report.json"
    code, report = run_scenario(path, out)
    assert code == 0 and report["ok"]
    text = out.read_text()
    data = json.loads(text)
    kinds = [r["analysis"] for r in data["analyses"]]
    assert kinds == ["hn", "mass", "distances", "k_sigma", "support", "j", "mass_profile"]
    assert data["analyses"][1]["mass"] == 4.0
    assert data["analyses"][3]["K"] == ["S1"]
    assert data["analyses"][5]["image"]["K"] == ["S1"]

    dist = (tmp_path / "dist.csv").read_text()
    assert "base,doubled,bridgeland,0.69314718055994529,0.69314718055994529" in dist

    mass_rows = (tmp_path / "mass.csv").read_text().strip().splitlines()
    assert mass_rows[0] == "n,mass"
    n, m = mass_rows[3].split(",")
    assert n == "3" and abs(float(m) - 1 / 3) < 1e-9
    assert data["analyses"][6]["tail_monotone"] is True


def test_mass_profile_of_surviving_class_is_constant(tmp_path):
    payload = json.loads(json.dumps(BASE_SCENARIO))
    payload["analyses"] = [
        {
            "analysis": "mass_profile",
            "sequence": "fade",
            "object": [["S2", 0]],
            "n": [1, 5, 25, 125],
            "csv": "s2.csv",
        }
    ]
    path = write_scenario(tmp_path, payload)
    code, _ = run_scenario(path, tmp_path / "report.json")
    assert code == 0
    rows = (tmp_path / "s2.csv").read_text().strip().splitlines()[1:]
    assert all(abs(float(r.split(",")[1]) - 1.0) < 1e-9 for r in rows)


def test_reports_are_byte_stable(tmp_path):
    path = write_scenario(tmp_path, BASE_SCENARIO)
    out1 = tmp_path / "r1.json"
    out2 = tmp_path / "r2.json"
    run_scenario(path, out1)
    run_scenario(path, out2)
    assert out1.read_bytes() == out2.read_bytes()


def test_unknown_reference_exits_2(tmp_path):
    payload = dict(BASE_SCENARIO)
    payload["analyses"] = [{"analysis": "k_sigma", "sequence": "missing"}]
    path = write_scenario(tmp_path, payload)
    assert main(["run", str(path)]) == 2


def test_unknown_analysis_exits_2(tmp_path):
    payload = dict(BASE_SCENARIO)
    payload["analyses"] = [{"analysis": "quantify"}]
    path = write_scenario(tmp_path, payload)
    assert main(["run", str(path)]) == 2


def test_malformed_json_exits_2(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text("{not json")
    assert main(["run", str(path)]) == 2


def test_analysis_error_exits_1_with_partial_report(tmp_path):
    payload = json.loads(json.dumps(BASE_SCENARIO))
    payload["analyses"] = [
        {"analysis": "mass", "sigma": "base", "object": [["E", 0]]},
        {"analysis": "hn", "sigma": "base", "object": []},  # zero object fails
    ]
    path = write_scenario(tmp_path, payload)
    out = tmp_path / "report.json"
    code = main(["run", str(path), "--out", str(out)])
    assert code == 1
    data = json.loads(out.read_text())
    assert data["analyses"][0]["mass"] == 2.0
    assert "error" in data["analyses"][1]
    assert not data["ok"]


def test_models_list(capsys):
    assert main(["models", "list"]) == 0
    captured = capsys.readouterr().out
    assert "a1_cyn:<N>" in captured and "a2_path" in captured


def test_example_analyses(tmp_path):
    payload = {
        "model": "a1_cyn:2",
        "analyses": [{"analysis": "example_a1"}, {"analysis": "example_a2_remark"}],
    }
    path = write_scenario(tmp_path, payload)
    out = tmp_path / "report.json"
    code, report = run_scenario(path, out)
    assert code == 0
    recs = json.loads(out.read_text())["analyses"]
    assert recs[0]["report"]["boundary_classes"] == 1
    assert recs[1]["report"]["ok"] is True


def test_unsupported_model_exits_2():
    assert main(["run", "/nonexistent/scenario.json"]) == 2
