import json
from importlib import resources

import pytest

from pqsurf import cli
from pqsurf.errors import InconsistencyError

JOBS = resources.files("pqsurf") / "data" / "jobs"

C3XC3 = {
    "schema": 1,
    "group": {"kind": "perms", "degree": 6,
              "generators": [{"cycles": [[0, 1, 2]]}, {"cycles": [[3, 4, 5]]}]},
    "systems": [
        [{"word": [1]}, {"word": [1, 1]}, {"word": [2]}, {"word": [2, 2]}],
        [{"word": [1, 2]}, {"word": [1, 2, 1, 2]}, {"word": [1, 2, 2]}, {"word": [1, 2, 2, 1, 2, 2]}],
    ],
}


def run(capsys, *argv):
    code = cli.main([str(a) for a in argv])
    out = capsys.readouterr().out
    return code, (json.loads(out) if out.startswith("{") else out)


def write(tmp_path, data, name="job.json"):
    path = tmp_path / name
    path.write_text(json.dumps(data) if not isinstance(data, str) else data)
    return path


def no_floats(x):
    if isinstance(x, float):
        return False
    if isinstance(x, dict):
        return all(no_floats(v) for v in x.values())
    if isinstance(x, list):
        return all(no_floats(v) for v in x)
    return True


def test_cover_triple(capsys):
    code, rep = run(capsys, "cover", JOBS / "psl2_13.json")
    assert code == 0
    assert rep["schema"] == 1
    assert rep["result"]["systems"][0] == {"signature": [2, 3, 7], "genus": 14, "classes": [1, 2, 6]}
    assert rep["result"]["enumerated"]["count"] == 6
    assert len(rep["result"]["enumerated"]["automorphism_orbits"]) == 3


def test_surface_d7(capsys):
    code, rep = run(capsys, "surface", JOBS / "d7.json", "--no-pi1")
    assert code == 0
    r = rep["result"]
    assert (r["K2"], r["KminusE2"], r["pg"], r["h11"]) == (93, 2, 16, 77)
    assert r["hodge_diamond"] == [[1], [0, 0], [16, 77, 16], [0, 0], [1]]
    assert no_floats(rep)


def test_basket_empty_overlap(capsys, tmp_path):
    code, rep = run(capsys, "basket", write(tmp_path, C3XC3))
    assert code == 0
    assert rep["result"]["basket"] == []
    assert rep["result"]["k"] == "0"


def test_basket_rationals(capsys):
    code, rep = run(capsys, "basket", JOBS / "d7_twisted.json")
    assert code == 0
    assert rep["result"]["k"] == "11/7"
    assert rep["result"]["D"] == "85"


def test_group_and_quotient(capsys):
    code, rep = run(capsys, "group", JOBS / "d7.json")
    assert rep["result"]["order"] == 1092
    assert sum(c["size"] for c in rep["result"]["classes"]) == 1092
    code, rep = run(capsys, "quotient", JOBS / "d7.json")
    q = rep["result"]["systems"][0]
    assert (q["index"], q["quotient_genus"], q["branch_points"]) == (78, 0, 7)


def test_pi1_command(capsys):
    code, rep = run(capsys, "pi1", JOBS / "a4.json")
    assert code == 0
    assert rep["result"]["status"] == "verified"
    assert rep["result"]["systems"] == rep["result"]["verified"] == 144


def test_reports_deterministic(capsys, tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert cli.main(["twists", str(JOBS / "d7_twists.json"), "--out", str(a)]) == 0
    assert cli.main(["twists", str(JOBS / "d7_twists.json"), "--out", str(b), "--threads", "3"]) == 0
    assert a.read_bytes() == b.read_bytes()
    rep = json.loads(a.read_text())
    assert json.loads(cli.dumps(rep)) == rep
    assert no_floats(rep)


@pytest.mark.parametrize("payload", [
    "not json",
    {"schema": 2, "group": {"kind": "psl2", "q": 13}},
    {"schema": 1, "group": {"kind": "psl2", "q": 13}, "systems": [[[[2, 0], [0, 1]]]]},
    {"schema": 1, "group": {"kind": "psl2", "q": 12}},
    {"schema": 1, "group": {"kind": "perms", "degree": 3, "generators": [[0, 0, 1]]}},
    {"schema": 1, "group": {"kind": "psl2", "q": 13}, "systems": [[[[1, 1], [0, 1]]]]},
])
def test_validation_errors_exit_1(capsys, tmp_path, payload):
    code, _ = run(capsys, "cover", write(tmp_path, payload))
    assert code == 1


def test_missing_file_exit_1(capsys, tmp_path):
    assert run(capsys, "cover", tmp_path / "nope.json")[0] == 1


def test_resource_cap_exit_2(capsys, tmp_path):
    data = json.loads((JOBS / "d7.json").read_text())
    data["options"] = {"node_cap": 10}
    assert run(capsys, "pi1", write(tmp_path, data))[0] == 2


def test_inconsistency_exit_3(capsys, monkeypatch):
    def boom(*args, **kwargs):
        raise InconsistencyError("Noether fails")
    monkeypatch.setattr(cli, "surface_from_subgroup", boom)
    assert run(capsys, "surface", JOBS / "d7.json")[0] == 3


def test_verify_bundled_jobs(capsys):
    code = cli.main(["verify-paper"])
    out = capsys.readouterr().out
    assert code == 0, out
    assert "MISMATCH" not in out
    assert out.count(" ok") == len(list(JOBS.iterdir()))
