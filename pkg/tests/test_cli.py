import json

import pytest

from cli import EXIT_OK, EXIT_UNVERIFIED, EXIT_USAGE, main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, json.loads(out) if out.strip().startswith("{") else out


def test_verify_exit_codes(capsys):
    code, doc = run(capsys, "verify", "--preset", "quartic-ex2", "--point", "0,1,1,0")
    assert code == EXIT_OK
    assert doc["verified"] is True
    code, doc = run(capsys, "verify", "--preset", "quartic-ex2", "--point", "(1, 1, 1, 1)")
    assert code == EXIT_UNVERIFIED
    assert doc["verified"] is False


@pytest.mark.parametrize("point", ["1,a,2,3", "1,2,3", "0,0,0,0"])
def test_verify_rejects_malformed_points(capsys, point):
    code, _ = run(capsys, "verify", "--preset", "quartic-ex2", "--point", point)
    assert code == EXIT_USAGE


def test_unknown_preset(capsys):
    code, _ = run(capsys, "verify", "--preset", "no-such-surface")
    assert code == EXIT_USAGE


def test_iterate_with_witnesses(capsys):
    code, doc = run(capsys, "iterate", "--preset", "quartic-ex2", "--steps", "1", "--witness")
    assert code == EXIT_OK
    assert doc["op"] == "RC"
    assert doc["h"] is None
    first, second = doc["points"]
    assert first["coords"] == ["0", "1", "1", "0"]
    assert first["witness"]["m"] == ["0", "1/3"]
    assert first["witness"]["z"] == "7"
    assert second["coords"] == ["63", "-44", "-44", "-21"]
    assert second["verified"] is True


def test_iterate_reports_period(capsys):
    code, doc = run(capsys, "iterate", "--preset", "sextic-ex1", "--steps", "12")
    assert code == EXIT_OK
    assert doc["period"] == 11
    assert len(doc["points"]) == 11


def test_iterate_with_parameter(capsys):
    code, doc = run(capsys, "iterate", "--preset", "quartic-ex1", "--h", "7", "--op", "CR", "--steps", "1")
    assert code == EXIT_OK
    assert doc["h"] == "7"
    assert doc["points"][1]["coords"] == ["15", "8", "8", "-15"]


def test_iterate_shows_display_coordinates_for_systems(capsys):
    code, doc = run(capsys, "iterate", "--preset", "octic-x6p2", "--steps", "1")
    assert code == EXIT_OK
    step = doc["points"][1]
    assert len(step["coords"]) == 12
    assert step["display"] == ["19", "-109", "60", "-60", "60", "-60", "60", "-79"]


def test_negative_steps_are_a_usage_error():
    with pytest.raises(SystemExit) as err:
        main(["iterate", "--preset", "quartic-ex2", "--steps", "-1"])
    assert err.value.code == EXIT_USAGE


def test_witness_of_a_non_point(capsys):
    code, _ = run(capsys, "witness", "--preset", "quartic-ex2", "--point", "1,1,1,1")
    assert code == EXIT_UNVERIFIED


def test_witness_on_quintic_has_psi_values(capsys):
    code, doc = run(capsys, "witness", "--preset", "quintic-cubic")
    assert code == EXIT_OK
    assert doc["witness"]["z"] == "13756545/86"
    assert doc["witness"]["aux"]["psi3"] == "648"


def test_symbolic_disc(capsys):
    code, doc = run(capsys, "symbolic-disc", "--preset", "quartic-ex2")
    assert code == EXIT_OK
    assert doc["vars"] == ["m1", "m2"]
    terms = {tuple(t["exponents"]): t["coefficient"] for t in doc["terms"]}
    assert terms[(8, 0)] == "45"
    assert terms[(0, 0)] == "-396"


def test_symbolic_disc_needs_a_surface(capsys):
    code, _ = run(capsys, "symbolic-disc", "--preset", "octic-x6p2")
    assert code == EXIT_USAGE


def test_search(capsys):
    code, doc = run(capsys, "search", "--curve", "quartic-ex2-invariant-x4zero", "--height", "10")
    assert code == EXIT_OK
    assert doc["count"] == 1
    assert doc["points"] == [["0", "1", "1", "0"]]


def test_search_on_invariant_curve(capsys):
    code, doc = run(capsys, "search", "--curve", "quartic-ex2-invariant", "--height", "20")
    assert code == EXIT_OK
    assert ["0", "1", "1", "0"] in doc["points"]


def test_iterated_points_verify_again(capsys):
    _, doc = run(capsys, "iterate", "--preset", "sextic-ex2", "--steps", "2")
    for entry in doc["points"]:
        code, _ = run(capsys, "verify", "--preset", "sextic-ex2", "--point", ",".join(entry["coords"]))
        assert code == EXIT_OK


def test_invariant_census(capsys):
    code, doc = run(capsys, "census", "--preset", "quartic-ex2", "--invariant", "--height", "8")
    assert code == EXIT_OK
    assert doc["odd"] is True
    assert doc["unpaired"] == [["0", "1", "1", "0"]]


def test_orbit_census(capsys):
    code, doc = run(capsys, "census", "--preset", "sextic-ex1", "--max-steps", "12")
    assert code == EXIT_OK
    assert doc["seeds"][0]["period"] == 11


def test_presets_listing(capsys):
    code, doc = run(capsys, "presets")
    assert code == EXIT_OK
    names = [s["name"] for s in doc["surfaces"] + doc["systems"]]
    assert "quartic-ex1" in names and "quintic-cubic" in names
    ex1 = next(s for s in doc["surfaces"] if s["name"] == "quartic-ex1")
    assert ex1["takes_h"] is True
    assert ex1["default_h"] == "7"


def test_text_format_and_output_file(capsys, tmp_path):
    target = tmp_path / "verify.txt"
    code = main(
        ["verify", "--preset", "quartic-ex2", "--format", "text", "--output", str(target)]
    )
    assert code == EXIT_OK
    assert capsys.readouterr().out == ""
    assert "verifies on quartic-ex2" in target.read_text()
