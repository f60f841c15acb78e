import json

import pytest

from artin3.cli import EXIT_BUDGET, EXIT_OK, EXIT_USAGE, EXIT_VERIFY, main
from artin3.groups import load_group
from artin3.named import build_named_group


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_group_invariants(capsys):
    code, out, _ = run(capsys, "group", "--name", "P1", "--invariants")
    assert code == EXIT_OK
    assert "order: 36" in out and "center_order: 1" in out
    assert "derived_order: 9" in out and "abelianization: [4]" in out


def test_group_dump_and_load_round_trip(capsys, tmp_path):
    code, out, _ = run(capsys, "group", "--name", "Heis3", "--dump")
    assert code == EXIT_OK
    G = load_group(out)
    assert (G.table == build_named_group("Heis3").table).all()
    f = tmp_path / "g.txt"
    f.write_text(out)
    code, out2, _ = run(capsys, "group", "--load", str(f), "--check", "--json")
    assert code == EXIT_OK and json.loads(out2)["order"] == 27


def test_chartable_degrees_of_j(capsys):
    code, out, _ = run(capsys, "chartable", "--name", "J", "--degrees")
    assert code == EXIT_OK
    assert "3 x8" in out
    code, out, _ = run(capsys, "chartable", "--name", "J", "--degrees", "--json")
    assert json.loads(out)["multiplicities"]["3"] == 8


def test_chartable_full_table(capsys):
    code, out, _ = run(capsys, "chartable", "--name", "C7:C3")
    assert code == EXIT_OK
    lines = out.splitlines()
    assert lines[0].endswith("5 classes") and len(lines) == 7


def test_conductor_spectrum(capsys):
    code, out, _ = run(capsys, "conductor", "--name", "J", "--tame", "C4", "--degree", "3")
    assert code == EXIT_OK
    assert "exponent 2 x6, exponent 3 x2" in out


def test_conductor_closed_form(capsys):
    code, out, _ = run(capsys, "conductor", "--case", "P3", "--p", "7", "--n", "1", "--c", "2", "--json")
    assert code == EXIT_OK
    d = json.loads(out)
    assert d["closed_form"] == d["filtration"] == 6


def test_conductor_filtration_file(capsys, tmp_path):
    f = tmp_path / "filt.txt"
    f.write_text("20 5 5 5 5 1\n")
    code, out, _ = run(capsys, "conductor", "--filtration", str(f), "--degree", "3")
    assert code == EXIT_OK and out.strip() == "exponent 6"


def test_h2_enumeration_of_p3(capsys):
    code, out, _ = run(capsys, "h2", "--name", "P3", "--enumerate", "--json")
    assert code == EXIT_OK
    d = json.loads(out)
    assert d["h2_dim"] == 2 and d["multiplier_3rank"] == 1
    stem = [t for t in d["types"] if t["stem"]]
    assert d["stem_types"] == len(stem) == 3
    assert all(t["degree3"] == 7 for t in stem)


def test_bounds_json(capsys):
    code, out, _ = run(capsys, "bounds", "--p", "5", "--m", "1", "--json")
    assert code == EXIT_OK
    d = json.loads(out)
    assert d["values"]["theorem1"] == "2/3"
    assert json.dumps(d, sort_keys=True, indent=2) + "\n" == out


def test_bounds_text(capsys):
    code, out, _ = run(capsys, "bounds", "--p", "5", "--m", "9")
    assert code == EXIT_OK
    assert out.startswith("BoundReport p=5 m=9")
    assert "theorem1" in out and "theorem5" in out


def test_bounds_config_and_overrides(capsys, tmp_path):
    cfg = tmp_path / "params.cfg"
    cfg.write_text("# sharper class-number input\nh_L = 2\n")
    _, base, _ = run(capsys, "bounds", "--p", "13", "--m", "6", "--json")
    code, out, _ = run(capsys, "bounds", "--p", "13", "--m", "6", "--json", "--config", str(cfg))
    assert code == EXIT_OK
    t_base = json.loads(base)["values"]["theorem2"]["c_m_cap"]
    t_cfg = json.loads(out)["values"]["theorem2"]["c_m_cap"]
    assert t_cfg < t_base
    code, out2, _ = run(capsys, "bounds", "--p", "13", "--m", "6", "--json", "--set", "h_L=2")
    assert out2 == out
    code, _, err = run(capsys, "bounds", "--p", "13", "--m", "6", "--set", "bogus=1")
    assert code == EXIT_USAGE and "bogus" in err


def test_output_is_deterministic(capsys):
    outs = {run(capsys, "bounds", "--p", "17", "--m", "12", "--json")[1] for _ in range(2)}
    outs |= {run(capsys, "--json", "bounds", "--p", "17", "--m", "12")[1]}
    assert len(outs) == 1


@pytest.mark.parametrize(
    "argv",
    [["bogus"], [], ["group", "--name", "Nope"], ["group"], ["bounds", "--p", "4", "--m", "3"],
     ["bounds", "--p", "5"], ["group", "--name", "P1", "--frobnicate"], ["verify", "--only", "x"]],
)
def test_usage_errors_exit_2(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == EXIT_USAGE
    assert err


@pytest.mark.parametrize("where", ["before", "after"])
def test_budget_exit_code(capsys, where):
    flags = ["--budget-mb", "0.1"]
    argv = flags + ["h2", "--name", "P3"] if where == "before" else ["h2", "--name", "P3"] + flags
    code, _, err = run(capsys, *argv)
    assert code == EXIT_BUDGET and "budget" in err


def test_verify_fast_passes(capsys):
    code, out, _ = run(capsys, "verify", "--fast")
    assert code == EXIT_OK
    lines = [ln for ln in out.splitlines() if ln.startswith("[")]
    assert [ln.split()[2].rstrip(":") for ln in lines] == [str(i) for i in range(1, 9)]
    assert "SKIPPED" in out


def test_verify_json_selection(capsys):
    code, out, _ = run(capsys, "verify", "--fast", "--only", "2", "6", "--json")
    assert code == EXIT_OK
    d = json.loads(out)
    assert [r["criterion"] for r in d] == [2, 6]
    assert all(r["status"] == "PASS" for r in d)


def test_verify_exit_code_reflects_failures(capsys):
    # the full order-648 check reports four non-split types, so criterion 3 fails
    code, out, _ = run(capsys, "verify", "--only", "3")
    assert code == EXIT_VERIFY
    assert "[FAIL] criterion 3" in out
