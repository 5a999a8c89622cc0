import csv
import hashlib
import io
import json
import math
from fractions import Fraction
from pathlib import Path

import pytest

from quadpoints.census import RunConfig, cmd_generate_points, cmd_thresholds, cmd_verify_examples, main
from quadpoints.census.cli import parse_range, parse_real

COVERS = Path(__file__).resolve().parents[1] / "covers"

# frozen from the first verified run of the m = 4 pipeline (t0 in {2,3,5,7,10}, n <= 5)
GENERATE_M4_SHA256 = "b9930b5eb0c94729ecb77e86e36f6abc59d986a18a1d7de7694a66afa43a0e26"
GENERATE_M4_COUNTS = {"rows": 50, "verified": 50, "rational": 5, "quadratic": 45,
                      "distinct_t0": 5, "distinct_t0_section_pairs": 50, "excluded": 0}


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def rows_of(text):
    lines = [line for line in text.splitlines() if not line.startswith("#")]
    return list(csv.DictReader(io.StringIO("\n".join(lines))))


def summary_of(text):
    out = {}
    for line in text.splitlines():
        if line.startswith("# ") and ": " in line and not line.startswith(("# exclusion", "# check")):
            k, v = line[2:].split(": ", 1)
            out[k] = v
    return out


# -- argument parsing -----------------------------------------------------------------

def test_parsers():
    assert parse_real("log 3") == math.log(3)
    assert parse_real("log(5)") == math.log(5)
    assert parse_real("1/2") == 0.5
    assert parse_range("2..20") == (2, 20) and parse_range("4") == (4, 4)


@pytest.mark.parametrize("argv", [
    ["audit", "--cover", "missing.json", "--height-bound", "1"],
    ["audit", "--cover", str(COVERS / "x6_plus_y6.json"), "--height-bound", "0"],
    ["audit", "--cover", str(COVERS / "x6_plus_y6.json"), "--height-bound", "1", "--epsilon", "1"],
    ["audit", "--cover", str(COVERS / "x6_plus_y6.json"), "--height-bound", "abc"],
    ["verify-examples", "--n-range", "1..3"],
    ["verify-examples", "--corrupt", "no_such_check"],
    ["generate-points", "--m", "3"],
    ["generate-points", "--sections", "9"],
    ["thresholds", "--e-range", "1..2"],
    ["enumerate", "--dim", "3", "--height-bound", "1"],
    ["enumerate", "--height-bound", "1", "--workers", "0"],
    [],
])
def test_input_errors_exit_2(argv, capsys):
    with pytest.raises(SystemExit) as exc:
        raise SystemExit(main(argv))
    assert exc.value.code == 2


def test_malformed_cover_file_exit_2(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"r": 1, "e": 2, "m": 2, "s": [{"exps": [6, 0], "num": 1}]}))
    code, out, err = run(["audit", "--cover", str(bad), "--height-bound", "1"], capsys)
    assert code == 2 and "deg s" in err and out == ""


# -- audit ------------------------------------------------------------------------------

def test_audit_report(capsys):
    code, out, _ = run(["audit", "--cover", str(COVERS / "x6_plus_y6.json"),
                        "--height-bound", "log 3", "--epsilon", "0"], capsys)
    assert code == 0
    assert out.splitlines()[0] == ("point_id,field_d,base_height,canonical_height,disc,"
                                   "contracted,slack,marginal")
    rows = rows_of(out)
    row = next(r for r in rows if r["point_id"] == "[sqrt(2):1]")
    assert row["contracted"] == "false" and row["field_d"] == "2"
    assert abs(float(row["disc"]) - math.log(8) / 2) < 1e-9
    s = summary_of(out)
    assert int(s["rows"]) == len(rows) == 18
    assert int(s["contracted"]) + int(s["non_contracted"]) == len(rows)
    keys = [(float(r["base_height"]), r["point_id"]) for r in rows]
    assert keys == sorted(keys)
    assert "\r" not in out


def test_audit_small_bound(capsys):
    code, out, _ = run(["audit", "--cover", str(COVERS / "x6_plus_y6.json"), "--height-bound", "0.1"], capsys)
    s = summary_of(out)
    assert code == 0 and s["non_contracted"] == "0" and s["marginal"] == "0"
    assert all(r["contracted"] == "true" for r in rows_of(out))


def test_audit_json(capsys):
    code, out, _ = run(["audit", "--cover", str(COVERS / "x6_plus_y6.json"), "--height-bound", "log 2",
                        "--format", "json"], capsys)
    doc = json.loads(out)
    assert code == 0 and doc["summary"]["rows"] == len(doc["rows"])
    assert out == json.dumps(doc, sort_keys=True, indent=2) + "\n"


# -- verify-examples ----------------------------------------------------------------------

def test_verify_examples_default():
    rep = cmd_verify_examples(RunConfig("verify-examples"))
    assert not rep.failed
    ids = [e["id"] for e in rep.provenance]
    # the odd-m, even-m and F_n checks appear in that order
    assert ids.index("m1_projection_1_branch_degree") < ids.index("m3_ci_canonical") \
        < ids.index("m2_generic_fiber") < ids.index("m4_t2_nontorsion") < ids.index("fn2_volume")
    assert sum(i.startswith("fn") for i in ids) == 19 * 6
    assert all(e["source"] in ("paper", "derived") for e in rep.provenance)


def test_verify_examples_cli_json(capsys):
    code, out, _ = run(["verify-examples", "--n-range", "2..4"], capsys)
    doc = json.loads(out)
    assert code == 0 and doc["summary"]["failed"] == 0
    assert out == json.dumps(doc, sort_keys=True, indent=2) + "\n"


@pytest.mark.parametrize("check", ["m1_projection_1_branch_degree", "m3_ci_canonical", "m2_generic_fiber",
                                   "m4_section_on_fiber", "m4_t2_nontorsion", "fn5_multiplicity",
                                   "fn3_canonical_ample", "group_law_seeded"])
def test_corruption_is_isolated(check):
    rep = cmd_verify_examples(RunConfig("verify-examples", n_range=(2, 6), corrupt=(check,)))
    failed = [e["id"] for e in rep.provenance if not e["passed"]]
    assert failed == [check] and rep.failed


def test_corrupted_run_exits_1(capsys):
    code, out, _ = run(["verify-examples", "--n-range", "2..3", "--corrupt", "fn2_volume"], capsys)
    assert code == 1 and json.loads(out)["summary"]["failed_ids"] == ["fn2_volume"]


# -- generate-points --------------------------------------------------------------------

def test_generate_points_m4_golden(capsys):
    code, out, _ = run(["generate-points"], capsys)
    assert code == 0
    assert hashlib.sha256(out.encode()).hexdigest() == GENERATE_M4_SHA256
    s = summary_of(out)
    assert {k: int(s[k]) for k in GENERATE_M4_COUNTS} == GENERATE_M4_COUNTS
    rows = rows_of(out)
    assert rows[0] == {"t0": "2", "section_index": "1", "u0": "1", "v0": "16", "field_d": "1",
                       "is_rational": "true", "is_contracted_by_pi": "false", "verified": "true"}
    for r in rows:
        assert r["verified"] == "true"
        assert (r["is_rational"] == "true") == (r["field_d"] == "1")


def test_generate_points_rows_reverify():
    rep = cmd_generate_points(RunConfig("generate-points", t_values=(Fraction(3),), sections=3))
    for r in rep.rows:
        t0, u0, v0, d = r["t0"], Fraction(r["u0"]), Fraction(r["v0"]), r["field_d"]
        # z^2 = u0 with z in Q(sqrt d): u0 / d or u0 is a rational square
        q = u0 if d == 1 else u0 / d
        assert q > 0 and math.isqrt(q.numerator) ** 2 == q.numerator
        # w^2 = x^8 - y^8 + z^8 at (t0, 1, sqrt(u0))
        assert v0 * v0 == t0**8 - 1 + u0**4


def test_generate_points_m2(capsys):
    code, out, _ = run(["generate-points", "--m", "2", "--t-values", "2"], capsys)
    rows = rows_of(out)
    assert code == 0 and len(rows) == 3 and all(r["verified"] == "true" for r in rows)
    assert [(r["u0"], r["v0"]) for r in rows] == [("1", "4"), ("-119/9", "-124/9"), ("-191/65", "-316/65")]


def test_generate_points_exclusions(capsys):
    code, out, _ = run(["generate-points", "--t-values", "1,2,-1", "--sections", "2"], capsys)
    assert code == 0
    assert "# exclusion: t0=1: singular fibre" in out and "# exclusion: t0=-1: singular fibre" in out
    s = summary_of(out)
    assert s["excluded"] == "2" and s["rows"] == str(len(rows_of(out))) == "4"


# -- thresholds and enumerate ------------------------------------------------------------------

def test_thresholds_table():
    rep = cmd_thresholds(RunConfig("thresholds", r_range=(1, 2), d_range=(2, 3), e_range=(2, 3)))
    table = {(r["r"], r["d"], r["e"]): r for r in rep.rows}
    assert table[(1, 2, 2)]["threshold"] == 5
    assert table[(2, 2, 2)]["threshold"] == 6
    assert table[(2, 3, 3)]["threshold"] == 4 and table[(2, 3, 3)]["residue_degree_options"] == "1;3"
    assert not rep.failed and len(rep.provenance) == 2


def test_enumerate_cli(capsys):
    code, out, _ = run(["enumerate", "--height-bound", "log 2"], capsys)
    assert code == 0 and len(rows_of(out)) == 8
    code, out, _ = run(["enumerate", "--dim", "1", "--field", "quadratic", "--height-bound", "0.01"], capsys)
    assert code == 0
    assert {r["point_id"] for r in rows_of(out)} == {
        "[sqrt(-1):1]", "[-1/2+1/2*sqrt(-3):1]", "[1/2+1/2*sqrt(-3):1]"}


# -- determinism -----------------------------------------------------------------------------

@pytest.mark.parametrize("argv", [
    ["audit", "--cover", str(COVERS / "x6_plus_y6.json"), "--height-bound", "log 3"],
    ["generate-points", "--t-values", "2,3,5", "--sections", "3"],
    ["enumerate", "--dim", "2", "--field", "quadratic", "--height-bound", "0.35"],
])
def test_worker_count_does_not_change_bytes(argv, tmp_path):
    outs = []
    for w in (1, 3):
        path = tmp_path / f"w{w}.out"
        assert main(argv + ["--workers", str(w), "--out", str(path)]) == 0
        outs.append(path.read_bytes())
    assert outs[0] == outs[1]
