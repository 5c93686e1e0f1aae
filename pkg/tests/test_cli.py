import pytest

from mwgb.cli import EXIT_OK, EXIT_USAGE, EXIT_VALIDATION, EXIT_VERIFY, main, run_gb
from mwgb.errors import VerifyMismatch
from mwgb.grading import WeightMatrix
from mwgb.hilbert import hs_algebra, random_system
from mwgb.steps import STRATEGIES
from mwgb.systemfile import SystemFile, emit_system, parse_system

from conftest import random_small_system

W_T1 = WeightMatrix([[1, 2, 3], [2, 1, 1]])

EX1 = """\
p 65521
vars 3
weights 2
1 1 1
1 2 3
gen 1 2 2 0; 1 3 0 1
gen 1 2 2 0; -1 3 0 1
gen 1 2 2 0; 2 3 0 1
"""

EX2 = """\
p 65521
vars 3
weights 2
1 1 5
1 2 5
gen 1 10 0 0; 1 0 0 2
gen 1 1 1 0
gen 1 1 1 0
"""


def write(tmp_path, name, text):
    path = tmp_path / name
    path.write_text(text)
    return str(path)


def desk_system(seed, dmax=20):
    F = random_system(W_T1, [(10, 5), (10, 5)], seed, 65521)
    return SystemFile.from_polynomials(W_T1, F, 65521, dmax)


def run(capsys, argv):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


# --- gb -------------------------------------------------------------------

def test_gb_prints_basis_and_stats(tmp_path, capsys):
    path = write(tmp_path, "s.sys", emit_system(desk_system(0)))
    code, out, _ = run(capsys, ["gb", path, "--strategy", "mwh-gcd", "--verify"])
    assert code == EXIT_OK
    basis, stats = out.split("\n\n")
    assert all(line.startswith("gen ") for line in basis.splitlines())
    kv = dict(line.split(None, 1) for line in stats.splitlines())
    assert kv["strategy"] == "mwh-gcd" and kv["d_max"] == "20"
    assert kv["reductions_to_zero_total"] == "0"


def test_threads_do_not_change_output(tmp_path, capsys):
    path = write(tmp_path, "s.sys", emit_system(desk_system(1)))
    outs = []
    for t in ("1", "8"):
        code, out, _ = run(capsys, ["gb", path, "--threads", t, "--no-stats"])
        assert code == EXIT_OK
        outs.append(out)
    assert outs[0] == outs[1] and outs[0]


def test_filter_changes_stats_not_basis():
    sf = desk_system(2)
    a_text, a = run_gb(sf, "mwh-gcd", 20)
    b_text, b = run_gb(sf, "mwh-nofilter", 20)
    assert a_text == b_text
    assert a.fields() != b.fields()
    assert a.stats.steps_processed < b.stats.steps_processed


def test_stats_file_is_key_value(tmp_path, capsys):
    path = write(tmp_path, "s.sys", emit_system(desk_system(3)))
    out_kv = tmp_path / "run.kv"
    code, _, _ = run(capsys, ["gb", path, "--stats", str(out_kv), "--no-stats"])
    assert code == EXIT_OK
    kv = dict(line.split("=", 1) for line in out_kv.read_text().splitlines())
    assert kv["strategy"] == "mwh-gcd"
    assert int(kv["steps_total"]) >= int(kv["steps_processed"])
    float(kv["elapsed_seconds"])
    # everything except the timing is reproducible
    again = tmp_path / "again.kv"
    run(capsys, ["gb", path, "--stats", str(again), "--no-stats", "--threads", "3"])
    strip = lambda t: [l for l in t.splitlines() if not l.startswith("elapsed")]
    assert strip(out_kv.read_text()) == strip(again.read_text())


def test_missing_dmax_is_refused(tmp_path, capsys):
    path = write(tmp_path, "ex1.sys", EX1)
    code, out, err = run(capsys, ["gb", path])
    assert code == EXIT_USAGE and not out
    assert "dmax" in err


def test_file_dmax_used_when_flag_absent(tmp_path, capsys):
    path = write(tmp_path, "ex1.sys", EX1 + "dmax 12\n")
    code, out, _ = run(capsys, ["gb", path])
    assert code == EXIT_OK and "d_max" in out


def test_exit_codes(tmp_path, capsys):
    bad_parse = write(tmp_path, "bad.sys", "p 101\nvars x\n")
    assert run(capsys, ["gb", bad_parse, "--dmax", "5"])[0] == EXIT_USAGE
    bad_prime = write(tmp_path, "np.sys", "p 100\nvars 1\nweights 1\n1\n")
    assert run(capsys, ["gb", bad_prime, "--dmax", "5"])[0] == EXIT_VALIDATION
    inhom = write(tmp_path, "ih.sys", "p 101\nvars 2\nweights 1\n1 1\ngen 1 1 0; 1 0 2\n")
    assert run(capsys, ["gb", inhom, "--dmax", "5"])[0] == EXIT_VALIDATION
    assert run(capsys, ["gb", str(tmp_path / "missing.sys"), "--dmax", "5"])[0] == EXIT_USAGE
    assert run(capsys, ["gb", bad_parse, "--strategy", "nope"])[0] == EXIT_USAGE
    assert run(capsys, [])[0] == EXIT_USAGE
    ok = write(tmp_path, "ex1.sys", EX1)
    assert run(capsys, ["gb", ok, "--dmax", "8", "--threads", "0"])[0] == EXIT_USAGE


def test_verify_mismatch_exit_code(tmp_path, capsys, monkeypatch):
    import mwgb.cli as cli

    monkeypatch.setattr(cli, "buchberger_oracle", lambda F, degree_bound=None: F[:1])
    path = write(tmp_path, "ex1.sys", EX1)
    code, _, err = run(capsys, ["gb", path, "--dmax", "12", "--verify"])
    assert code == EXIT_VERIFY and "leading monomials differ" in err


@pytest.mark.parametrize("strategy", STRATEGIES)
def test_verify_on_random_small_systems(strategy):
    for seed in range(50):
        W, F = random_small_system(1000 + seed)
        sf = SystemFile.from_polynomials(W, F, 101)
        try:
            run_gb(sf, strategy, 16, verify=True)
        except VerifyMismatch as exc:
            pytest.fail(f"seed {seed}: {exc}")


# --- analyze --------------------------------------------------------------

def test_classify_reports(tmp_path, capsys):
    code, out, _ = run(capsys, ["analyze", write(tmp_path, "e2.sys", EX2), "classify", "--bound", "20"])
    assert code == EXIT_OK
    assert out.splitlines()[0] == "weakly_regular (up to bound 20)"
    code, out, _ = run(capsys, ["analyze", write(tmp_path, "e1.sys", EX1), "classify", "--bound", "12"])
    assert code == EXIT_OK and out.startswith("weakly_regular (up to bound 12)")


def test_hilbert_without_generators(tmp_path, capsys):
    path = write(tmp_path, "w.sys", "p 101\nvars 3\nweights 2\n1 2 3\n2 1 1\n")
    code, out, _ = run(capsys, ["analyze", path, "hilbert", "--bound", "6"])
    assert code == EXIT_OK
    rows = [line.split() for line in out.splitlines()[1:]]
    want = hs_algebra(W_T1, 6)
    assert len(rows) == len(want.coefficients)
    for row in rows:
        deg = tuple(int(x) for x in "".join(row[:-4]).strip("()").split(","))
        counts = [int(x) for x in row[-4:]]
        assert counts == [want[deg]] * 4


def test_analyze_requires_bound(tmp_path, capsys):
    assert run(capsys, ["analyze", write(tmp_path, "e1.sys", EX1), "classify"])[0] == EXIT_USAGE


# --- random ---------------------------------------------------------------

def test_random_is_byte_identical(tmp_path, capsys):
    wf = write(tmp_path, "w.sys", "p 65521\nvars 3\nweights 2\n1 2 3\n2 1 1\n")
    argv = ["random", "--weights-file", wf, "--degrees", "10,5;10,5", "--seed", "7", "--dmax", "20"]
    _, a, _ = run(capsys, argv)
    _, b, _ = run(capsys, argv)
    assert a == b
    sf = parse_system(a)
    assert len(sf.generators) == 2 and sf.dmax == 20
    assert sf.polynomials() == random_system(W_T1, [(10, 5), (10, 5)], 7, 65521)


def test_random_bad_degrees(tmp_path, capsys):
    wf = write(tmp_path, "w.sys", "p 65521\nvars 3\nweights 2\n1 2 3\n2 1 1\n")
    assert run(capsys, ["random", "--weights-file", wf, "--degrees", "a,b", "--seed", "1"])[0] == EXIT_USAGE
    assert run(capsys, ["random", "--weights-file", wf, "--degrees", "4,4", "--seed", "1"])[0] == EXIT_VALIDATION
