"""Tests for the heislab command-line interface."""

import json

import pytest

from heislab.cli import FIXTURES, main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


# ---------------------------------------------------------------------------
# Examples and exit codes


def test_example_zxz_lame(capsys):
    code, out, _ = run(capsys, "example", "zxz-lame")
    assert code == 1
    assert "Lame property violated" in out
    assert "(1,0)" in out  # witness b's entry e1


def test_example_ztheta_lame(capsys):
    code, out, _ = run(capsys, "example", "ztheta-lame")
    assert code == 0
    assert "holds" in out


def test_example_tau_fails(capsys):
    code, out, _ = run(capsys, "example", "tau-fails-zxz")
    assert code == 1
    assert "tau violated" in out


def test_example_heisenberg_all_hold(capsys):
    code, out, _ = run(capsys, "example", "heisenberg")
    assert code == 0
    assert out.count("holds") == 4


def test_example_unknown(capsys):
    code, _, err = run(capsys, "example-bogus")
    assert code == 3


# ---------------------------------------------------------------------------
# check / refute / witness


def test_check_nzct_heisenberg(capsys):
    code, out, _ = run(capsys, "check", "NZCT", "--bound", "3")
    assert code == 0
    assert "method=exact_lattice" in out


def test_check_tau_fixture(capsys):
    code, out, _ = run(capsys, "check", "tau", "--example", "tau-fails-zxz")
    assert code == 1
    assert "violated" in out


def test_check_inline_universal(capsys):
    code, out, _ = run(capsys, "check", "forall x ( [x,a1]=1 )", "--bound", "1")
    assert code == 1
    assert "witness" in out


def test_check_inline_existential(capsys):
    code, out, _ = run(capsys, "check", "exists x ( x!=1 )", "--bound", "1")
    assert code == 0


def test_refute_exhaustion_is_exit_2(capsys):
    code, out, _ = run(capsys, "refute", "forall x ( x=x )", "--bound", "2")
    assert code == 2
    assert "inconclusive" in out


def test_witness_found(capsys):
    code, out, _ = run(capsys, "witness", "exists y ( [y,a1]!=1 )", "--bound", "1")
    assert code == 0
    assert "a2" in out


def test_bad_formula_is_exit_3(capsys):
    code, _, err = run(capsys, "check", "forall ( x=1 )")
    assert code == 3
    assert "error" in err


# ---------------------------------------------------------------------------
# Direct checkers


def test_lame_subcommand(capsys):
    code, out, _ = run(capsys, "lame", "--example", "zxz-lame")
    assert code == 1
    assert out.startswith("violated method=exact_lattice")
    code, out, _ = run(capsys, "lame", "--example", "ztheta-lame")
    assert code == 0


def test_sigma_subcommand_json(capsys):
    code, out, _ = run(capsys, "sigma", "--example", "ztheta-lame", "--json")
    assert code == 1
    doc = json.loads(out)
    assert doc["status"] == "violated"
    assert doc["witness"]["unsolvable_system"] == "S"
    assert doc["witness"]["commutator_13_entry"] == "theta"


def test_nzct_subcommand(capsys):
    code, out, _ = run(capsys, "nzct", "--example", "tau-fails-zxz", "--bound", "2")
    assert code == 1


def test_solve_s(capsys):
    code, out, _ = run(capsys, "solve-s", "--z", "1")
    assert code == 0
    assert "solvable" in out and "a2^1" in out
    code, out, _ = run(capsys, "solve-s", "--z", "(1,0)", "--example", "zxz-lame")
    assert code == 1
    assert "unsolvable" in out


def test_solve_t_json(capsys):
    code, out, _ = run(capsys, "solve-t", "--z", "1", "--json")
    assert code == 0
    doc = json.loads(out)
    assert doc["solvable"] is True


def test_crank(capsys):
    code, out, _ = run(capsys, "crank")
    assert code == 0 and out.strip() == "1"
    code, out, _ = run(capsys, "crank", "--example", "ztheta-lame")
    assert out.strip() == "2"


# ---------------------------------------------------------------------------
# Constructions through files


def test_extend_and_roundtrip(capsys, tmp_path):
    code, out, _ = run(capsys, "extend", "--at", "a1")
    assert code == 0
    assert "ring: Z[theta]" in out
    cfg = tmp_path / "ext.cfg"
    cfg.write_text(out)
    code, out, _ = run(capsys, "crank", "--rep", str(cfg))
    assert out.strip() == "2"


def test_adjoin_y(capsys, tmp_path):
    code, out, _ = run(
        capsys, "adjoin-y", "--z", "(1,0)", "--example", "zxz-lame"
    )
    assert code == 0
    assert "e12: (1,0)" in out
    cfg = tmp_path / "adj.cfg"
    cfg.write_text(out)
    code, out, _ = run(capsys, "solve-s", "--z", "(1,0)", "--rep", str(cfg))
    assert code == 0


def test_adjoin_center(capsys):
    code, out, _ = run(capsys, "adjoin-center")
    assert code == 0
    assert "full_center: true" in out


def test_bigpowers(capsys, tmp_path):
    code, ext, _ = run(capsys, "extend", "--at", "a1")
    cfg = tmp_path / "ext.cfg"
    cfg.write_text(ext)
    targets = tmp_path / "targets.txt"
    targets.write_text("@t\n@t*a1^-1\n")
    code, out, _ = run(
        capsys, "bigpowers", "--targets", str(targets), "--rep", str(cfg), "--at", "a1"
    )
    assert code == 0
    assert "n=2" in out


def test_discriminate(capsys, tmp_path):
    targets = tmp_path / "nil.txt"
    targets.write_text("a3*a1^-1\n[a2,a1]\n")
    code, out, _ = run(capsys, "discriminate", "--targets", str(targets))
    assert code == 0
    assert "a3 ->" in out


def test_discriminate_identity_target(capsys, tmp_path):
    targets = tmp_path / "nil.txt"
    targets.write_text("a1*a1^-1\n")
    code, _, err = run(capsys, "discriminate", "--targets", str(targets))
    assert code == 3


def test_appropriate(capsys):
    code, out, _ = run(capsys, "appropriate", "--example", "ztheta-lame", "--degree", "1")
    assert code == 0
    assert "confirmed" in out


# ---------------------------------------------------------------------------
# parse, config errors, bounds


def test_parse_canonicalizes(capsys):
    code, out, _ = run(capsys, "parse", "forall   x,z ( [z,a1]=1 & [a2,z]=1 -> [z,x]=1 )")
    assert code == 0
    assert "forall x,z" in out
    assert "class: quasi_identity" in out


def test_parse_file(capsys, tmp_path):
    f = tmp_path / "f.fol"
    f.write_text("exists y ( [a2,y]=1 )\n")
    code, out, _ = run(capsys, "parse", str(f))
    assert code == 0
    assert "class: primitive" in out


def test_config_error_is_exit_3(capsys, tmp_path):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("ring: Q\n")
    code, _, err = run(capsys, "lame", "--rep", str(cfg))
    assert code == 3


def test_missing_rep_file_is_exit_3(capsys):
    code, _, err = run(capsys, "lame", "--rep", "/nonexistent/x.cfg")
    assert code == 3


def test_max_bound_env(capsys, monkeypatch):
    monkeypatch.setenv("HEISLAB_MAX_BOUND", "1")
    # requested bound 4 is capped at 1
    code, out, _ = run(capsys, "refute", "forall x ( x=x )", "--bound", "4")
    assert code == 2
    assert "bound=1" in out
    monkeypatch.setenv("HEISLAB_MAX_BOUND", "junk")
    code, _, err = run(capsys, "refute", "forall x ( x=x )")
    assert code == 3


def test_deterministic_output(capsys):
    code1, out1, _ = run(capsys, "example", "zxz-lame")
    code2, out2, _ = run(capsys, "example", "zxz-lame")
    assert (code1, out1) == (code2, out2)


def test_json_roundtrip_all_checks(capsys):
    for args in (
        ["lame", "--example", "zxz-lame", "--json"],
        ["tau", "--example", "tau-fails-zxz", "--json"],
        ["nzct", "--json"],
        ["example", "heisenberg", "--json"],
        ["crank", "--json"],
    ):
        code, out, _ = run(capsys, *args)
        json.loads(out)  # must be valid JSON


def test_fixture_configs_parse():
    from heislab import reprs

    for name, text in FIXTURES.items():
        rep = reprs.parse_config(text)
        assert [n for n, _ in rep.generators][:2] == ["a1", "a2"]
