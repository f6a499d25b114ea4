import json

import pytest

from quatorder.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_construct_text(capsys):
    code, out, err = run(capsys, "construct", "--delta", "35", "--level", "3")
    assert code == 0
    assert err == ""
    assert "delta=35 level=3 p=13 a=5" in out
    assert "basis: 1, (1+j)/2, (i+k)/2, (525j+k)/13" in out


def test_construct_json(capsys):
    code, out, _ = run(capsys, "construct", "--delta", "35", "--level", "3", "--json")
    assert code == 0
    blob = json.loads(out)
    assert blob["p"] == 13
    assert blob["a"] == 5
    assert blob["e4"] == "(525j+k)/13"
    assert blob["basis"] == ["1", "(1+j)/2", "(i+k)/2", "(525j+k)/13"]


def test_json_deterministic(capsys):
    outs = []
    for _ in range(2):
        code, out, _ = run(
            capsys, "psi", "--delta", "35", "--src", "3", "--dst", "17", "--json"
        )
        assert code == 0
        outs.append(out)
    assert outs[0] == outs[1]
    blob = json.loads(outs[0])
    assert blob["psi"]["beta"] == "8/17"


def test_split_text(capsys):
    code, out, _ = run(
        capsys, "split", "--delta", "35", "--level", "3", "--place", "11"
    )
    assert code == 0
    assert "case: unramified_nonsquare" in out
    assert "all pass" in out


def test_split_place_tokens(capsys):
    code, out, _ = run(capsys, "split", "--delta", "35", "--level", "3", "--place", "p")
    assert code == 0
    assert "case: at_p" in out
    code, out, _ = run(capsys, "split", "--delta", "35", "--level", "3", "--place", "inf")
    assert code == 0
    assert "case: archimedean" in out


def test_degeneracy_command(capsys):
    code, out, _ = run(
        capsys, "degeneracy", "--delta", "35", "--level", "3", "--q", "11", "--json"
    )
    assert code == 0
    blob = json.loads(out)
    assert blob["degeneracy"]["case"] == "nonsquare"
    assert blob["degeneracy"]["det_f"] == "11"
    assert blob["verification"]["all_pass"] is True


def test_psi_inclusion_output(capsys):
    code, out, _ = run(capsys, "psi", "--delta", "35", "--src", "9", "--dst", "3")
    assert code == 0
    assert "beta = -4" in out
    assert "inclusion formulas" in out
    assert "all pass" in out


def test_chain_command(capsys):
    code, out, _ = run(
        capsys, "chain", "--delta", "35", "--q", "19", "--depths", "6,8"
    )
    assert code == 0
    assert "case=aux" in out
    assert "aux_level=3" in out
    assert "basis: 1, -525-i" in out


def test_chain_family(capsys):
    code, out, _ = run(
        capsys,
        "chain", "--delta", "35", "--q", "3",
        "--depths", "4,6", "--family", "3,11,13,19",
    )
    assert code == 0
    assert "family.global.trivial" in out


def test_verify_small_grid(capsys):
    code, out, _ = run(
        capsys,
        "verify", "--deltas", "35", "--levels", "1,3",
        "--places", "3,11,p", "--sections", "split,degeneracy",
    )
    assert code == 0
    assert "split.coverage" in out
    assert "all pass" in out


def test_verify_injected_fault_fails(capsys):
    code, out, _ = run(
        capsys,
        "verify", "--deltas", "35", "--levels", "3", "--places", "13",
        "--sections", "split", "--inject-at-p-sign-flip",
    )
    assert code == 1
    assert "split.delta35.level3.q13.at_p.root_divisibility" in out


def test_invalid_parameters_exit_two(capsys):
    code, _, err = run(capsys, "construct", "--delta", "12")
    assert code == 2
    assert "error:" in err


def test_unsupported_case_exit_three(capsys):
    code, _, err = run(capsys, "chain", "--delta", "1", "--q", "5")
    assert code == 3
    assert "rank 3" in err

    code, _, err = run(capsys, "degeneracy", "--delta", "35", "--level", "3", "--q", "5")
    assert code == 3
    assert "discriminant" in err

    code, _, err = run(
        capsys, "psi", "--delta", "35", "--src", "3", "--dst", "17", "--w-bound", "2"
    )
    assert code == 3
    assert "no rational point" in err


def test_env_precision_too_small_exit_four(capsys, monkeypatch):
    monkeypatch.setenv("QUATORDER_PRECISION", "7")
    code, _, err = run(capsys, "degeneracy", "--delta", "35", "--level", "3", "--q", "11")
    assert code == 4
    assert "precision" in err


def test_env_precision_garbage_exit_two(capsys, monkeypatch):
    monkeypatch.setenv("QUATORDER_PRECISION", "abc")
    code, _, err = run(capsys, "split", "--delta", "35", "--level", "3", "--place", "11")
    assert code == 2
    assert "QUATORDER_PRECISION" in err


def test_precision_flag_overrides_env(capsys, monkeypatch):
    monkeypatch.setenv("QUATORDER_PRECISION", "7")
    code, _, _ = run(
        capsys,
        "degeneracy", "--delta", "35", "--level", "3", "--q", "11",
        "--precision", "20",
    )
    assert code == 0


def test_unknown_section_exit_two(capsys):
    code, _, err = run(capsys, "verify", "--sections", "nonsense")
    assert code == 2
    assert "unknown section" in err
