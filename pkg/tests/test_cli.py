"""Command line interface: outputs, formats, exit codes, file IO."""

import json

import pytest

from ihkl.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_ih_text(capsys):
    code, out, _ = run(capsys, "ih", "--example", "pinched-cylinder",
                       "--perversity", "zero")
    assert code == 0
    assert out.strip() == "0:0 1:0 2:2"


def test_ih_compact_json(capsys):
    code, out, _ = run(capsys, "ih", "--example", "pinched-cylinder",
                       "--perversity", "zero", "--supports", "compact",
                       "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert data["dims"] == {"0": 2, "1": 0, "2": 0}
    assert data["supports"] == "compact"


def test_ih_unknown_example_is_usage_error(capsys):
    code, _, err = run(capsys, "ih", "--example", "nope")
    assert code == 2
    assert "unknown example" in err


def test_ih_custom_perversity(capsys):
    code, out, _ = run(capsys, "ih", "--example", "cone-torus",
                       "--perversity", "custom:0,1")
    assert code == 0
    assert out.strip() == "0:0 1:0 2:2 3:1"


def test_stalks(capsys):
    code, out, _ = run(capsys, "stalks", "--example", "cone-torus",
                       "--vertex", "apex", "--perversity", "top")
    assert code == 0
    assert out.strip() == "-3:1 -2:2"


def test_duality(capsys):
    code, out, _ = run(capsys, "duality", "--example", "pinched-cylinder",
                       "--p", "zero", "--q", "zero")
    assert code == 0
    assert "PASS" in out.splitlines()[0]


def test_duality_non_complementary_fails(capsys):
    code, _, err = run(capsys, "duality", "--example", "cone-torus",
                       "--p", "zero", "--q", "zero")
    assert code == 1


def test_validate(capsys):
    code, out, _ = run(capsys, "validate", "--example", "cone-torus")
    assert code == 0
    assert "pseudomanifold   pass" in out


def test_normalize_round_trip(tmp_path, capsys):
    target = tmp_path / "norm.json"
    code, _, _ = run(capsys, "normalize", "--example", "pinched-cylinder",
                     "--output", str(target))
    assert code == 0
    code, out, _ = run(capsys, "ih", "--input", str(target),
                       "--perversity", "zero")
    assert code == 0
    assert out.strip() == "0:0 1:0 2:2"


def test_example_export_round_trip(tmp_path, capsys):
    target = tmp_path / "pc.json"
    code, _, _ = run(capsys, "example-export", "--name", "pinched-cylinder",
                     "--output", str(target))
    assert code == 0
    data = json.loads(target.read_text())
    assert data["dimension"] == 2
    code, out, _ = run(capsys, "ih", "--input", str(target),
                       "--perversity", "top", "--supports", "compact")
    assert code == 0
    assert out.strip() == "0:2 1:0 2:0"


def test_examples_listing(capsys):
    code, out, _ = run(capsys, "examples")
    assert code == 0
    names = out.split()
    assert "pinched-cylinder" in names and "cone-torus" in names
    assert len(names) == 13


def test_kl_element(capsys):
    code, out, _ = run(capsys, "kl", "--rank", "4", "--element", "3412")
    assert code == 0
    assert "P[1324,3412] = 1+q" in out
    assert "P[3412,3412] = 1" in out
    assert "C' = v^-4*T:3412" in out


def test_kl_interval_csv(capsys):
    code, out, _ = run(capsys, "kl", "--rank", "3", "--interval", "123,321",
                       "--format", "csv")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "u,w,P"
    assert len(lines) == 20  # 19 comparable pairs plus header
    assert all(line.endswith(",1") for line in lines[1:])


def test_kl_algorithms_agree(capsys):
    outputs = []
    for alg in ("bs", "recursion"):
        code, out, _ = run(capsys, "kl", "--rank", "3", "--element", "321",
                           "--algorithm", alg)
        assert code == 0
        outputs.append(out)
    assert outputs[0] == outputs[1]


def test_kl_bad_element_is_usage_error(capsys):
    code, _, err = run(capsys, "kl", "--rank", "3", "--element", "999")
    assert code == 2


def test_bruhat(capsys):
    code, out, _ = run(capsys, "bruhat", "--rank", "3", "--leq", "312,321")
    assert code == 0 and out.strip() == "true"
    code, out, _ = run(capsys, "bruhat", "--rank", "3", "--leq", "321,312")
    assert code == 0 and out.strip() == "false"


def test_hecke_mul(capsys):
    code, out, _ = run(capsys, "hecke-mul", "--rank", "3",
                       "--left", "T:213", "--right", "T:213")
    assert code == 0
    assert out.strip() == "(-1+v^2)*T:213 + v^2*T:123"


def test_flagcheck(capsys):
    code, out, _ = run(capsys, "flagcheck", "--n", "3", "--q", "2")
    assert code == 0
    assert "36/36 pairs match" in out


def test_flagcheck_non_prime_is_usage_error(capsys):
    code, _, err = run(capsys, "flagcheck", "--n", "3", "--q", "4")
    assert code == 2
    assert "not prime" in err


def test_missing_input_file(capsys):
    code, _, err = run(capsys, "ih", "--input", "/no/such/file.json")
    assert code == 2


def test_shipped_data_matches_expected_tables(capsys):
    from importlib import resources

    from ihkl import builders
    from ihkl.complexes import complex_from_dict, homology_dims

    root = resources.files("ihkl") / "data"
    for name in builders.BUILDERS:
        s = complex_from_dict(json.loads((root / (name + ".json")).read_text()))
        expected = json.loads((root / (name + ".expected.json")).read_text())
        for sup in ("borel_moore", "compact"):
            got = {str(k): v for k, v in homology_dims(s, sup).items()}
            assert got == expected["homology"][sup], (name, sup)
