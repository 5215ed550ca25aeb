import json

import pytest

from permcat.cli import run
from permcat.combinatorics import parse_matrix
from permcat.schur import Morphism
from permcat.serialize import dump_morphism, load_morphism


@pytest.fixture
def files(tmp_path):
    def write(name, text, l=2):
        p = tmp_path / name
        p.write_text(dump_morphism(Morphism.basis(parse_matrix(text, l))))
        return str(p)

    return write


def test_compose_writes_the_product(files, tmp_path):
    e, f = files("e.json", "L1,1;0,L2-1"), files("f.json", "L1,0;1,L2-1")
    out = tmp_path / "fe.json"
    assert run(["compose", "-f", f, "-g", e, "-o", str(out)]) == 0
    prod = load_morphism(out.read_text())
    assert sorted(str(c) for _, c in prod.sorted_terms()) == ["1", "L2"]


def test_specialize_drops_negative_terms(files, capsys):
    a = files("a.json", "L1-1,1;1,L2-1")
    assert run(["specialize", "--mu", "1,0", "-f", a]) == 0
    assert json.loads(capsys.readouterr().out)["terms"] == []


def test_tensor(files, capsys):
    f, g = files("f.json", "L1-2,1;1,0", 1), files("g.json", "L1,0;0,L2")
    assert run(["tensor", "-f", f, "-g", g]) == 0
    assert json.loads(capsys.readouterr().out)["l"] == 2


def test_hs(capsys):
    assert run(["hs", "--alpha", "L1,L2", "--matrix", "L1-2,2;2,L2-2"]) == 0
    assert capsys.readouterr().out.strip() == "1/2*L2^2 - 1/2*L2"


def test_deligne_compose(capsys):
    code = run(["deligne", "compose", "--d1", "1,2,1' | 3,2' | 4", "--d2", "1,1' | 2,3 | 2',3' | 4'"])
    assert code == 0
    assert capsys.readouterr().out.splitlines() == ["t^1", "1,1',2' | 2,3"]


def test_verify_chevalley(capsys):
    assert run(["verify", "chevalley", "--samples", "50", "--seed", "7"]) == 0
    assert capsys.readouterr().out.splitlines()[-1] == "chevalley: PASS"


def test_verify_requires_a_seed(capsys):
    assert run(["verify", "serre", "--samples", "3"]) == 2
    assert capsys.readouterr().err.startswith("ERR:2:")


@pytest.mark.parametrize("suite", ["chevalley", "serre", "ideal", "hs"])
def test_verify_output_is_reproducible(suite, capsys):
    run(["verify", suite, "--samples", "5", "--seed", "11"])
    first = capsys.readouterr().out
    run(["verify", suite, "--samples", "5", "--seed", "11"])
    assert capsys.readouterr().out == first


def test_kron(capsys):
    assert run(["kron", "--triple", "2,1;2,1;2,1"]) == 0
    assert capsys.readouterr().out.strip() == "1"


def test_stability_csv(capsys):
    assert run(["stability", "--mu", "2,1", "--x", "perm:|L|-1,1", "--mmax", "4"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "m,group_size,dimension,stabilized_flag"
    assert lines[1:5] == ["1,3,2,0", "2,6,2,0", "3,9,2,1", "4,12,2,1"]


def test_krull(capsys):
    assert run(["krull", "--l1", "7", "--l2", "4"]) == 0
    assert "krull-schmidt fails: True" in capsys.readouterr().out


@pytest.mark.parametrize(
    "argv,code",
    [
        (["bogus"], 2),
        (["compose", "-f", "missing.json", "-g", "missing.json"], 2),
        (["krull", "--l1", "3", "--l2", "3"], 2),
        (["kron", "--triple", "2,1;3"], 2),
        (["kron", "--triple", "17;17;17"], 3),
        (["hs", "--alpha", "L1,L2", "--matrix", "L1,1;0,L2-1"], 2),
    ],
)
def test_error_codes(argv, code, capsys):
    assert run(argv) == code
    assert capsys.readouterr().err.startswith(f"ERR:{code}:")
