"""End-to-end acceptance checks, one test per criterion."""

from fractions import Fraction

from permcat.cli import run
from permcat.combinatorics import CosetMatrix, ObjectLabel, parse_matrix, parse_object
from permcat.exact import IVPoly, binomial_poly
from permcat.hsmod import hs_scalar
from permcat.kron import XObject, krull_schmidt_report, stability_check
from permcat.schur import Morphism, compose_interpolated
from permcat import suites


def test_criterion_1_worked_example(criterion):
    with criterion(1, "worked example", limit=1.0):
        xi = lambda t: Morphism.basis(parse_matrix(t, 2))  # noqa: E731
        L1, L2 = IVPoly.var(2, 1), IVPoly.var(2, 2)
        ident, s = xi("L1,0;0,L2"), xi("L1-1,1;1,L2-1")
        fe = compose_interpolated(xi("L1,0;1,L2-1"), xi("L1,1;0,L2-1"))
        ef = compose_interpolated(xi("L1-1,1;0,L2"), xi("L1-1,0;1,L2"))
        assert fe == ident.scaled(L2) + s
        assert ef == ident.scaled(L1) + s
        assert ef - fe == ident.scaled(L1 - L2)


def test_criterion_2_oracle_equivalence(criterion):
    with criterion(2, "oracle equivalence d=3,4,5", limit=120):
        res = suites.oracle_equivalence((3, 4, 5))
        assert res.checked > 0 and res.ok, res.failures[:5]


def test_criterion_3_presentation_relations(criterion):
    with criterion(3, "Chevalley and Serre relations, 50 seeded objects", limit=60):
        res = suites.chevalley_serre(samples=50, seed=0, max_index=4)
        assert res.checked == 50 * (16 + 12) and res.ok, res.failures[:5]


def test_criterion_4_hs_golden(criterion):
    with criterion(4, "highest-weight scalars m=0..6"):
        L2 = IVPoly.var(2, 2)
        for m in range(7):
            q = CosetMatrix(2, (-m, -m), ((0, m), (m, 0)))
            assert hs_scalar(q) == binomial_poly(L2, m) * (-1) ** m


def test_criterion_5_generating_identity(criterion):
    with criterion(5, "generating identity to bidegree (4,4)", limit=30):
        res = suites.genfun(4)
        assert res.checked == 25 and res.ok, res.failures


def test_criterion_6_deligne_suite(criterion):
    with criterion(6, "partition diagram suite", limit=120):
        res = suites.deligne_suite(max_size=3, max_d=4)
        assert res.ok, res.failures[:5]


STABILITY_CASES = [
    (mu0, x) for mu0 in ((1,), (2,), (1, 1), (2, 1)) for x in ("unit", "perm:|L|-1,1")
]


def test_criterion_7_stability(criterion):
    with criterion(7, "stability against interpolated dimensions", limit=300):
        mismatches = []
        for mu0, x in STABILITY_CASES:
            rep = stability_check(mu0, XObject.parse(x), seed=1)
            assert len(rep.rows) == 16 // sum(mu0)
            if not rep.agrees:
                seq = [r[2] for r in rep.rows]
                mismatches.append(f"mu0={mu0} X={x}: sequence {seq}, interpolated {rep.interpolated}")
        assert not mismatches, "; ".join(mismatches)


def test_criterion_8_krull_schmidt(criterion):
    with criterion(8, "Krull-Schmidt report at (7,4)", limit=30):
        rep = krull_schmidt_report(7, 4, samples=20)
        rel = rep["relations"]
        assert rel["E32E23"]["value"] == 5 and rel["E31E13"]["value"] == 8
        assert rep["model_relations_hold"] and rep["idempotents_verified"]
        assert rep["lines_invariant"]
        assert rep["line_signatures"]["e1"] == (Fraction(0), Fraction(1))
        assert rep["distinct_signatures"] >= 2
        assert rep["confirmed_normalisation"] == {"E32E23": "L2 + 1", "E31E13": "L1 + 1"}
        assert "labels" in rep["reading"]
        assert rep["krull_schmidt_fails"]


VERIFY_RUNS = [
    ["verify", "chevalley", "--samples", "20", "--seed", "3"],
    ["verify", "serre", "--samples", "20", "--seed", "3"],
    ["verify", "genfun"],
    ["verify", "oracle", "--degrees", "3,4"],
    ["verify", "ideal", "--samples", "20", "--seed", "3"],
    ["verify", "hs", "--samples", "20", "--seed", "3"],
    ["verify", "deligne"],
]


def test_criterion_9_determinism(criterion, capsys):
    with criterion(9, "seeded verify output is byte-identical", limit=300):
        for argv in VERIFY_RUNS:
            outs = []
            for _ in range(2):
                code = run(argv)
                assert code == 0, argv
                outs.append(capsys.readouterr().out.encode())
            assert outs[0] == outs[1], argv
