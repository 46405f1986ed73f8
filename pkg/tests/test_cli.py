import json

import pytest

from bsbimod import cli
from bsbimod.coxeter import Reflection, ReflExpr
from bsbimod.polyring import Polynomial
from bsbimod.locmod import res_tensor


EX2 = "(1,3)(2,4)(1,2)(3,4)(1,4)(2,3)"


def run(capsys, args):
    rc = cli.main(args)
    return rc, capsys.readouterr().out


@pytest.fixture
def fn_file(tmp_path):
    t = ReflExpr(3, (Reflection(1, 2, 3), Reflection(2, 3, 3)))
    a = [Polynomial.var(3, 1), Polynomial.var(3, 2), Polynomial.one(3)]
    g = res_tensor(t, a)
    path = tmp_path / "fn.json"
    path.write_text(json.dumps(g.to_json()))
    return str(path)


class TestEnumerate:
    def test_identity_target(self, capsys):
        rc, out = run(capsys, ["enumerate", "--expr", "(1,2)(2,3)",
                               "--target", "id"])
        assert rc == 0 and out.strip() == "00"

    def test_all_targets(self, capsys):
        rc, out = run(capsys, ["enumerate", "--expr", "(1,2)(2,3)"])
        assert rc == 0
        assert out.split() == ["00", "01", "10", "11"]

    def test_deterministic(self, capsys):
        rc1, out1 = run(capsys, ["enumerate", "--expr", EX2,
                                 "--target", "id"])
        rc2, out2 = run(capsys, ["enumerate", "--expr", EX2,
                                 "--target", "id"])
        assert rc1 == rc2 == 0 and out1 == out2

    def test_missing_expr_is_usage_error(self, capsys):
        with pytest.raises(SystemExit) as ei:
            cli.main(["enumerate"])
        assert ei.value.code == 2


class TestGraph:
    def test_json_output(self, capsys, tmp_path):
        out_path = tmp_path / "g.json"
        rc, _ = run(capsys, ["graph", "--expr", EX2, "--target", "id",
                             "--json", str(out_path)])
        assert rc == 0
        obj = json.loads(out_path.read_text())
        assert len(obj["vertices"]) == 2
        assert obj["edges"] == []


class TestMembershipExpress:
    def test_membership_Xt(self, capsys, fn_file):
        rc, out = run(capsys, ["membership", "--fn", fn_file,
                               "--variant", "X(t)"])
        assert rc == 0 and "member" in out

    def test_express(self, capsys, fn_file, tmp_path):
        out_path = tmp_path / "coeffs.json"
        rc, _ = run(capsys, ["express", "--fn", fn_file,
                             "--json", str(out_path)])
        assert rc == 0
        obj = json.loads(out_path.read_text())
        assert set(obj.keys()) == {"DD", "DN", "ND", "NN"}

    def test_missing_file(self, capsys):
        rc, _ = run(capsys, ["membership", "--fn", "/nonexistent.json"])
        assert rc == 1


class TestBasis:
    def test_prints_all_labels(self, capsys):
        rc, out = run(capsys, ["basis", "--expr", "(1,2)(2,3)"])
        assert rc == 0
        for label in ("DD", "DN", "ND", "NN"):
            assert label in out


class TestAlgorithms:
    def test_algo1_premature_exits_1(self, capsys):
        rc, out = run(capsys, ["algo1", "--expr", EX2, "--target", "id"])
        assert rc == 1 and "premature" in out

    def test_algo2_completes(self, capsys):
        rc, out = run(capsys, ["algo2", "--expr", EX2, "--target", "id"])
        assert rc == 0 and "completed" in out and "P = 2" in out

    def test_balanced(self, capsys):
        rc, out = run(capsys, ["balanced", "--expr", "(1,2)(1,2)",
                               "--target", "id"])
        assert rc == 0 and "P = 1 + v^-2" in out

    def test_acyclic(self, capsys):
        rc, out = run(capsys, ["acyclic", "--expr", EX2, "--target", "id"])
        assert rc == 0 and "2" in out


class TestSt:
    def test_pd_from_count(self, capsys):
        rc, out = run(capsys, ["st", "pd", "--nroots", "3"])
        assert rc == 0 and "pd = 1" in out

    def test_resolve_with_roots_and_dual(self, capsys):
        rc, out = run(capsys, ["st", "resolve",
                               "--roots", "e1-e2,e2-e3,e3-e4", "--dual"])
        assert rc == 0

    def test_independence_failure(self, capsys):
        rc, _ = run(capsys, ["st", "pd", "--roots", "e1-e2,e1-e2"])
        assert rc == 1


class TestDseq:
    def test_report(self, capsys, tmp_path):
        out_path = tmp_path / "d.json"
        rc, out = run(capsys, ["dseq", "report", "--n", "3",
                               "--json", str(out_path)])
        assert rc == 0
        obj = json.loads(out_path.read_text())
        assert obj["structure_checks"]["ok"]
        assert obj["outcome"] == "completed"

    def test_dot_output(self, capsys, tmp_path):
        out_path = tmp_path / "d.dot"
        rc, _ = run(capsys, ["dseq", "report", "--n", "3",
                             "--dot", str(out_path)])
        assert rc == 0
        assert out_path.read_text().startswith("graph")


class TestSelfcheck:
    def test_two_solution(self, capsys):
        rc, out = run(capsys, ["selfcheck", "--two-solution"])
        assert rc == 0 and "all checks passed" in out


class TestUsage:
    def test_unknown_command(self):
        with pytest.raises(SystemExit) as ei:
            cli.main(["frobnicate"])
        assert ei.value.code == 2
