"""CLI surface, reports, and cache: exit codes, determinism, round trips."""

import io
import json

import pytest

from torsiongen import __version__
from torsiongen.cache import cache_dir, cache_key, get as cache_get, put as cache_put
from torsiongen.cli import (
    cmd_genus,
    cmd_mcg,
    cmd_sweep,
    cmd_sympl,
    cmd_verify,
    main,
)
from torsiongen.errors import InvalidParams, RangeError
from torsiongen.report import ReportCell, SweepReport


def run(argv, env_cache=None):
    out, err = io.StringIO(), io.StringIO()
    code = main(argv, out=out, err=err)
    return code, out.getvalue(), err.getvalue()


class TestReport:
    def cell(self, status="pass"):
        return ReportCell.of({"k": 5, "n": 18}, status, {"kind": "alternating"}, 1.5)

    def test_summary_counts_match_cells(self):
        rep = SweepReport.of(
            "verify",
            {},
            [self.cell(), self.cell("fail"), self.cell("skip")],
            "0",
        )
        assert rep.summary() == {"pass": 1, "fail": 1, "expected-fail": 0, "skip": 1}
        assert not rep.ok()

    def test_canonical_json_excludes_elapsed(self):
        rep = SweepReport.of("verify", {}, [self.cell()], "0")
        assert "elapsed" not in rep.to_json()
        assert "elapsed" in rep.to_json(include_elapsed=True)

    def test_json_parses(self):
        rep = cmd_verify("prop61", 5, 18)
        data = json.loads(rep.to_json())
        assert data["command"] == "verify"
        assert data["version"] == __version__
        assert data["summary"]["pass"] == 1

    def test_csv_has_one_row_per_cell(self, tmp_path):
        rep = cmd_sweep("prop61", (3, 3), (6, 12), cache_root=tmp_path)
        lines = rep.to_csv().strip().splitlines()
        assert len(lines) == 1 + len(rep.cells)


class TestCache:
    def test_key_depends_on_version_and_params(self):
        k1 = cache_key("1", "verify", {"k": 3})
        assert k1 != cache_key("2", "verify", {"k": 3})
        assert k1 != cache_key("1", "verify", {"k": 4})
        assert k1 == cache_key("1", "verify", {"k": 3})

    def test_round_trip(self, tmp_path):
        key = cache_key("1", "c", {"x": 1})
        assert cache_get(tmp_path, key) is None
        cache_put(tmp_path, key, {"status": "pass"})
        assert cache_get(tmp_path, key) == {"status": "pass"}

    def test_env_var_override(self, tmp_path, monkeypatch):
        monkeypatch.setenv("TORSIONGEN_CACHE", str(tmp_path / "envcache"))
        assert cache_dir() == tmp_path / "envcache"
        assert cache_dir(tmp_path / "explicit") == tmp_path / "explicit"

    def test_sweep_uses_cache(self, tmp_path):
        rep1 = cmd_sweep("prop61", (3, 3), (6, 10), cache_root=tmp_path)
        rep2 = cmd_sweep("prop61", (3, 3), (6, 10), cache_root=tmp_path)
        assert rep1.to_json() == rep2.to_json()
        assert any(tmp_path.rglob("*.json"))


class TestVerify:
    def test_prop61_pass(self):
        rep = cmd_verify("prop61", 5, 18)
        cell = rep.cells[0]
        assert cell.status == "pass"
        assert dict(cell.outcome)["kind"] == "alternating"
        assert dict(cell.outcome)["witness"] == "[a,c]"

    def test_known_exception_flagged(self):
        rep = cmd_verify("conjecture", 3, 6)
        cell = rep.cells[0]
        assert cell.status == "expected-fail"
        assert dict(cell.outcome)["known_exception"] is True
        assert rep.ok()

    def test_out_of_domain_raises(self):
        with pytest.raises(RangeError):
            cmd_verify("prop61", 5, 9)

    def test_miller_family(self):
        rep = cmd_verify("miller", 5, 7)
        assert rep.cells[0].status == "pass"
        assert dict(rep.cells[0].outcome)["kind"] == "alternating"


class TestSweep:
    def test_cells_ordered_and_complete(self, tmp_path):
        rep = cmd_sweep("conjecture", (3, 4), (3, 12), cache_root=tmp_path)
        keys = [
            (dict(c.params)["k"], dict(c.params)["n"]) for c in rep.cells
        ]
        assert keys == sorted(keys)
        assert len(keys) == len(set(keys)) == 2 * 10

    def test_empty_range(self, tmp_path):
        rep = cmd_sweep("prop61", (3, 3), (10, 9), cache_root=tmp_path)
        assert rep.cells == () and rep.ok()

    def test_known_exceptions_expected_fail(self, tmp_path):
        rep = cmd_sweep("conjecture", (3, 3), (3, 10), cache_root=tmp_path)
        by_n = {dict(c.params)["n"]: c.status for c in rep.cells}
        assert by_n[6] == by_n[7] == by_n[8] == "expected-fail"
        assert all(s == "pass" for n, s in by_n.items() if n not in (6, 7, 8))
        assert rep.ok()

    def test_case3_floor_skipped(self, tmp_path):
        rep = cmd_sweep("conjecture", (4, 4), (11, 11), cache_root=tmp_path)
        assert rep.cells[0].status == "skip"

    def test_jobs_flag_gives_same_report(self, tmp_path):
        a = cmd_sweep("prop61", (3, 3), (6, 14), cache_root=tmp_path / "a")
        b = cmd_sweep("prop61", (3, 3), (6, 14), jobs=2, cache_root=tmp_path / "b")
        assert a.to_json() == b.to_json()


class TestMcg:
    def test_worked_four(self):
        rep = cmd_mcg(5, 18, "four")
        stages = {dict(c.params)["stage"]: c.status for c in rep.cells}
        assert set(stages) == {
            "decompose",
            "build_actions",
            "lantern_hypotheses",
            "single_orbit",
            "lantern_word",
            "rotation_order",
        }
        assert all(s == "pass" for s in stages.values())

    def test_worked_three(self):
        rep = cmd_mcg(8, 21, "three")
        assert rep.ok()
        assert all(c.status == "pass" for c in rep.cells)

    def test_unrepresentable_genus(self):
        with pytest.raises(InvalidParams):
            cmd_mcg(5, 7, "four")

    def test_k7_three_uses_leading_piece(self):
        rep = cmd_mcg(7, 25, "three")
        assert rep.ok()


class TestGenusSympl:
    def test_genus_query(self):
        rep = cmd_genus(5, 16)
        out = dict(rep.cells[0].outcome)
        assert out["representable"] and out["plus_one"]
        assert out["stable_bound"] == 8

    def test_genus_unrepresentable_is_informational(self):
        rep = cmd_genus(5, 7)
        assert dict(rep.cells[0].outcome)["representable"] is False
        assert rep.ok()

    def test_sympl_rotation(self):
        rep = cmd_sympl(5, 18)
        assert dict(rep.cells[0].outcome)["order"] == 5

    def test_sympl_mod_p(self):
        rep = cmd_sympl(2, 2, p=2)
        mod = dict(rep.cells[1].outcome)
        assert mod["generates"] and mod["group_order"] == 720


class TestMainExitCodes:
    def test_pass_is_zero(self):
        code, out, _ = run(["verify", "--family", "prop61", "--k", "5", "--n", "18"])
        assert code == 0 and json.loads(out)["summary"]["pass"] == 1

    def test_domain_error_is_two(self):
        code, _, err = run(["verify", "--family", "prop61", "--k", "5", "--n", "9"])
        assert code == 2 and "error:" in err

    def test_mcg_unrepresentable_is_two(self):
        code, _, _ = run(["mcg", "--k", "5", "--g", "7", "--variant", "four"])
        assert code == 2

    def test_usage_error_is_two(self):
        with pytest.raises(SystemExit) as exc:
            main(["verify", "--family", "bogus", "--k", "3", "--n", "9"])
        assert exc.value.code == 2

    def test_estimate_deterministic_output(self):
        argv = [
            "estimate", "--k", "3", "--n", "8", "--trials", "20",
            "--sampler", "uniform_order_k", "--seed", "7",
        ]
        code1, out1, _ = run(argv)
        code2, out2, _ = run(argv)
        assert code1 == code2 == 0 and out1 == out2

    def test_sweep_csv_format(self, tmp_path):
        code, out, _ = run([
            "sweep", "--family", "prop61", "--k", "3", "--n", "6",
            "--n-max", "10", "--format", "csv", "--cache-dir", str(tmp_path),
        ])
        assert code == 0
        assert out.splitlines()[0].startswith("family,k,n,status")

    def test_byte_identical_reports(self, tmp_path):
        argv = [
            "mcg", "--k", "5", "--g", "18", "--variant", "four",
        ]
        _, out1, _ = run(argv)
        _, out2, _ = run(argv)
        assert out1 == out2
