import json
import subprocess
import sys

import pytest

from lensball.cli import main
from lensball.sweep import (
    BOUND_ENV,
    Parity,
    SweepConfig,
    admissible_pairs,
    check_pair,
    default_bound,
    run_sweep,
    tb_sweep,
)


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


class TestEuclid:
    def test_text(self, capsys):
        code, out, _ = run(capsys, "euclid", "5", "2")
        assert code == 0
        assert out.strip() == "r=[5,2,1,0] s=[2,2] ell=0"

    def test_json(self, capsys):
        code, out, _ = run(capsys, "euclid", "8", "3", "--json")
        data = json.loads(out)
        assert data["schema"] == 1 and data["ell"] == 1 and data["r"] == [8, 3, 2, 1, 0]

    def test_not_coprime(self, capsys):
        code, _, err = run(capsys, "euclid", "4", "2")
        assert code == 2 and "not coprime" in err

    def test_normalization_hint(self, capsys):
        code, _, err = run(capsys, "euclid", "5", "3")
        assert code == 2 and "p - q > q" in err and "5 2" in err

    def test_bad_usage(self, capsys):
        code, _, _ = run(capsys, "euclid", "five")
        assert code == 2
        code, _, _ = run(capsys)
        assert code == 2


class TestAmap:
    def test_three_two(self, capsys):
        code, out, _ = run(capsys, "amap", "3", "2")
        assert code == 0 and out.strip() == "A(3,2) = (2,3) ell=0 c=-1 d=1"

    def test_five_three(self, capsys):
        _, out, _ = run(capsys, "amap", "5", "3")
        assert out.startswith("A(5,3) = (5,3)")

    def test_two_one(self, capsys):
        _, out, _ = run(capsys, "amap", "2", "1", "--json")
        assert json.loads(out)["A"] == [2, 1]

    def test_a_not_greater(self, capsys):
        _, out, _ = run(capsys, "amap", "2", "3")
        assert out.strip() == "A(2,3) = (3,2)"


class TestChains:
    def test_five_two(self, capsys):
        code, out, _ = run(capsys, "chains", "5", "2")
        assert code == 0
        assert "B-chain [-2, 2, 1, -2, 2] = -25/9" in out
        assert "A-chain [2, -2, 1, 2, -2]" in out
        assert out.count("|H1|=25") == 2 and out.count("same-preserving") == 2

    def test_seven_two_json(self, capsys):
        _, out, _ = run(capsys, "chains", "7", "2", "--json")
        data = json.loads(out)
        assert [c["h1_order"] for c in data["chains"]] == [49, 49]

    def test_degenerate(self, capsys):
        code, out, _ = run(capsys, "chains", "3", "1")
        assert code == 0 and "(m,n)=(1,2)" in out


class TestCertify:
    def test_five_two(self, capsys):
        code, out, _ = run(capsys, "certify", "5", "2")
        assert code == 0 and out.strip().endswith("PASS")

    def test_eight_three_json(self, capsys):
        code, out, _ = run(capsys, "certify", "8", "3", "--json")
        data = json.loads(out)
        assert code == 0 and data["pass"] and len(data["labels"]) == 2

    def test_csv(self, capsys):
        code, out, _ = run(capsys, "certify", "7", "3", "--csv")
        header, row = out.strip().splitlines()
        assert header.startswith("schema,p,q") and row.startswith("1,7,3")


class TestSweepCommand:
    def test_smallest(self, capsys):
        code, out, _ = run(capsys, "sweep", "--max-p", "3", "--jobs", "1")
        assert code == 0 and "checked=1 passed=1 failures=0" in out

    def test_even_parity(self, capsys):
        code, out, _ = run(capsys, "sweep", "--max-p", "50", "--parity", "even", "--json", "--jobs", "1")
        data = json.loads(out)
        pairs = admissible_pairs(50, Parity.EVEN)
        assert code == 0 and data["checked"] == len(pairs) and data["labels_checked"] == 2 * len(pairs)

    def test_bound_too_small(self, capsys):
        code, _, err = run(capsys, "sweep", "--max-p", "2")
        assert code == 2 and "max_p" in err

    def test_env_bound(self, capsys, monkeypatch):
        monkeypatch.setenv(BOUND_ENV, "12")
        assert default_bound() == 12
        _, out, _ = run(capsys, "sweep", "--jobs", "1")
        assert "max_p=12" in out

    def test_byte_identical_across_jobs(self, capsys):
        _, one, _ = run(capsys, "sweep", "--max-p", "40", "--json", "--jobs", "1")
        _, two, _ = run(capsys, "sweep", "--max-p", "40", "--json", "--jobs", "3")
        assert one == two


class TestSweepLibrary:
    def test_enumeration(self):
        assert admissible_pairs(3) == [(3, 1)]
        assert admissible_pairs(8, Parity.ODD) == [(3, 1), (5, 1), (5, 2), (7, 1), (7, 2), (7, 3)]

    def test_report_invariant(self):
        report = run_sweep(SweepConfig(max_p=30))
        assert report.checked == report.passed + len(report.failures)
        assert report.ok and "elapsed" not in report.to_dict()

    def test_config_validation(self):
        with pytest.raises(ValueError):
            SweepConfig(max_p=2)
        with pytest.raises(ValueError):
            SweepConfig(parallelism=0)

    def test_check_pair_clean(self):
        assert check_pair(13, 5) == []

    def test_tb_sweep_small(self):
        assert tb_sweep(60) == []


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "lensball", "euclid", "7", "2"], capture_output=True, text=True, check=False
    )
    assert proc.returncode == 0 and proc.stdout.strip() == "r=[7,2,1,0] s=[3,2] ell=0"
