import io
import json
import subprocess
import sys

import pytest

from babyverma.cache import ENV_VAR, DiskCache
from babyverma.cli import main


def run(*argv):
    buf = io.StringIO()
    code = main(list(argv), out=buf)
    return code, buf.getvalue()


def run_json(*argv):
    code, text = run(*argv)
    return code, json.loads(text)


@pytest.fixture(autouse=True)
def no_ambient_cache(monkeypatch):
    monkeypatch.delenv(ENV_VAR, raising=False)


@pytest.mark.parametrize(
    "n, parts, poincare",
    [
        (1, [[1]], [{"0": "1"}]),
        (2, [[2], [1, 1]], [{"0": "1"}, {"0": "1"}]),
        (3, [[3], [2, 1], [1, 1, 1]], [{"0": "1"}, {"-1": "1", "0": "2", "1": "1"}, {"0": "1"}]),
    ],
)
def test_tables(n, parts, poincare):
    code, data = run_json("tables", "--n", str(n))
    assert code == 0
    assert data["partitions"] == parts
    assert data["poincare_p"] == poincare


def test_tables_formats():
    code, text = run("tables", "--n", "3", "--format", "csv")
    assert code == 0 and text.splitlines()[0] == "lambda,b,fake_degree,kostka_poly,poincare_p"
    code, text = run("tables", "--n", "3", "--format", "pretty")
    assert code == 0 and "reverse lexicographic" in text


@pytest.mark.parametrize(
    "argv",
    [
        ("tables", "--n", "5"),
        ("verify", "simmult", "--n", "4"),
        ("dihedral", "--m", "5", "decompose"),
        ("smooth", "--group", "H3"),
    ],
)
def test_json_is_byte_identical(argv):
    assert run(*argv) == run(*argv)


def test_timing_only_on_request():
    _, data = run_json("verify", "import", "--n", "4")
    assert "wall_time" not in data["reports"][0]
    _, data = run_json("verify", "import", "--n", "4", "--timing")
    assert data["reports"][0]["wall_time_s"] >= 0


def test_cache_cold_equals_warm(tmp_path, monkeypatch):
    plain = run("verify", "all", "--n", "5")
    monkeypatch.setenv(ENV_VAR, str(tmp_path))
    cold = run("verify", "all", "--n", "5")
    assert DiskCache(tmp_path).path("kmtt", 5).exists()
    assert DiskCache(tmp_path).path("chartable", 5).exists()
    warm = run("verify", "all", "--n", "5")
    assert plain == cold == warm


def test_cache_flag(tmp_path):
    code, _ = run("tables", "--n", "4", "--cache-dir", str(tmp_path / "c"))
    assert code == 0 and DiskCache(tmp_path / "c").path("chartable", 4).exists()


def test_corrupt_cache_is_ignored(tmp_path):
    cache = DiskCache(tmp_path)
    cache.root.mkdir(exist_ok=True)
    cache.path("chartable", 4).write_text("{not json")
    assert run("tables", "--n", "4", "--cache-dir", str(tmp_path)) == run("tables", "--n", "4")


def test_verify_all_ok():
    code, data = run_json("verify", "all", "--n", "5")
    assert code == 0 and data["ok"]
    assert [r["suite"] for r in data["reports"]] == ["import", "simmult", "oracles"]


def test_injected_fault_fails():
    code, data = run_json("verify", "simmult", "--n", "3", "--inject-fault")
    assert code == 1 and not data["ok"]
    assert data["reports"][0]["failures"]


@pytest.mark.parametrize(
    "argv",
    [
        ("tables", "--n", "0"),
        ("tables", "--n", "9"),
        ("tables", "--n", "7", "--max-n", "6"),
        ("dihedral", "--m", "2", "blocks"),
        ("dihedral", "--m", "13", "blocks"),
        ("dihedral", "--m", "6", "--c", "1,2,3", "blocks"),
        ("dihedral", "--m", "3", "--c", "1", "lsimple"),
        ("dihedral", "--m", "3", "--c", "1", "lsimple", "nope"),
        ("smooth", "--group", "E8"),
        ("smooth", "--file", "/nonexistent/datum.json"),
    ],
)
def test_usage_errors_exit_2(argv, capsys):
    code, _ = run(*argv)
    assert code == 2
    assert capsys.readouterr().err.startswith("babyverma: error:")


def test_argparse_errors_exit_2():
    with pytest.raises(SystemExit) as err:
        main(["dihedral", "--m", "3", "--c", "x", "blocks"])
    assert err.value.code == 2


def test_dihedral_m3_blocks_are_singletons():
    code, data = run_json("dihedral", "--m", "3", "--c", "1", "blocks")
    assert code == 0
    assert sorted(data["blocks"]) == [["phi1"], ["sgn"], ["triv"]]


def test_dihedral_generic_g2():
    code, data = run_json("dihedral", "--m", "6", "decompose")
    assert code == 0 and data["generic"]["agreed"]
    assert len(data["blocks"]) == 5
    assert data["matrix"]["phi1"]["phi1"] == {"0": "1", "4": "1"}
    assert data["matrix"]["phi1"]["phi2"] == {"1": "1", "3": "1"}


def test_dihedral_lsimple():
    code, data = run_json("dihedral", "--m", "4", "--c", "1,2", "lsimple", "phi1")
    assert code == 0 and data["dimension"] == 8


def test_smooth_h3():
    code, data = run_json("smooth", "--group", "H3")
    assert code == 0 and data["verdict"] == "singular-witness"
    entry = next(e for e in data["irreducibles"] if e["label"] == "3_s")
    assert (entry["bound"], entry["refined_bound"]) == (120, 119)


def test_ingest_check(tmp_path, capsys):
    good = {
        "name": "I2(3)",
        "order": 6,
        "degrees": [2, 3],
        "irreducibles": [
            {"label": "triv", "dim": 1, "fake_degree": {"0": "1"}},
            {"label": "sgn", "dim": 1, "fake_degree": {"3": "1"}},
            {"label": "phi1", "dim": 2, "fake_degree": {"1": "1", "2": "1"}},
        ],
    }
    path = tmp_path / "d.json"
    path.write_text(json.dumps(good))
    code, data = run_json("ingest-check", str(path))
    assert code == 0 and data["valid"]
    code, data = run_json("smooth", "--file", str(path))
    assert code == 0 and data["verdict"] == "inconclusive"
    good["degrees"] = [2, 4]
    path.write_text(json.dumps(good))
    code, _ = run("ingest-check", str(path))
    assert code == 2 and "product of degrees" in capsys.readouterr().err


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "babyverma", "smooth", "--group", "I2:5", "--format", "csv"],
        capture_output=True,
        text=True,
        check=True,
    )
    assert proc.stdout.startswith("label,dim,b,j,bound,refined_bound,verdict")
