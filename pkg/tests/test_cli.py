from __future__ import annotations

import pytest

import run_ktg
from src.associator.equations import phi_star
from src.strand_algebra.series import dump_series


@pytest.fixture(autouse=True)
def _no_env_cache(monkeypatch):
    monkeypatch.delenv("KTG_CACHE_DIR", raising=False)
    monkeypatch.delenv("KTG_WORKERS", raising=False)


def test_dims_machine_format(capsys):
    code = run_ktg.main(["--format", "machine", "dims", "--skeleton", "circle", "--degree", "2"])
    out = capsys.readouterr().out
    assert code == 0
    assert out.startswith("report=dims\n")
    assert "rows.count=3" in out
    assert "rows.2.dimension=2" in out


def test_enumerate_text(capsys):
    assert run_ktg.main(["enumerate", "--skeleton", "strands(2)", "--degree", "1"]) == 0
    out = capsys.readouterr().out
    assert "count: 3" in out
    assert "1:0-2:0" in out


def test_reduce_file(tmp_path, capsys):
    path = tmp_path / "element.txt"
    path.write_text("skeleton theta\n1 | 1:0-2:0\n", encoding="utf-8")
    assert run_ktg.main(["reduce", str(path)]) == 0
    assert capsys.readouterr().out.startswith("skeleton theta\n")


def test_apply_pipeline(tmp_path, capsys):
    path = tmp_path / "element.txt"
    path.write_text("skeleton theta\n1 | 2:0-3:0\n", encoding="utf-8")
    assert run_ktg.main(["apply", str(path), "--ops", "op sweep tree=1 | reduce"]) == 0
    assert capsys.readouterr().out.startswith("strands 2 maxdeg 1\n")


def test_missing_file_gives_a_tip(tmp_path, capsys):
    assert run_ktg.main(["reduce", str(tmp_path / "absent.txt")]) == 2
    err = capsys.readouterr().err
    assert "Tip:" in err


def test_bad_pipeline_is_an_input_error(tmp_path, capsys):
    path = tmp_path / "element.txt"
    path.write_text("skeleton theta\n1 | 2:0-3:0\n", encoding="utf-8")
    assert run_ktg.main(["apply", str(path), "--ops", "op twist e=1"]) == 2
    assert "Parse error" in capsys.readouterr().err


def test_version_exits_cleanly():
    with pytest.raises(SystemExit) as exc:
        run_ktg.main(["--version"])
    assert exc.value.code == 0


@pytest.mark.slow
def test_check_pentagon_on_a_dumped_series(tmp_path, capsys):
    path = tmp_path / "phi.txt"
    path.write_text(dump_series(phi_star(2)), encoding="utf-8")
    assert run_ktg.main(["--format", "machine", "check-pentagon", str(path)]) == 0
    assert "vanishes=true" in capsys.readouterr().out
