import pathlib
import runpy
import sys

import pytest

DEMOS = sorted((pathlib.Path(__file__).parent.parent / "demos").glob("*.py"))


@pytest.mark.parametrize("path", DEMOS, ids=lambda p: p.stem)
def test_demo_runs(path, monkeypatch, capsys):
    monkeypatch.setattr(sys, "argv", [str(path), "300"])
    runpy.run_path(str(path), run_name="__main__")
    out = capsys.readouterr().out
    assert out and "MISMATCH" not in out
