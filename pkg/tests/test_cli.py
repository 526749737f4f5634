import json

import pytest

from oammimo.cli import EXIT_CONFIG, EXIT_NUMERIC, EXIT_OK, main
from oammimo.output import read_csv


def test_fig2_writes_csv(tmp_path, capsys):
    assert main(["fig2", "--out", str(tmp_path)]) == EXIT_OK
    assert (tmp_path / "fig2.csv").exists()
    assert str(tmp_path / "fig2.csv") in capsys.readouterr().out
    table = read_csv(tmp_path / "fig2.csv")
    assert table.name == "fig2"
    assert set(table.metadata) >= {"config_hash", "seed", "version"}


def test_svg_flag(tmp_path):
    assert main(["fig3", "--out", str(tmp_path), "--svg"]) == EXIT_OK
    assert (tmp_path / "fig3.svg").read_text().count("<polyline") == 6


def test_overrides_land_in_metadata(tmp_path):
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps({"snr_db_grid": [0, 20], "fig4_sizes": [4]}))
    assert main(["fig4", "--config", str(cfg), "--out", str(tmp_path), "--seed", "5", "--draws", "20"]) == EXIT_OK
    meta = read_csv(tmp_path / "fig4.csv").metadata
    assert meta["seed"] == "5" and meta["draws"] == "20"


@pytest.mark.parametrize("payload", [{"r": -1}, {"unknown": 3}, {"M": 1}])
def test_config_errors_exit_2(tmp_path, payload, capsys):
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps(payload))
    assert main(["fig2", "--config", str(cfg), "--out", str(tmp_path)]) == EXIT_CONFIG
    assert "config error" in capsys.readouterr().err


def test_numerical_failure_exits_3(tmp_path, capsys):
    # 200 elements need Bessel orders up to 100, beyond the supported range
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps({"fig4_sizes": [200], "d": 1000.0, "snr_db_grid": [0]}))
    assert main(["fig4", "--config", str(cfg), "--out", str(tmp_path), "--draws", "2"]) == EXIT_NUMERIC
    assert "numerical failure" in capsys.readouterr().err


def test_bad_command_is_rejected():
    with pytest.raises(SystemExit) as info:
        main(["fig9"])
    assert info.value.code == 2
