import json
import subprocess
import sys

import numpy as np
import pytest

from deltabarrier.cli import main
from deltabarrier.config import load_preset, preset_names
from deltabarrier.io import read_table

COMMAND_FOR = {
    "fig2": "evolve",
    "fig3": "evolve",
    "fig5-real": "classify",
    "fig5-imag": "classify",
    "expand-transmitted": "expand",
    "expand-reflected": "expand",
    "expand-sine": "expand",
    "expand-imaginary": "expand",
    "oracle": "oracle",
}


def write_ini(tmp_path, text, name="case.ini"):
    path = tmp_path / name
    path.write_text(text)
    return str(path)


def test_presets_listed(capsys):
    assert main(["presets"]) == 0
    listed = capsys.readouterr().out.split()
    assert listed == preset_names()
    assert set(listed) == set(COMMAND_FOR)


@pytest.mark.parametrize("preset", sorted(COMMAND_FOR))
def test_every_preset_runs(preset, tmp_path, capsys):
    assert main([COMMAND_FOR[preset], "--preset", preset, "--out", str(tmp_path)]) == 0
    out = capsys.readouterr().out
    assert "wrote" in out
    assert any(tmp_path.iterdir())


def test_fig5_verdicts(tmp_path, capsys):
    main(["classify", "--preset", "fig5-real", "--out", str(tmp_path)])
    assert "verdict: Real" in capsys.readouterr().out
    main(["classify", "--preset", "fig5-imag", "--out", str(tmp_path)])
    assert "verdict: Imaginary" in capsys.readouterr().out


def test_output_is_deterministic(tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    for d in (a, b):
        assert main(["evolve", "--preset", "fig2", "--out", str(d)]) == 0
        assert main(["classify", "--preset", "fig5-real", "--out", str(d)]) == 0
    names = sorted(p.name for p in a.iterdir())
    assert names == sorted(p.name for p in b.iterdir())
    for name in names:
        assert (a / name).read_bytes() == (b / name).read_bytes()


def test_table_round_trip(tmp_path):
    main(["evolve", "--preset", "fig2", "--out", str(tmp_path)])
    table = read_table(tmp_path / "fig2_evolve.csv")
    cfg = load_preset("fig2")
    assert table["x"].size == cfg.grid.n_x * cfg.grid.n_t
    np.testing.assert_allclose(table["density"], table["re_psi"] ** 2 + table["im_psi"] ** 2, rtol=1e-14)
    meta = json.loads((tmp_path / "fig2_evolve.json").read_text())
    assert meta["schema"] == "deltabarrier.table"
    provenance = {c["name"]: c["provenance"] for c in meta["columns"]}
    assert provenance["density"] == "analytic" and provenance["x"] == "input"
    assert meta["config"]["barrier"]["strength"] == 3.0


def test_json_format(tmp_path):
    assert main(["evolve", "--preset", "fig2", "--out", str(tmp_path), "--format", "json"]) == 0
    assert not list(tmp_path.glob("*.csv"))
    table = read_table(tmp_path / "fig2_evolve.json")
    assert "delta_density" in table


def test_unknown_key_names_the_field(tmp_path, capsys):
    path = write_ini(tmp_path, "[barrier]\nstrenght = 3\n")
    assert main(["evolve", "--config", path, "--out", str(tmp_path)]) == 1
    assert "strenght" in capsys.readouterr().err


def test_unknown_section(tmp_path, capsys):
    path = write_ini(tmp_path, "[detector]\nx = 3\n")
    assert main(["evolve", "--config", path, "--out", str(tmp_path)]) == 1
    assert "detector" in capsys.readouterr().err


def test_bad_choice(tmp_path, capsys):
    path = write_ini(tmp_path, "[barrier]\nkind = complex\n")
    assert main(["evolve", "--config", path, "--out", str(tmp_path)]) == 1
    assert "kind" in capsys.readouterr().err


def test_usage_errors():
    with pytest.raises(SystemExit) as exc:
        main(["evolve", "--preset", "fig2", "--config", "x.ini"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["teleport"])
    assert exc.value.code == 2


def test_safety_factor_below_one_rejected(tmp_path):
    assert main(["expand", "--preset", "expand-transmitted", "--safety-factor", "0.5", "--out", str(tmp_path)]) == 1


def test_indeterminate_exit_code(tmp_path, capsys):
    path = write_ini(
        tmp_path,
        "[grid]\nt_min = 4\nt_max = 30\nn_t = 80\nt_spacing = log\n"
        "[classifier]\nsource = interferometer\nt_window_min = 4\nt_window_max = 30\n",
    )
    assert main(["classify", "--config", path, "--out", str(tmp_path)]) == 4
    assert "Indeterminate" in capsys.readouterr().out


def test_absent_barrier_evolve_has_identical_columns(tmp_path):
    path = write_ini(tmp_path, "[scenario]\nname = free\n[barrier]\nkind = absent\nstrength = 0\n")
    assert main(["evolve", "--config", path, "--out", str(tmp_path)]) == 0
    table = read_table(tmp_path / "free_evolve.csv")
    np.testing.assert_array_equal(table["re_psi"], table["re_psi_free"])
    np.testing.assert_array_equal(table["im_psi"], table["im_psi_free"])
    assert not np.any(table["delta_density"])


def test_absent_barrier_classifies_absent(tmp_path, capsys):
    path = write_ini(
        tmp_path,
        "[barrier]\nkind = absent\nstrength = 0\n[grid]\nt_min = 1e-4\nt_max = 0.3\nn_t = 100\nt_spacing = log\n"
        "[classifier]\nsource = interferometer\n",
    )
    assert main(["classify", "--config", path, "--out", str(tmp_path)]) == 0
    assert "verdict: Absent" in capsys.readouterr().out


def test_direct_source_classifies_transmitted_density(tmp_path, capsys):
    path = write_ini(
        tmp_path,
        "[barrier]\nkind = imaginary\n[grid]\nt_min = 1e-4\nt_max = 1e-2\nn_t = 60\nt_spacing = log\n"
        "[classifier]\nsource = direct\nx = 2\n",
    )
    assert main(["classify", "--config", path, "--out", str(tmp_path)]) == 0
    assert "verdict: Imaginary" in capsys.readouterr().out


def test_expand_outside_window_explains(tmp_path, capsys):
    path = write_ini(tmp_path, "[grid]\nt_min = 1e-4\nt_max = 0.5\nn_t = 10\nt_spacing = log\n[expand]\nx = 2\n")
    assert main(["expand", "--config", path, "--out", str(tmp_path)]) == 1
    err = capsys.readouterr().err
    assert "t_max" in err and "window" in err


def test_expand_reports_slopes(tmp_path, capsys):
    assert main(["expand", "--preset", "expand-transmitted", "--out", str(tmp_path)]) == 0
    out = capsys.readouterr().out
    assert "order 3: residual slope" in out
    coeffs = read_table(tmp_path / "expand-transmitted_expand_coefficients.csv")
    assert list(coeffs["power"]) == [1.0, 2.0, 3.0]


def test_module_entry_point(tmp_path):
    proc = subprocess.run(
        [sys.executable, "-m", "deltabarrier", "presets"], capture_output=True, text=True, check=True
    )
    assert "fig2" in proc.stdout
