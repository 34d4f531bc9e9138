"""Config parsing, scenario assembly, and the CSV contract of the CLI."""

import hashlib
import math

import pytest

from magnomech import cli
from magnomech.cli import ConfigError

TWO_PI = 2.0 * math.pi


def write_config(tmp_path, text, name="run.cfg"):
    path = tmp_path / name
    path.write_text(text, encoding="utf-8")
    return str(path)


def read_csv(path):
    """Split an output file into (manifest lines, header, data rows)."""
    raw = path.read_bytes()
    assert raw.endswith(b"\n")
    assert b"\r" not in raw
    lines = raw.decode("utf-8").splitlines()
    meta = [ln for ln in lines if ln.startswith("#")]
    body = [ln for ln in lines if not ln.startswith("#")]
    return meta, body[0], body[1:]


class TestReadConfig:
    def test_parses_values_with_units(self, tmp_path):
        path = write_config(tmp_path, """
            # a comment
            ; another comment
            [fiber]
            fiber_length_km = 2.5
            magnon_freq_over_2pi_hz = 7.0e9
            truncation = "14"
            include_loss_in_entanglement = yes
            qle_coupling_ratios = 0.01, 0.05
        """)
        values, digest = cli.read_config(path)
        assert values["fiber_length_km"] == 2.5
        assert values["magnon_freq_over_2pi_hz"] == pytest.approx(TWO_PI * 7.0e9)
        assert values["truncation"] == 14
        assert values["include_loss_in_entanglement"] is True
        assert values["qle_coupling_ratios"] == (0.01, 0.05)
        assert digest == hashlib.sha256((tmp_path / "run.cfg").read_bytes()
                                        ).hexdigest()

    def test_no_path_gives_empty(self):
        assert cli.read_config(None) == ({}, None)

    def test_unknown_key_names_the_line(self, tmp_path):
        path = write_config(tmp_path, "fiber_length_km = 1\nbogus_key = 3\n")
        with pytest.raises(ConfigError, match=r":2: unknown key 'bogus_key'"):
            cli.read_config(path)

    def test_duplicate_key_rejected(self, tmp_path):
        path = write_config(tmp_path, "truncation = 10\ntruncation = 12\n")
        with pytest.raises(ConfigError, match="duplicate key"):
            cli.read_config(path)

    def test_missing_equals_rejected(self, tmp_path):
        path = write_config(tmp_path, "truncation 12\n")
        with pytest.raises(ConfigError, match="expected key = value"):
            cli.read_config(path)

    def test_bad_value_rejected(self, tmp_path):
        path = write_config(tmp_path, "truncation = twelve\n")
        with pytest.raises(ConfigError, match="bad value for 'truncation'"):
            cli.read_config(path)

    def test_unreadable_file(self, tmp_path):
        with pytest.raises(ConfigError, match="cannot read config"):
            cli.read_config(str(tmp_path / "missing.cfg"))


class TestParseStateToken:
    def test_fock(self):
        state = cli.parse_state_token(" fock:2 ")
        assert state.label == "fock:2"
        assert state.min_dim == 3

    def test_balanced_superposition(self):
        assert cli.parse_state_token("superposition").label == "superposition"

    def test_explicit_superposition_is_renormalized(self):
        state = cli.parse_state_token("superposition:0.6:0.8")
        assert state.label == "superposition:0.6:0.8"
        assert abs(state.ket[0]) == pytest.approx(0.6)
        assert float(abs(state.ket[0]) ** 2 + abs(state.ket[1]) ** 2) == \
            pytest.approx(1.0, abs=1e-15)

    @pytest.mark.parametrize("token", [
        "fock:-1", "fock:two", "superposition:1.0",
        "superposition:a:b", "thermal:0.5", "",
    ])
    def test_malformed_tokens(self, token):
        with pytest.raises(ConfigError):
            cli.parse_state_token(token)

    def test_unnormalized_amplitudes_rejected(self):
        with pytest.raises(ConfigError, match="not normalized"):
            cli.parse_state_token("superposition:0.6:0.9")


class TestBuildScenario:
    def test_defaults(self):
        sc = cli.build_scenario({})
        assert sc.truncation == 12
        assert sc.magnon_pulse.duration == 40e-9
        assert sc.fiber.length_km == 1.0
        assert [s.label for s in sc.initial_states] == ["fock:1"]

    def test_entangling_defaults(self):
        sc = cli.build_scenario({}, entangling=True)
        assert sc.truncation == 30
        assert sc.magnon_pulse.duration == 30e-9

    def test_truncation_argument_beats_config(self):
        sc = cli.build_scenario({"truncation": 20}, truncation=16)
        assert sc.truncation == 16

    def test_config_overrides_flow_through(self):
        cfg, _ = cli.read_config(None)
        cfg = {"mech_pulse_duration_s": 80e-9,
               "fiber_length_km": 10.0,
               "initial_states": "fock:0, superposition"}
        sc = cli.build_scenario(cfg)
        assert sc.mech_pulse.duration == 80e-9
        assert sc.fiber.length_km == 10.0
        assert [s.label for s in sc.initial_states] == \
            ["fock:0", "superposition"]

    def test_scenario_errors_become_config_errors(self):
        with pytest.raises(ConfigError, match="truncation"):
            cli.build_scenario({"truncation": 1})


class TestTransferCommand:
    def test_default_run(self, tmp_path):
        out = tmp_path / "t.csv"
        assert cli.main(["transfer", "--out", str(out)]) == 0
        meta, header, rows = read_csv(out)
        assert meta[0] == "# tool: magnomech 0.1.0"
        assert meta[1] == "# command: transfer"
        assert meta[2] == "# config: -"
        assert meta[3] == "# config_sha256: -"
        assert meta[4] == f"# output: {out}"
        assert header == "state,S,W,T,F_engine,F_closed,abs_diff"
        assert len(rows) == 1
        cells = rows[0].split(",")
        assert cells[0] == "fock:1"
        assert float(cells[4]) == pytest.approx(0.161752752409, rel=1e-9)
        assert float(cells[6]) < 1e-12

    def test_config_and_multiple_states(self, tmp_path):
        path = write_config(tmp_path, """
            fiber_length_km = 10.0
            initial_states = fock:1, superposition
        """)
        out = tmp_path / "t.csv"
        assert cli.main(["transfer", path, "--out", str(out)]) == 0
        meta, _, rows = read_csv(out)
        assert meta[2] == f"# config: {path}"
        digest = hashlib.sha256(open(path, "rb").read()).hexdigest()
        assert meta[3] == f"# config_sha256: {digest}"
        assert [r.split(",")[0] for r in rows] == ["fock:1", "superposition"]
        t = float(rows[0].split(",")[3])
        assert t == pytest.approx(0.630957344480, rel=1e-9)

    def test_zero_length_fiber_is_transparent(self, tmp_path):
        path = write_config(tmp_path, "fiber_length_km = 0\n")
        out = tmp_path / "t.csv"
        assert cli.main(["transfer", path, "--out", str(out)]) == 0
        _, _, rows = read_csv(out)
        assert float(rows[0].split(",")[3]) == 1.0

    def test_stdout_payload(self, capsysbinary):
        assert cli.main(["transfer"]) == 0
        data = capsysbinary.readouterr().out
        assert data.startswith(b"# tool: magnomech")
        assert b"state,S,W,T,F_engine,F_closed,abs_diff\n" in data

    def test_determinism(self, tmp_path):
        out = tmp_path / "t.csv"
        assert cli.main(["transfer", "--out", str(out)]) == 0
        first = out.read_bytes()
        assert cli.main(["transfer", "--out", str(out)]) == 0
        assert out.read_bytes() == first


class TestEntangleCommand:
    def test_default_row(self, tmp_path):
        out = tmp_path / "e.csv"
        assert cli.main(["entangle", "--out", str(out)]) == 0
        _, header, rows = read_csv(out)
        assert header == "r,W,EN_closed,EN_fock,truncation,leak"
        cells = rows[0].split(",")
        assert float(cells[0]) == pytest.approx(0.393222919812, rel=1e-9)
        assert float(cells[1]) == pytest.approx(0.929930712628, rel=1e-9)
        assert float(cells[2]) == pytest.approx(0.755586787984, rel=1e-9)
        assert float(cells[3]) == pytest.approx(float(cells[2]), abs=1e-9)
        assert cells[4] == "30"
        assert float(cells[5]) < 1e-12

    def test_loss_toggle_adds_warning(self, tmp_path):
        path = write_config(tmp_path, "include_loss_in_entanglement = true\n")
        out = tmp_path / "e.csv"
        assert cli.main(["entangle", path, "--out", str(out)]) == 0
        meta, _, rows = read_csv(out)
        assert any("# warning:" in ln and "closed form" in ln for ln in meta)
        assert float(rows[0].split(",")[3]) == pytest.approx(0.72961397578,
                                                             rel=1e-9)

    def test_truncation_leak_exit_code(self, tmp_path, capsys):
        # r = 1.2 pulse cannot fit in 8 levels per mode
        path = write_config(tmp_path, "magnon_pulse_duration_s = 236.2e-9\n")
        code = cli.main(["entangle", path, "--truncation", "8",
                         "--out", str(tmp_path / "e.csv")])
        assert code == 3
        err = capsys.readouterr().err
        assert "truncation budget exceeded" in err
        assert "raise --truncation" in err


class TestValidateCommand:
    def test_defaults_pass(self, capsys):
        assert cli.main(["validate"]) == 0
        out = capsys.readouterr().out
        assert "all 8 checks passed" in out
        assert "sideband_resolved" in out

    def test_bad_scenario_fails(self, tmp_path, capsys):
        path = write_config(tmp_path, "mech_detuning_over_2pi_hz = 4.0e9\n")
        assert cli.main(["validate", path]) == 2
        out = capsys.readouterr().out
        assert "FAIL" in out
        assert "red_detuning" in out


class TestQleCommand:
    def test_single_ratio_antistokes(self, tmp_path):
        path = write_config(tmp_path, "qle_coupling_ratios = 0.02\n")
        out = tmp_path / "q.csv"
        assert cli.main(["qle", path, "--out", str(out)]) == 0
        meta, header, rows = read_csv(out)
        assert any(ln.startswith("# note: process antistokes, pulse area ")
                   for ln in meta)
        assert header == "G_over_kappa,eta_integrated,eta_closed,rel_err"
        cells = rows[0].split(",")
        assert float(cells[0]) == 0.02
        assert float(cells[2]) == pytest.approx(0.182138220055, rel=1e-9)
        assert float(cells[3]) == pytest.approx(0.0129964157285, rel=1e-6)

    def test_stokes_process(self, tmp_path):
        path = write_config(tmp_path, """
            qle_process = stokes
            qle_coupling_ratios = 0.005
        """)
        out = tmp_path / "q.csv"
        assert cli.main(["qle", path, "--out", str(out)]) == 0
        meta, _, rows = read_csv(out)
        assert any("process stokes" in ln for ln in meta)
        cells = rows[0].split(",")
        assert float(cells[2]) == pytest.approx(0.162759951148, rel=1e-9)
        assert float(cells[3]) == pytest.approx(0.00153598897973, rel=1e-6)

    def test_unknown_process_rejected(self, tmp_path, capsys):
        path = write_config(tmp_path, "qle_process = raman\n")
        assert cli.main(["qle", path]) == 2
        assert "qle_process" in capsys.readouterr().err


class TestErrorPaths:
    def test_unknown_config_key_exit_code(self, tmp_path, capsys):
        path = write_config(tmp_path, "nonsense = 1\n")
        assert cli.main(["transfer", path]) == 2
        assert capsys.readouterr().err.startswith("error:")

    def test_version_flag(self, capsys):
        with pytest.raises(SystemExit) as exc:
            cli.main(["--version"])
        assert exc.value.code == 0
        assert capsys.readouterr().out.strip() == "magnomech 0.1.0"

    def test_subcommand_required(self):
        with pytest.raises(SystemExit) as exc:
            cli.main([])
        assert exc.value.code == 2
