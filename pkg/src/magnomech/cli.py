"""Command-line front end: reproducible CSV runs of the pipelines.

Subcommands:

* ``transfer``  magnon -> phonon state transfer, one CSV row per initial state
* ``entangle``  magnon-phonon entanglement distribution, one CSV row
* ``fig5``      E_N sweep over squeezing x conversion efficiency
* ``validate``  physical-regime checks of a scenario, human-readable table
* ``qle``       quantum-Langevin moment integration against the closed forms

Configs are flat ``key = value`` text files; frequency-like keys end in
``_over_2pi_hz`` and are multiplied by 2*pi internally.  Every CSV starts
with ``#`` manifest lines (tool version, command, config path and hash,
output path, warnings), then a header line, then data rows with 12
significant digits and LF line endings.  Identical config and version give
byte-identical output; there is deliberately no seed flag, nothing here is
stochastic.

Exit codes: 0 success, 2 config or validation error, 3 numerical truncation
budget exceeded.
"""

from __future__ import annotations

import argparse
import hashlib
import math
import sys

from . import __version__, channels, fock, propagators, protocol
from .moments import validate_adiabatic

TWO_PI = 2.0 * math.pi

FIG5_SQUEEZINGS = tuple(0.05 * i for i in range(31))   # r = 0 .. 1.5
FIG5_EFFICIENCIES = (1.0, 0.8, 0.5, 0.2)               # upper to lower curve

QLE_PROCESSES = ("antistokes", "stokes")
DEFAULT_QLE_RATIOS = (0.005, 0.02, 0.1)


class ConfigError(Exception):
    """Unreadable, malformed, or physically invalid configuration."""


def _angular(raw: str) -> float:
    return TWO_PI * float(raw)


def _boolean(raw: str) -> bool:
    low = raw.strip().lower()
    if low in ("true", "yes", "on", "1"):
        return True
    if low in ("false", "no", "off", "0"):
        return False
    raise ValueError(f"not a boolean: {raw!r}")


def _float_list(raw: str) -> tuple[float, ...]:
    return tuple(float(tok) for tok in raw.split(",") if tok.strip())


# every recognized config key with its parser; anything else is rejected
CONFIG_KEYS = {
    "te_mode_freq_over_2pi_hz": _angular,
    "tm_mode_freq_over_2pi_hz": _angular,
    "magnon_freq_over_2pi_hz": _angular,
    "te_linewidth_over_2pi_hz": _angular,
    "tm_linewidth_over_2pi_hz": _angular,
    "magnon_linewidth_over_2pi_hz": _angular,
    "cavity_freq_over_2pi_hz": _angular,
    "mech_freq_over_2pi_hz": _angular,
    "cavity_linewidth_over_2pi_hz": _angular,
    "mech_damping_over_2pi_hz": _angular,
    "mech_detuning_over_2pi_hz": _angular,
    "magnon_pulse_coupling_over_2pi_hz": _angular,
    "magnon_pulse_duration_s": float,
    "mech_pulse_coupling_over_2pi_hz": _angular,
    "mech_pulse_duration_s": float,
    "fiber_length_km": float,
    "fiber_attenuation_db_per_km": float,
    "fiber_extra_loss_db": float,
    "truncation": int,
    "initial_states": str,
    "include_loss_in_entanglement": _boolean,
    "phonon_thermal_occupation": float,
    "leak_budget": float,
    "qle_process": str,
    "qle_coupling_ratios": _float_list,
}


def read_config(path: str | None) -> tuple[dict, str | None]:
    """Parse a flat key=value file; returns (values, sha256 of the bytes)."""
    if path is None:
        return {}, None
    try:
        with open(path, "rb") as fh:
            raw = fh.read()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path!r}: {exc}") from exc
    digest = hashlib.sha256(raw).hexdigest()
    values: dict = {}
    for lineno, line in enumerate(raw.decode("utf-8").splitlines(), start=1):
        text = line.strip()
        if not text or text.startswith(("#", ";")):
            continue
        if text.startswith("[") and text.endswith("]"):
            continue  # section headers are allowed but carry no meaning
        if "=" not in text:
            raise ConfigError(f"{path}:{lineno}: expected key = value, got {text!r}")
        key, _, raw_value = text.partition("=")
        key = key.strip()
        value = raw_value.strip().strip("\"'")
        if key not in CONFIG_KEYS:
            raise ConfigError(f"{path}:{lineno}: unknown key {key!r}")
        if key in values:
            raise ConfigError(f"{path}:{lineno}: duplicate key {key!r}")
        try:
            values[key] = CONFIG_KEYS[key](value)
        except ValueError as exc:
            raise ConfigError(f"{path}:{lineno}: bad value for {key!r}: {exc}") \
                from exc
    return values, digest


def parse_state_token(token: str) -> protocol.InitialState:
    """Descriptor -> InitialState: fock:n | superposition[:c0:c1]."""
    tok = token.strip()
    if tok.startswith("fock:"):
        try:
            n = int(tok[len("fock:"):])
        except ValueError as exc:
            raise ConfigError(f"bad state token {tok!r}") from exc
        if n < 0:
            raise ConfigError(f"bad state token {tok!r}")
        return protocol.InitialState.fock(n)
    if tok == "superposition":
        return protocol.InitialState.superposition()
    if tok.startswith("superposition:"):
        parts = tok.split(":")[1:]
        if len(parts) != 2:
            raise ConfigError(f"bad state token {tok!r}: need two amplitudes")
        try:
            c0, c1 = float(parts[0]), float(parts[1])
        except ValueError as exc:
            raise ConfigError(f"bad state token {tok!r}") from exc
        norm = math.hypot(c0, c1)
        if abs(norm - 1.0) > 1e-6:
            raise ConfigError(
                f"state token {tok!r} not normalized (norm {norm:.8f})")
        return protocol.InitialState(tok, ket=[c0 / norm, c1 / norm])
    raise ConfigError(f"unknown state token {token!r}")


def _initial_states(cfg: dict) -> tuple[protocol.InitialState, ...]:
    raw = cfg.get("initial_states")
    if raw is None:
        return (protocol.InitialState.fock(1),)
    tokens = [tok for tok in raw.split(",") if tok.strip()]
    if not tokens:
        raise ConfigError("initial_states is empty")
    return tuple(parse_state_token(tok) for tok in tokens)


def build_scenario(cfg: dict, *, entangling: bool = False,
                   truncation: int | None = None) -> protocol.ScenarioConfig:
    """Scenario from config values over the reference operating point."""
    magnonic = protocol.MagnonicNodeSpec(
        te_mode_freq=cfg.get("te_mode_freq_over_2pi_hz", TWO_PI * 193.400e12),
        tm_mode_freq=cfg.get("tm_mode_freq_over_2pi_hz", TWO_PI * 193.407e12),
        magnon_freq=cfg.get("magnon_freq_over_2pi_hz", TWO_PI * 7.0e9),
        te_linewidth=cfg.get("te_linewidth_over_2pi_hz", TWO_PI * 500e6),
        tm_linewidth=cfg.get("tm_linewidth_over_2pi_hz", TWO_PI * 500e6),
        magnon_linewidth=cfg.get("magnon_linewidth_over_2pi_hz", TWO_PI * 1.0e6),
    )
    mech_freq = cfg.get("mech_freq_over_2pi_hz", TWO_PI * 5.3e9)
    mechanical = protocol.MechanicalNodeSpec(
        cavity_freq=cfg.get("cavity_freq_over_2pi_hz", TWO_PI * 193.407e12),
        mech_freq=mech_freq,
        cavity_linewidth=cfg.get("cavity_linewidth_over_2pi_hz", TWO_PI * 1.3e9),
        mech_damping=cfg.get("mech_damping_over_2pi_hz", TWO_PI * 4.8e3),
        drive_detuning=cfg.get("mech_detuning_over_2pi_hz", mech_freq),
    )
    default_duration = 30e-9 if entangling else 40e-9
    magnon_pulse = propagators.PulseSpec(
        coupling=cfg.get("magnon_pulse_coupling_over_2pi_hz", TWO_PI * 10e6),
        cavity_linewidth=magnonic.tm_linewidth,
        duration=cfg.get("magnon_pulse_duration_s", default_duration),
    )
    mech_pulse = propagators.PulseSpec(
        coupling=cfg.get("mech_pulse_coupling_over_2pi_hz", TWO_PI * 50e6),
        cavity_linewidth=mechanical.cavity_linewidth,
        duration=cfg.get("mech_pulse_duration_s", 55e-9),
    )
    fiber = channels.FiberSpec(
        length_km=cfg.get("fiber_length_km", 1.0),
        attenuation_db_per_km=cfg.get("fiber_attenuation_db_per_km", 0.2),
        extra_loss_db=cfg.get("fiber_extra_loss_db", 0.0),
    )
    if truncation is None:
        truncation = cfg.get(
            "truncation",
            protocol.DEFAULT_SQUEEZE_TRUNCATION if entangling
            else protocol.DEFAULT_TRANSFER_TRUNCATION)
    try:
        return protocol.ScenarioConfig(
            magnonic=magnonic,
            mechanical=mechanical,
            magnon_pulse=magnon_pulse,
            mech_pulse=mech_pulse,
            fiber=fiber,
            truncation=truncation,
            initial_states=_initial_states(cfg),
            include_loss_in_entanglement=cfg.get("include_loss_in_entanglement",
                                                 False),
            phonon_thermal_occupation=cfg.get("phonon_thermal_occupation", 0.0),
            leak_budget=cfg.get("leak_budget"),
        )
    except protocol.ScenarioError as exc:
        raise ConfigError(str(exc)) from exc


def _fmt(x) -> str:
    return "%.12g" % float(x)


def _manifest(command: str, config_path: str | None, config_hash: str | None,
              out_path: str | None, warnings=()) -> list[str]:
    lines = [
        f"# tool: magnomech {__version__}",
        f"# command: {command}",
        f"# config: {config_path if config_path else '-'}",
        f"# config_sha256: {config_hash if config_hash else '-'}",
        f"# output: {out_path if out_path else '-'}",
    ]
    lines.extend(f"# warning: {w}" for w in warnings)
    return lines


def _emit(lines: list[str], out_path: str | None) -> None:
    data = ("\n".join(lines) + "\n").encode("utf-8")
    if out_path:
        with open(out_path, "wb") as fh:  # binary keeps LF endings everywhere
            fh.write(data)
    else:
        sys.stdout.buffer.write(data)
        sys.stdout.buffer.flush()


def cmd_transfer(args) -> int:
    cfg, digest = read_config(args.config)
    scenario = build_scenario(cfg, truncation=args.truncation)
    warnings: tuple[str, ...] = ()
    rows = []
    for state in scenario.initial_states:
        report = protocol.run_transfer(scenario, state)
        warnings = report.warnings
        rows.append(",".join([
            state.label,
            _fmt(report.swap_in.efficiency),
            _fmt(report.swap_out.efficiency),
            _fmt(report.transmittance),
            _fmt(report.fidelity_engine),
            _fmt(report.fidelity_closed_form),
            _fmt(report.fidelity_gap),
        ]))
    lines = _manifest("transfer", args.config, digest, args.out, warnings)
    lines.append("state,S,W,T,F_engine,F_closed,abs_diff")
    lines.extend(rows)
    _emit(lines, args.out)
    return 0


def cmd_entangle(args) -> int:
    cfg, digest = read_config(args.config)
    scenario = build_scenario(cfg, entangling=True, truncation=args.truncation)
    report = protocol.run_entanglement(scenario)
    lines = _manifest("entangle", args.config, digest, args.out, report.warnings)
    lines.append("r,W,EN_closed,EN_fock,truncation,leak")
    lines.append(",".join([
        _fmt(report.squeezing),
        _fmt(report.efficiency),
        _fmt(report.en_closed.value),
        _fmt(report.en_fock.value),
        str(report.truncation),
        _fmt(report.leak),
    ]))
    _emit(lines, args.out)
    return 0


def cmd_fig5(args) -> int:
    truncation = args.truncation if args.truncation is not None \
        else protocol.DEFAULT_SQUEEZE_TRUNCATION
    points = protocol.entanglement_curves(FIG5_SQUEEZINGS, FIG5_EFFICIENCIES,
                                          truncation=truncation)
    lines = _manifest("fig5", None, None, args.out)
    lines.append("r,W,EN_closed,EN_fock")
    for p in points:
        lines.append(",".join([_fmt(p.squeezing), _fmt(p.efficiency),
                               _fmt(p.en_closed), _fmt(p.en_fock)]))
    _emit(lines, args.out)
    return 0


def cmd_validate(args) -> int:
    cfg, _ = read_config(args.config)
    scenario = build_scenario(cfg)
    checks = protocol.validate_scenario(scenario)
    width = max(len(c.name) for c in checks)
    print(f"{'check'.ljust(width)}  {'value':>12}  {'bound':>12}  status")
    for c in checks:
        status = "ok" if c.passed else "FAIL"
        print(f"{c.name.ljust(width)}  {c.value:>12.4e}  {c.bound:>12.4e}  {status}")
    failed = [c for c in checks if not c.passed]
    if failed:
        print(f"{len(failed)} of {len(checks)} checks failed")
        return 2
    print(f"all {len(checks)} checks passed")
    return 0


def cmd_qle(args) -> int:
    cfg, digest = read_config(args.config)
    process = cfg.get("qle_process", "antistokes")
    if process not in QLE_PROCESSES:
        raise ConfigError(f"qle_process must be one of {QLE_PROCESSES}, "
                          f"got {process!r}")
    ratios = cfg.get("qle_coupling_ratios", DEFAULT_QLE_RATIOS)
    default_duration = 30e-9 if process == "stokes" else 40e-9
    pulse = propagators.PulseSpec(
        coupling=cfg.get("magnon_pulse_coupling_over_2pi_hz", TWO_PI * 10e6),
        cavity_linewidth=cfg.get("tm_linewidth_over_2pi_hz", TWO_PI * 500e6),
        duration=cfg.get("magnon_pulse_duration_s", default_duration),
    )
    rows = validate_adiabatic(pulse.cavity_linewidth, pulse.pulse_area, ratios,
                              process=process,
                              matter_linewidth=cfg.get(
                                  "magnon_linewidth_over_2pi_hz", 0.0))
    lines = _manifest("qle", args.config, digest, args.out)
    lines.append(f"# note: process {process}, pulse area {_fmt(pulse.pulse_area)}")
    lines.append("G_over_kappa,eta_integrated,eta_closed,rel_err")
    for row in rows:
        lines.append(",".join([
            _fmt(row.coupling_ratio),
            _fmt(row.value_integrated),
            _fmt(row.value_closed_form),
            _fmt(row.rel_error),
        ]))
    _emit(lines, args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="magnomech",
        description="Pulsed magnon-phonon network pipelines, CSV in, CSV out.")
    parser.add_argument("--version", action="version",
                        version=f"magnomech {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text, *, config=True, out=True, truncation=True):
        p = sub.add_parser(name, help=help_text)
        if config:
            p.add_argument("config", nargs="?", default=None,
                           help="flat key=value config file (defaults apply)")
        if out:
            p.add_argument("--out", default=None, metavar="PATH",
                           help="CSV output path (default: stdout)")
        if truncation:
            p.add_argument("--truncation", type=int, default=None, metavar="N",
                           help="Fock levels per mode (overrides config)")
        p.set_defaults(func=func)
        return p

    add("transfer", cmd_transfer, "magnon to phonon state transfer")
    add("entangle", cmd_entangle, "magnon-phonon entanglement distribution")
    add("fig5", cmd_fig5, "E_N sweep over squeezing and conversion efficiency",
        config=False)
    add("validate", cmd_validate, "physical-regime checks of a scenario",
        out=False, truncation=False)
    add("qle", cmd_qle, "moment-equation check of the adiabatic closed forms",
        truncation=False)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except fock.TruncationLeakError as exc:
        print(f"error: truncation budget exceeded: leak {exc.leak:.3e} over "
              f"budget {exc.budget:.3e}; raise --truncation", file=sys.stderr)
        return 3
    except (protocol.ScenarioError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
