"""
Command-line front end.

Subcommands write plot-ready tables (CSV by default, JSON on request) into
the ``--out`` directory.  Output is fully deterministic: no timestamps, no
randomness, fixed 17-significant-digit float formatting.

Exit codes: 0 success, 1 usage or config error, 2 numerical failure or a
failed hard check.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import dataclass, fields, replace
from pathlib import Path

import numpy as np

from . import __version__
from .checks import PUBLISHED_APPROX_DE, PUBLISHED_EXACT_DE, reproduction_report, run_checks
from .errors import KGDotError
from .model import (
    ConfinementParams,
    Scenario,
    effective_potential,
    quartic_taylor,
    quartic_u,
)
from .oracle import RadialGrid, solve_oracle_state
from .spectra import solve_energy, spectrum_table
from .wavefn import WavefunctionSpec, density_profile, normalize

SCHEMA = "kgdot-output/1"

SPECTRUM_COLUMNS = ["scenario", "De", "r0", "m0", "n", "l", "E", "epsilon", "residual",
                    "branch_note", "oracle_E", "oracle_dev"]


class ConfigError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    scenario: str = "exact"
    De: tuple[float, ...] = (1.0,)
    r0: float = 1.0
    m0: float = 1.0
    nmax: int = 0
    lmax: int = 0
    grid_points: int = 6000
    rmax: float = 12.0
    format: str = "csv"
    out: str = "kgdot_out"
    perturb: float = 0.0

    def params(self, De: float) -> ConfinementParams:
        return ConfinementParams(De, self.r0, self.m0)

    def grid(self) -> RadialGrid:
        return RadialGrid.default(self.rmax, self.grid_points)

    def to_text(self) -> str:
        """Flat key=value serialisation; parses back to an equal config."""
        lines = []
        for f in fields(self):
            v = getattr(self, f.name)
            if f.name == "De":
                v = ",".join(_fmt(x) for x in v)
            elif isinstance(v, float):
                v = _fmt(v)
            lines.append(f"{f.name}={v}")
        return "\n".join(lines) + "\n"

    def embedded(self) -> list[str]:
        """Config lines stamped into output files; the destination is left out."""
        return [ln for ln in self.to_text().splitlines() if not ln.startswith("out=")]


_FIELD_TYPES = {"scenario": str, "r0": float, "m0": float, "nmax": int, "lmax": int,
                "grid_points": int, "rmax": float, "format": str, "out": str, "perturb": float}


def _fmt(v) -> str:
    if isinstance(v, (float, np.floating)):
        if math.isnan(v):
            return "nan"
        return format(float(v), ".17g")
    return str(v)


def _coerce(key: str, raw: str):
    if key == "De":
        return tuple(float(x) for x in raw.split(",") if x.strip())
    return _FIELD_TYPES[key](raw.strip())


def _validate(cfg: RunConfig) -> RunConfig:
    Scenario.parse(cfg.scenario)
    if cfg.format not in ("csv", "json"):
        raise ConfigError(f"format must be csv or json, got {cfg.format!r}")
    if not cfg.De:
        raise ConfigError("at least one De value is required")
    if not (0 <= cfg.nmax <= 10 and 0 <= cfg.lmax <= 10):
        raise ConfigError("nmax and lmax must lie in [0, 10]")
    for De in cfg.De:
        cfg.params(De)
    cfg.grid()
    return cfg


def parse_config_text(text: str, source: str = "<config>") -> dict:
    """Parse ``key=value`` lines ('#' comments) into a dict of typed values."""
    out = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{source}:{lineno}: expected key=value, got {line!r}")
        key, raw = (s.strip() for s in line.split("=", 1))
        if key not in _FIELD_TYPES and key != "De":
            raise ConfigError(f"{source}:{lineno}: unknown key {key!r}")
        try:
            out[key] = _coerce(key, raw)
        except ValueError as exc:
            raise ConfigError(f"{source}:{lineno}: bad value for {key}: {exc}") from None
    return out


def config_from_text(text: str, source: str = "<config>") -> RunConfig:
    try:
        return _validate(RunConfig(**parse_config_text(text, source)))
    except KGDotError as exc:
        raise ConfigError(f"{source}: {exc}") from None


# ---------------------------------------------------------------- writers


def _table_text(columns, rows, cfg: RunConfig, meta: dict | None = None) -> str:
    meta = meta or {}
    if cfg.format == "json":
        payload = {
            "schema": SCHEMA,
            "config": cfg.embedded(),
            "meta": {k: _jsonable(v) for k, v in meta.items()},
            "columns": list(columns),
            "rows": [[_jsonable(v) for v in row] for row in rows],
        }
        return json.dumps(payload, indent=1, sort_keys=True) + "\n"
    buf = io.StringIO()
    buf.write(f"# schema: {SCHEMA}\n")
    buf.write(f"# config: {'; '.join(cfg.embedded())}\n")
    for k, v in meta.items():
        buf.write(f"# {k}: {_fmt(v)}\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([_fmt(v) for v in row])
    return buf.getvalue()


def _jsonable(v):
    if isinstance(v, (float, np.floating)):
        v = float(v)
        return v if math.isfinite(v) else str(v)
    if isinstance(v, np.integer):
        return int(v)
    return v


def _write(out_dir: Path, stem: str, text: str, cfg: RunConfig) -> Path:
    out_dir.mkdir(parents=True, exist_ok=True)
    path = out_dir / f"{stem}.{cfg.format}"
    path.write_text(text)
    return path


def read_table(path: str | Path) -> tuple[list[str], list[dict]]:
    """Read a CSV or JSON table written by this module back into dict rows."""
    path = Path(path)
    text = path.read_text()
    if path.suffix == ".json":
        data = json.loads(text)
        cols = data["columns"]
        return cols, [dict(zip(cols, r)) for r in data["rows"]]
    lines = [ln for ln in text.splitlines() if not ln.startswith("#")]
    reader = csv.DictReader(lines)
    return list(reader.fieldnames), list(reader)


def _label(De: float) -> str:
    return format(De, "g")


# ---------------------------------------------------------------- commands


def spectrum_rows(cfg: RunConfig) -> tuple[list[list], bool]:
    """Closed-form spectrum with oracle cross-check; returns (rows, all_ok)."""
    scenario = Scenario.parse(cfg.scenario)
    rows, ok = [], True
    for De in cfg.De:
        params = cfg.params(De)
        for res in spectrum_table(cfg.nmax, cfg.lmax, params, scenario):
            oracle_E = dev = float("nan")
            if res.ok:
                try:
                    oracle_E = solve_oracle_state(res.n, res.ell, params, scenario, cfg.grid()).energy
                    dev = abs(res.energy - oracle_E) / abs(res.energy)
                except KGDotError:
                    ok = False
            else:
                ok = False
            rows.append([scenario.value, De, cfg.r0, cfg.m0, res.n, res.ell, res.energy,
                         res.epsilon, res.residual, res.branch_note, oracle_E, dev])
    return rows, ok


def cmd_spectrum(cfg: RunConfig, stem: str | None = None) -> int:
    rows, ok = spectrum_rows(cfg)
    _write(Path(cfg.out), stem or f"spectrum_{cfg.scenario}",
           _table_text(SPECTRUM_COLUMNS, rows, cfg), cfg)
    return 0 if ok else 2


def cmd_density(cfg: RunConfig, prefix: str = "density") -> int:
    scenario = Scenario.parse(cfg.scenario)
    grid = cfg.grid()
    status = 0
    for De in cfg.De:
        params = cfg.params(De)
        for res in spectrum_table(cfg.nmax, cfg.lmax, params, scenario):
            if not res.ok:
                status = 2
                continue
            try:
                spec = normalize(WavefunctionSpec.from_result(res, params, scenario), grid)
                prof = density_profile(spec, grid)
            except KGDotError:
                status = 2
                continue
            meta = {"scenario": scenario.value, "De": De, "r0": cfg.r0, "m0": cfg.m0,
                    "n": res.n, "l": res.ell, "E": res.energy, "epsilon": res.epsilon}
            rows = zip(prof.r, prof.u, prof.u2, prof.phi)
            _write(Path(cfg.out), f"{prefix}_{scenario.value}_De{_label(De)}_n{res.n}_l{res.ell}",
                   _table_text(["r", "u", "u2", "phi"], rows, cfg, meta), cfg)
    return status


def effpot_radii(r0: float) -> np.ndarray:
    """0.02 r0 ... 3 r0 in steps of 0.01 r0 (r0 itself is a sample)."""
    return r0 * (0.02 + 0.01 * np.arange(299))


def cmd_effpot(cfg: RunConfig, prefix: str = "effpot", taylor_stem: str = "taylor_quartic") -> int:
    scenario = Scenario.parse(cfg.scenario)
    status = 0
    for De in cfg.De:
        params = cfg.params(De)
        try:
            res = solve_energy((0, 0), params, scenario)
        except KGDotError:
            status = 2
            continue
        r = effpot_radii(cfg.r0)
        meta = {"scenario": scenario.value, "De": De, "r0": cfg.r0, "m0": cfg.m0,
                "n": 0, "l": 0, "E": res.energy, "epsilon": res.epsilon}
        if scenario is Scenario.EXACT:
            cols = ["r", "phi"]
            rows = zip(r, effective_potential(r, res.energy, params, scenario))
        else:
            cols = ["r", "phi_full", "phi_taylor"]
            rows = zip(r, effective_potential(r, res.energy, params, scenario),
                       effective_potential(r, res.energy, params, scenario, taylor=True))
        _write(Path(cfg.out), f"{prefix}_{scenario.value}_De{_label(De)}",
               _table_text(cols, rows, cfg, meta), cfg)
    x = np.round(0.4 + 0.01 * np.arange(211), 10)
    _write(Path(cfg.out), taylor_stem,
           _table_text(["x", "U", "U_a"], zip(x, quartic_u(x), quartic_taylor(x)), cfg), cfg)
    return status


def cmd_verify(cfg: RunConfig, stem: str = "verify_report") -> int:
    report = run_checks(cfg)
    payload = {"schema": SCHEMA, "config": cfg.embedded(), **report}
    out = Path(cfg.out)
    out.mkdir(parents=True, exist_ok=True)
    (out / f"{stem}.json").write_text(json.dumps(payload, indent=1, sort_keys=True) + "\n")
    for check in report["checks"]:
        if check["kind"] == "hard" and not check["passed"]:
            print(f"FAILED {check['name']}: {check['detail']}", file=sys.stderr)
    return 0 if report["all_hard_passed"] else 2


def cmd_reproduce(cfg: RunConfig) -> int:
    """Every figure table with the published parameter sets, plus reports."""
    base = replace(cfg, r0=1.0, m0=1.0)
    exact = replace(base, scenario="exact", De=PUBLISHED_EXACT_DE, nmax=2, lmax=2)
    approx = replace(base, scenario="approx", De=PUBLISHED_APPROX_DE, nmax=2, lmax=2)
    statuses = [
        cmd_spectrum(exact, "fig1_spectrum_exact"),
        cmd_density(replace(exact, De=(1.0,)), "fig1_density"),
        cmd_effpot(exact, "fig2_effpot", "fig3_taylor_quartic"),
        cmd_spectrum(approx, "fig4_spectrum_approx"),
        cmd_effpot(approx, "fig6_effpot", "fig3_taylor_quartic"),
        cmd_verify(replace(exact, De=(1.0,), nmax=1, lmax=1)),
    ]
    report = reproduction_report(base)
    out = Path(cfg.out)
    (out / "reproduction_report.json").write_text(
        json.dumps({"schema": SCHEMA, "config": base.embedded(), **report},
                   indent=1, sort_keys=True) + "\n")
    for line in report["summary"]:
        print(line)
    return max(statuses)


COMMANDS = {
    "spectrum": cmd_spectrum,
    "density": cmd_density,
    "effpot": cmd_effpot,
    "verify": cmd_verify,
    "reproduce-figures": cmd_reproduce,
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="kgdot", description=__doc__.strip().splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    parser.add_argument("command", choices=sorted(COMMANDS))
    parser.add_argument("--config", help="flat key=value file; flags override it")
    parser.add_argument("--scenario", choices=["exact", "approx"])
    parser.add_argument("--De", type=float, action="append", help="well depth, repeatable")
    parser.add_argument("--r0", type=float)
    parser.add_argument("--m0", type=float)
    parser.add_argument("--nmax", type=int)
    parser.add_argument("--lmax", type=int)
    parser.add_argument("--grid-points", dest="grid_points", type=int)
    parser.add_argument("--rmax", type=float)
    parser.add_argument("--format", choices=["csv", "json"])
    parser.add_argument("--out")
    parser.add_argument("--perturb", type=float)
    return parser


def resolve_config(ns: argparse.Namespace) -> RunConfig:
    values = {}
    if ns.config:
        path = Path(ns.config)
        try:
            text = path.read_text()
        except OSError as exc:
            raise ConfigError(f"cannot read config {path}: {exc}") from None
        values.update(parse_config_text(text, str(path)))
    for key in [f.name for f in fields(RunConfig)]:
        v = getattr(ns, key, None)
        if v is not None:
            values[key] = tuple(v) if key == "De" else v
    try:
        return _validate(RunConfig(**values))
    except KGDotError as exc:
        raise ConfigError(str(exc)) from None


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    try:
        cfg = resolve_config(ns)
    except ConfigError as exc:
        print(f"kgdot: config error: {exc}", file=sys.stderr)
        return 1
    return COMMANDS[ns.command](cfg)


if __name__ == "__main__":
    sys.exit(main())
