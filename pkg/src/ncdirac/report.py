"""Configuration, level-diagram tables, serialization and the command line.

Config files are ``key = value`` lines with ``#`` comments; the same pairs
may also be given as whitespace-separated ``key=value`` tokens. Flags
override the file. Units at this boundary: θ in m², θ̄ in eV² (ħ = c = 1),
energies in eV.

Exit codes of :func:`main`: 0 success, 2 configuration error, 3 physics
domain error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import asdict, dataclass, field
from pathlib import Path

import numpy as np

from .dirac import DomainError, Level, PhysicalConstants, energy
from .ncps import NcParams, corrections, spacings, theta_matrix, thetabar_matrix

__all__ = [
    "ConfigError",
    "RunConfig",
    "parse_config",
    "DiagramRecord",
    "LevelDiagram",
    "run",
    "emit",
    "parse_diagram",
    "main",
]

VERSION = "0.1.0"
CSV_HEADER = ("level", "sublevel", "E_dirac_eV", "delta_alpha_eV", "e_theta_eV", "e_thetabar_eV", "total_eV")
DEFAULT_LEVELS = ("2S1/2", "2P1/2", "2P3/2")


class ConfigError(ValueError):
    """Malformed or inconsistent run configuration."""


@dataclass(frozen=True)
class RunConfig:
    Z: float = 1.0
    levels: tuple[str, ...] = DEFAULT_LEVELS
    theta_m2: float = 0.0
    thetabar: float = 0.0  # eV²
    alpha: float | None = None  # None: derive from the constraint
    output_format: str = "csv"
    output_path: str | None = None
    thetabar_form: str = "exact"
    delta_form: str = "linear"
    theta_dir: tuple[float, float, float] = (0.0, 0.0, 1.0)
    thetabar_dir: tuple[float, float, float] = (0.0, 0.0, 1.0)

    @property
    def alpha_mode(self) -> str:
        return "constraint" if self.alpha is None else "direct"

    def level_objects(self) -> list[Level]:
        return [_parse_level(s, self.Z) for s in self.levels]

    def nc_params(self, c: PhysicalConstants = PhysicalConstants()) -> NcParams:
        th = np.asarray(self.theta_dir, float)
        tb = np.asarray(self.thetabar_dir, float)
        th = th / np.linalg.norm(th) * self.theta_m2 * c.m2_to_inv_ev2
        tb = tb / np.linalg.norm(tb) * self.thetabar
        return NcParams(theta=th, thetabar=tb, alpha=self.alpha)


def _parse_level(text: str, Z: float) -> Level:
    # "2P3/2" or "n:j:l" such as "2:3/2:1"
    if ":" in text:
        parts = text.split(":")
        if len(parts) != 3:
            raise DomainError(f"level triple {text!r} must be n:j:l")
        return Level.make(int(parts[0]), parts[1], int(parts[2]), Z)
    return Level.parse(text, Z)


def _float(key, raw, where):
    try:
        v = float(raw)
    except ValueError:
        raise ConfigError(f"{where}: {key} expects a number, got {raw!r}") from None
    if not math.isfinite(v):
        raise ConfigError(f"{where}: {key} must be finite")
    return v


def _direction(key, raw, where):
    parts = [p for p in raw.replace(",", " ").split() if p]
    if len(parts) == 1 and parts[0].lower() in ("x", "y", "z"):
        return tuple(float(parts[0].lower() == a) for a in "xyz")
    if len(parts) != 3:
        raise ConfigError(f"{where}: {key} expects x, y, z or three components")
    vec = tuple(_float(key, p, where) for p in parts)
    if not any(vec):
        raise ConfigError(f"{where}: {key} must be nonzero")
    return vec


_CHOICES = {
    "format": ("output_format", ("csv", "json")),
    "thetabar_form": ("thetabar_form", ("exact", "shift")),
    "delta_form": ("delta_form", ("linear", "exact")),
}
_ALIASES = {"theta": "theta_m2", "thetabar_ev2": "thetabar", "output_format": "format", "output_path": "out", "level": "levels"}
KNOWN_KEYS = ("Z", "levels", "theta_m2", "thetabar", "alpha", "format", "out", "thetabar_form", "delta_form",
              "theta_dir", "thetabar_dir")


def _apply(values: dict, key: str, raw: str, where: str) -> None:
    key = _ALIASES.get(key, key)
    raw = raw.strip()
    if key == "Z":
        values["Z"] = _float(key, raw, where)
    elif key == "levels":
        labels = tuple(s.strip() for s in raw.split(",") if s.strip())
        if not labels:
            raise ConfigError(f"{where}: levels is empty")
        values["levels"] = labels
    elif key in ("theta_m2", "thetabar"):
        v = _float(key, raw, where)
        if v < 0:
            raise ConfigError(f"{where}: {key} is a magnitude and must be >= 0")
        values[key] = v
    elif key == "alpha":
        values["alpha"] = None if raw.lower() in ("", "auto", "constraint") else _float(key, raw, where)
    elif key in _CHOICES:
        attr, allowed = _CHOICES[key]
        if raw not in allowed:
            raise ConfigError(f"{where}: {key} must be one of {', '.join(allowed)}, got {raw!r}")
        values[attr] = raw
    elif key == "out":
        values["output_path"] = raw or None
    elif key in ("theta_dir", "thetabar_dir"):
        values[key] = _direction(key, raw, where)
    else:
        raise ConfigError(f"{where}: unknown key {key!r} (known: {', '.join(KNOWN_KEYS)})")


def _pairs(text: str):
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        where = f"line {lineno}"
        if line.count("=") == 1:
            # "key = value", value may contain spaces ("theta_dir = 1 0 0")
            key, raw = line.split("=", 1)
            yield key.strip(), raw, where
            continue
        for tok in line.split():
            if tok.count("=") != 1:
                raise ConfigError(f"{where}: expected key=value, got {tok!r}")
            key, raw = tok.split("=", 1)
            yield key, raw, where


def parse_config(text: str | None = None, flags: dict | None = None,
                 c: PhysicalConstants = PhysicalConstants()) -> RunConfig:
    """Build a validated RunConfig from config text and a flag mapping.

    ``flags`` maps config keys to raw strings (or lists for ``levels``);
    entries that are None are ignored. Flags override the text.
    """
    values: dict = {}
    for key, raw, where in _pairs(text or ""):
        _apply(values, key, raw, where)
    for key, raw in (flags or {}).items():
        if raw is None:
            continue
        if isinstance(raw, (list, tuple)):
            raw = ",".join(raw)
        _apply(values, key, str(raw), f"flag --{key.replace('_', '-')}")
    cfg = RunConfig(**values)
    try:
        if not cfg.Z > 0:
            raise DomainError("Z must be positive")
        cfg.level_objects()
        cfg.nc_params(c)
    except DomainError as exc:
        raise ConfigError(f"invalid configuration: {exc}") from exc
    return cfg


@dataclass(frozen=True)
class DiagramRecord:
    level: str
    sublevel: str
    E_dirac: float
    delta_alpha: float
    e_theta: float
    e_thetabar: float
    total: float

    def row(self) -> tuple:
        return (self.level, self.sublevel, self.E_dirac, self.delta_alpha, self.e_theta, self.e_thetabar, self.total)


@dataclass
class LevelDiagram:
    records: list[DiagramRecord]
    metadata: dict = field(default_factory=dict)

    def check_sums(self, rtol: float = 1e-11) -> None:
        """Raise if any total differs from E_dirac + the three corrections."""
        for r in self.records:
            parts = r.E_dirac + (r.delta_alpha + r.e_theta + r.e_thetabar)
            if abs(r.total - parts) > rtol * abs(r.E_dirac):
                raise ValueError(f"sum identity broken for {r.level} {r.sublevel}: {r.total!r} vs {parts!r}")


def _metadata(cfg: RunConfig, p: NcParams, c: PhysicalConstants) -> dict:
    return {
        "version": VERSION,
        "Z": cfg.Z,
        "alpha": p.alpha,
        "alpha_mode": cfg.alpha_mode,
        "theta_m2": cfg.theta_m2,
        "theta_eV-2": p.theta_mag,
        "theta_m2_to_eV-2": c.m2_to_inv_ev2,
        "thetabar_eV2": cfg.thetabar,
        "theta_dir": list(cfg.theta_dir),
        "thetabar_dir": list(cfg.thetabar_dir),
        "thetabar_form": cfg.thetabar_form,
        "delta_form": cfg.delta_form,
        "electron_mass_eV": c.electron_mass,
        "coupling_e2": c.coupling_e2,
        "hbar_c_eV_m": c.hbar_c,
        "units": "energies eV; theta m2 (natural eV-2 via 1/(hbar c)^2); thetabar eV2",
    }


def run(cfg: RunConfig, c: PhysicalConstants = PhysicalConstants()) -> LevelDiagram:
    """Per-sublevel Dirac energies plus first-order corrections."""
    p = cfg.nc_params(c)
    records = []
    for lv in cfg.level_objects():
        try:
            e0 = energy(lv, c)
            br = corrections(lv, p, c, thetabar_form=cfg.thetabar_form, delta_form=cfg.delta_form)
        except DomainError as exc:
            if lv.label in str(exc):
                raise
            raise DomainError(f"{lv.label}: {exc}") from exc
        rows = [
            DiagramRecord(lv.label, s, e0, br.delta_E_alpha, br.e_theta[s], br.e_thetabar[s],
                          e0 + (br.delta_E_alpha + br.e_theta[s] + br.e_thetabar[s]))
            for s in br.labels
        ]
        records.extend(sorted(rows, key=lambda r: -r.e_theta))
    records.sort(key=lambda r: r.level)  # stable: keeps e_theta order inside a level
    d = LevelDiagram(records, _metadata(cfg, p, c))
    d.check_sums()
    return d


# ---------------------------------------------------------------- serialization

def _fmt(v: float) -> str:
    return format(v, ".12g")


def emit(d: LevelDiagram, fmt: str = "csv", path: str | Path | None = None) -> str:
    """Serialize ``d`` and write it to ``path`` when given; returns the text."""
    d.check_sums()
    if fmt == "csv":
        buf = io.StringIO()
        for k, v in d.metadata.items():
            buf.write(f"# {k}={json.dumps(v)}\n")
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(CSV_HEADER)
        for r in d.records:
            w.writerow([r.level, r.sublevel] + [_fmt(x) for x in r.row()[2:]])
        text = buf.getvalue()
    elif fmt == "json":
        doc = {"metadata": d.metadata, "records": [asdict(r) for r in d.records]}
        text = json.dumps(doc, indent=2) + "\n"
    else:
        raise ValueError(f"unknown format {fmt!r}")
    if path is not None:
        try:
            Path(path).write_text(text, encoding="utf-8")
        except OSError as exc:
            raise OSError(f"cannot write {path}: {exc.strerror or exc}") from exc
    return text


def parse_diagram(text: str, fmt: str = "csv") -> LevelDiagram:
    """Inverse of :func:`emit`."""
    if fmt == "json":
        doc = json.loads(text)
        return LevelDiagram([DiagramRecord(**r) for r in doc["records"]], doc["metadata"])
    if fmt != "csv":
        raise ValueError(f"unknown format {fmt!r}")
    meta, body = {}, []
    for line in text.splitlines():
        if line.startswith("# "):
            k, v = line[2:].split("=", 1)
            meta[k] = json.loads(v)
        else:
            body.append(line)
    rows = list(csv.reader(body))
    if tuple(rows[0]) != CSV_HEADER:
        raise ValueError(f"unexpected CSV header {rows[0]!r}")
    recs = [DiagramRecord(r[0], r[1], *(float(x) for x in r[2:])) for r in rows[1:]]
    return LevelDiagram(recs, meta)


def _spacings_text(cfg: RunConfig, c: PhysicalConstants) -> str:
    rows = spacings(cfg.nc_params(c), c, cfg.Z, thetabar_form=cfg.thetabar_form)
    if cfg.output_format == "json":
        return json.dumps(
            {"metadata": {"Z": cfg.Z, "thetabar_form": cfg.thetabar_form,
                          "A_units": "eV/m2", "B_units": "eV/eV2 divided by (hbar c)^2"},
             "spacings": [{"name": s.name, "A": s.A, "B": s.B, "B_nat": s.B_nat, "value_eV": s.value}
                          for s in rows]},
            indent=2,
        ) + "\n"
    buf = io.StringIO()
    buf.write(f"# Z={json.dumps(cfg.Z)}\n# thetabar_form={json.dumps(cfg.thetabar_form)}\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(("spacing", "A_eV_per_m2", "B", "B_nat_per_eV", "value_eV"))
    for s in rows:
        w.writerow((s.name, _fmt(s.A), _fmt(s.B), _fmt(s.B_nat), _fmt(s.value)))
    return buf.getvalue()


def _matrices_text(cfg: RunConfig) -> str:
    th = np.asarray(cfg.theta_dir, float)
    tb = np.asarray(cfg.thetabar_dir, float)
    th, tb = th / np.linalg.norm(th), tb / np.linalg.norm(tb)
    entries = []
    for lv in cfg.level_objects():
        for kind, m in (("theta", theta_matrix(lv, th)), ("thetabar", thetabar_matrix(lv, tb))):
            for a, ra in enumerate(m.two_jz):
                for b, rb in enumerate(m.two_jz):
                    z = m.entries[a, b]
                    entries.append((kind, lv.label, f"{ra}/2", f"{rb}/2", float(z.real), float(z.imag)))
    if cfg.output_format == "json":
        return json.dumps(
            {"metadata": {"note": "entries per unit |theta| and |thetabar| along the configured directions"},
             "entries": [dict(zip(("kind", "level", "row_jz", "col_jz", "re", "im"), e)) for e in entries]},
            indent=2,
        ) + "\n"
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(("kind", "level", "row_jz", "col_jz", "re", "im"))
    for e in entries:
        w.writerow(e[:4] + (_fmt(e[4] + 0.0), _fmt(e[5] + 0.0)))
    return buf.getvalue()


def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="ncdirac", description="Dirac–Coulomb levels with noncommutative phase-space corrections.")
    ap.add_argument("command", choices=("levels", "spacings", "matrices"))
    ap.add_argument("--Z")
    ap.add_argument("--level", action="append", help="level label such as 2P3/2 (repeatable)")
    ap.add_argument("--theta-m2", help="|θ| in m²")
    ap.add_argument("--thetabar", help="|θ̄| in eV²")
    ap.add_argument("--alpha", help="scaling constant; omit to derive from the constraint")
    ap.add_argument("--format", choices=("csv", "json"))
    ap.add_argument("--out")
    ap.add_argument("--config", help="key = value file")
    ap.add_argument("--thetabar-form", choices=("exact", "shift"))
    ap.add_argument("--delta-form", choices=("linear", "exact"))
    return ap


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    c = PhysicalConstants()
    try:
        text = Path(args.config).read_text(encoding="utf-8") if args.config else None
        flags = {
            "Z": args.Z, "levels": args.level, "theta_m2": args.theta_m2, "thetabar": args.thetabar,
            "alpha": args.alpha, "format": args.format, "out": args.out,
            "thetabar_form": args.thetabar_form, "delta_form": args.delta_form,
        }
        cfg = parse_config(text, flags, c)
    except OSError as exc:
        print(f"error: cannot read config: {exc}", file=sys.stderr)
        return 2
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    try:
        if args.command == "levels":
            out = emit(run(cfg, c), cfg.output_format)
        elif args.command == "spacings":
            out = _spacings_text(cfg, c)
        else:
            out = _matrices_text(cfg)
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    if cfg.output_path:
        try:
            Path(cfg.output_path).write_text(out, encoding="utf-8")
        except OSError as exc:
            print(f"error: cannot write {cfg.output_path}: {exc}", file=sys.stderr)
            return 2
    else:
        sys.stdout.write(out)
    return 0


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
