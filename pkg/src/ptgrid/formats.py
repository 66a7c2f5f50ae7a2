"""Plain-text scenario configs, CSV tables, load-profile files, and run
manifests.

Scenario configs are flat `key = value` files: '#' starts a comment, values
are scalars, comma-separated lists, or `start:stop:count` grid expressions
(inclusive endpoints, like numpy.linspace).
"""
from __future__ import annotations

import csv
import json
from pathlib import Path

import numpy as np

from .dsm import HOURS, DsmConfig, LoadProfile
from .prospects import PtProfile
from .storage import StorageConsumer, StorageGridConfig


class ConfigError(ValueError):
    """Raised when a config or data file cannot be parsed."""


def read_kv_config(path) -> dict:
    """Parse a key = value file into a dict of raw strings."""
    path = Path(path)
    if not path.exists():
        raise ConfigError(f"config file not found: {path}")
    out = {}
    for line_no, raw in enumerate(path.read_text(encoding="utf-8").splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{line_no}: expected 'key = value', got {raw!r}")
        key, value = line.split("=", 1)
        key = key.strip()
        if not key:
            raise ConfigError(f"{path}:{line_no}: empty key")
        if key in out:
            raise ConfigError(f"{path}:{line_no}: duplicate key {key!r}")
        out[key] = value.strip()
    return out


def parse_grid(text: str) -> np.ndarray:
    """A grid expression: either 'start:stop:count' or a comma list."""
    text = text.strip()
    if ":" in text:
        parts = text.split(":")
        if len(parts) != 3:
            raise ConfigError(f"grid expression needs start:stop:count, got {text!r}")
        try:
            start, stop, count = float(parts[0]), float(parts[1]), int(parts[2])
        except ValueError as exc:
            raise ConfigError(f"bad grid expression {text!r}") from exc
        if count < 1:
            raise ConfigError("grid count must be positive")
        return np.linspace(start, stop, count)
    return parse_float_list(text)


def parse_float_list(text: str) -> np.ndarray:
    try:
        return np.array([float(t) for t in text.split(",") if t.strip()])
    except ValueError as exc:
        raise ConfigError(f"bad number list {text!r}") from exc


def parse_int_list(text: str) -> tuple:
    try:
        return tuple(int(t) for t in text.split(",") if t.strip())
    except ValueError as exc:
        raise ConfigError(f"bad integer list {text!r}") from exc


def _get_float(cfg: dict, key: str, default=None) -> float:
    if key not in cfg:
        if default is None:
            raise ConfigError(f"missing required key {key!r}")
        return default
    try:
        return float(cfg[key])
    except ValueError as exc:
        raise ConfigError(f"bad value for {key!r}: {cfg[key]!r}") from exc


def _get_int(cfg: dict, key: str, default=None) -> int:
    if key not in cfg:
        if default is None:
            raise ConfigError(f"missing required key {key!r}")
        return default
    try:
        return int(cfg[key])
    except ValueError as exc:
        raise ConfigError(f"bad value for {key!r}: {cfg[key]!r}") from exc


def _get_bool(cfg: dict, key: str, default: bool) -> bool:
    if key not in cfg:
        return default
    v = cfg[key].lower()
    if v in ("true", "yes", "1"):
        return True
    if v in ("false", "no", "0"):
        return False
    raise ConfigError(f"bad boolean for {key!r}: {cfg[key]!r}")


# ---------------------------------------------------------------------------
# storage scenario config


def load_storage_config(path) -> dict:
    """Resolve a storage scenario config file.

    Keys: load_1, surplus_1, load_2, surplus_2, passive_load,
    nominal_generation (optional), penalty_coeff, company_price,
    selling_price, alphas, b_grid, rho_grid, ref_grid, gammas, frame_beta.
    """
    cfg = read_kv_config(path)
    consumers = tuple(
        StorageConsumer(
            load=_get_float(cfg, f"load_{i}"),
            surplus=_get_float(cfg, f"surplus_{i}"),
            behavior=PtProfile.eut(),
        )
        for i in (1, 2)
    )
    nominal = _get_float(cfg, "nominal_generation", 0.0) if "nominal_generation" in cfg else None
    grid = StorageGridConfig(
        passive_load=_get_float(cfg, "passive_load", 80.0),
        nominal_generation=nominal,
        penalty_coeff=_get_float(cfg, "penalty_coeff"),
        company_price=_get_float(cfg, "company_price"),
        selling_price=_get_float(cfg, "selling_price", 0.06),
    )
    try:
        return {
            "consumers": consumers,
            "grid": grid,
            "alphas": parse_float_list(cfg.get("alphas", "0.25,0.65")).tolist(),
            "b_grid": parse_grid(cfg.get("b_grid", "0.03:0.09:25")),
            "rho_grid": parse_grid(cfg.get("rho_grid", "0.10:0.20:21")),
            "ref_grid": parse_grid(cfg.get("ref_grid", "0.0:2.0:9")),
            "gammas": parse_float_list(cfg.get("gammas", "1.0,2.0")).tolist(),
            "frame_beta": _get_float(cfg, "frame_beta", 1.0),
            "raw": cfg,
        }
    except ConfigError:
        raise
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc


# ---------------------------------------------------------------------------
# DSM scenario config


def load_dsm_config(path) -> dict:
    """Resolve a DSM scenario config file.

    Keys: n_consumers, seed, profiles_csv (optional; overrides the synthetic
    generator), flexible_low/flexible_high, start_window, include_opt_out,
    price_coeff, price_exponent, shift_span, offpeak_hours, alphas,
    alpha_grid, hour, tol, max_iter.
    """
    cfg = read_kv_config(path)
    n = _get_int(cfg, "n_consumers", 6)
    alphas = None
    if "alphas" in cfg:
        alphas = tuple(parse_float_list(cfg["alphas"]).tolist())
    try:
        config = DsmConfig(
            n_consumers=n,
            start_window=parse_int_list(cfg.get("start_window", "18,19,20")),
            include_opt_out=_get_bool(cfg, "include_opt_out", True),
            price_coeff=_get_float(cfg, "price_coeff", 0.02),
            price_exponent=_get_float(cfg, "price_exponent", 1.0),
            shift_span=_get_int(cfg, "shift_span", 5),
            offpeak_hours=parse_int_list(cfg.get("offpeak_hours", "1,2,3,4,5")),
            alphas=alphas,
        )
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    return {
        "config": config,
        "seed": _get_int(cfg, "seed", 42),
        "profiles_csv": cfg.get("profiles_csv"),
        "flexible_range": (
            _get_float(cfg, "flexible_low", 0.7),
            _get_float(cfg, "flexible_high", 0.95),
        ),
        "alpha_grid": parse_grid(cfg.get("alpha_grid", "0.05:1.0:20")),
        "hour": _get_int(cfg, "hour", 19),
        "tol": _get_float(cfg, "tol", 1e-9),
        "max_iter": _get_int(cfg, "max_iter", 10000),
        "raw": cfg,
    }


# ---------------------------------------------------------------------------
# load-profile CSV: header h00..h23 plus flexible_fraction, one row per consumer


def write_profiles_csv(path, profiles) -> None:
    header = [f"h{h:02d}" for h in range(HOURS)] + ["flexible_fraction"]
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        for p in profiles:
            writer.writerow(
                [f"{v:.17g}" for v in p.hourly_demand] + [f"{p.flexible_fraction:.17g}"]
            )


def read_profiles_csv(path) -> list:
    path = Path(path)
    if not path.exists():
        raise ConfigError(f"profile file not found: {path}")
    expected = [f"h{h:02d}" for h in range(HOURS)] + ["flexible_fraction"]
    profiles = []
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise ConfigError(f"{path}: empty profile file") from None
        if header != expected:
            raise ConfigError(
                f"{path}: bad header; expected {','.join(expected[:3])},...,"
                f"{expected[-1]}"
            )
        for row_no, row in enumerate(reader, 2):
            if len(row) != HOURS + 1:
                raise ConfigError(
                    f"{path}: row {row_no}: expected {HOURS + 1} columns, got {len(row)}"
                )
            try:
                values = [float(v) for v in row]
            except ValueError as exc:
                raise ConfigError(f"{path}: row {row_no}: non-numeric cell") from exc
            try:
                profiles.append(
                    LoadProfile(
                        hourly_demand=np.array(values[:HOURS]),
                        flexible_fraction=values[HOURS],
                    )
                )
            except ValueError as exc:
                raise ConfigError(f"{path}: row {row_no}: {exc}") from exc
    if not profiles:
        raise ConfigError(f"{path}: no profile rows")
    return profiles


# ---------------------------------------------------------------------------
# generic CSV tables


def write_csv(path, header, rows) -> None:
    """Write a table with full-precision floats (round-trips exactly)."""
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        for row in rows:
            writer.writerow(
                [f"{v:.17g}" if isinstance(v, float) else v for v in row]
            )


def read_csv(path) -> tuple:
    """Read back a table written by write_csv: (header, list of float rows)."""
    path = Path(path)
    if not path.exists():
        raise ConfigError(f"csv file not found: {path}")
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise ConfigError(f"{path}: empty csv") from None
        rows = []
        for row_no, row in enumerate(reader, 2):
            try:
                rows.append([float(v) for v in row])
            except ValueError as exc:
                raise ConfigError(f"{path}: row {row_no}: non-numeric cell") from exc
    return header, rows


# ---------------------------------------------------------------------------
# run manifests


def write_manifest(path, command: str, config: dict, outputs, seed=None) -> None:
    from . import __version__

    payload = {
        "command": command,
        "config": config,
        "outputs": [str(o) for o in outputs],
        "seed": seed,
        "version": __version__,
    }
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")


def read_manifest(path) -> dict:
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)
