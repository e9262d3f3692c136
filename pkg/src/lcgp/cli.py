"""Command-line front end: simulate | analyze | compare.

Configuration comes from named presets and/or an INI file with sections
[input], [signal], [windows], [family], [grid], [transition], [noise],
[estimator], [output], [compare]. Flags override both.
"""

from __future__ import annotations

import argparse
import configparser
import copy
import json
import struct
import sys
import time
from pathlib import Path

import numpy as np

from .coupled import CoupledModelConfig, FrequencyFamily, SwitchFamily, fit
from .exceptions import ConfigurationError
from .gp import NoiseModel, TimeSeries
from .kernels import Exponential, Oscillatory, SquaredExponential
from .markov import (
    StateGrid,
    build_random_walk_transitions,
    build_two_state_transitions,
)
from .signals import (
    ChirpSpec,
    TwoStateSpec,
    gen_chirp,
    gen_two_state,
    pearson_correlation,
    stationary_baseline_fit,
    stationary_fit,
)

PRESETS = {
    "chirp-paper": {
        "signal": {
            "kind": "chirp",
            "t_start": 0.0,
            "t_end": 2.5,
            "sample_rate_hz": 100.0,
            "noise_std": 0.5,
            "seed": 0,
        },
        "windows": {"width_s": 0.25, "spacing_s": 0.1, "truncation_radius": 3.0},
        "family": {"kind": "frequency", "osc_width_s": 0.4},
        "grid": {"freq_min_hz": 0.1, "freq_max_hz": 12.0, "freq_step_hz": 0.4},
        "transition": {"kind": "random_walk", "step_std_hz": 0.2, "ar_coeff": 1.0},
        "noise": {"lambda": 0.25},
        "estimator": {"kind": "mean"},
        "compare": {"baselines": "stationary_oscillatory_opt"},
        "input": {},
        "output": {"dir": "."},
    },
    "twostate-paper": {
        "signal": {
            "kind": "two_state",
            "t_start": -2.5,
            "t_end": 2.5,
            "step_s": 0.01,
            "noise_std": 0.3,
            "seed": 0,
        },
        "windows": {"width_s": 0.4, "spacing_s": 0.05, "truncation_radius": 3.0},
        "family": {
            "kind": "switch",
            "broadband_kind": "squared_exponential",
            "broadband_scale_s": 0.4,
            "osc_width_s": 0.4,
            "osc_freq_hz": 5.0,
        },
        "grid": {},
        "transition": {"kind": "two_state", "stay_probability": 0.98},
        "noise": {"lambda": 0.09},
        "estimator": {"kind": "mode"},
        "compare": {"baselines": "stationary_se,stationary_oscillatory"},
        "input": {},
        "output": {"dir": "."},
    },
    "meg-alpha": {
        "signal": {},
        "windows": {"width_s": 0.4, "spacing_s": 0.05, "truncation_radius": 3.0},
        "family": {
            "kind": "switch",
            "broadband_kind": "exponential",
            "broadband_scale_s": 0.3,
            "osc_width_s": 0.03,
            "osc_freq_hz": 10.0,
        },
        "grid": {},
        "transition": {"kind": "two_state", "stay_probability": 0.98},
        "noise": {"lambda": 0.5},
        "estimator": {"kind": "mode"},
        "compare": {"baselines": "stationary_exponential,stationary_oscillatory"},
        "input": {},
        "output": {"dir": "."},
    },
}

_STRING_KEYS = {"kind", "broadband_kind", "baselines", "path", "clean_path", "dir"}
_INT_KEYS = {"seed"}


def _coerce(key, raw):
    if key in _STRING_KEYS:
        return raw
    if key in _INT_KEYS:
        return int(raw)
    return float(raw)


def load_config(preset=None, config_path=None, seed=None, output_dir=None):
    """Merge preset, INI file, and flag overrides into one nested dict."""
    if preset is not None:
        if preset not in PRESETS:
            raise ConfigurationError(
                f"unknown preset {preset!r}; available: {', '.join(sorted(PRESETS))}"
            )
        cfg = copy.deepcopy(PRESETS[preset])
    else:
        cfg = {
            section: {}
            for section in (
                "signal", "windows", "family", "grid", "transition",
                "noise", "estimator", "compare", "input", "output",
            )
        }
        cfg["output"]["dir"] = "."
    if config_path is not None:
        parser = configparser.ConfigParser()
        read = parser.read(config_path)
        if not read:
            raise ConfigurationError(f"cannot read config file {config_path}")
        for section in parser.sections():
            if section not in cfg:
                raise ConfigurationError(f"unknown config section [{section}]")
            for key, raw in parser.items(section):
                try:
                    cfg[section][key] = _coerce(key, raw)
                except ValueError as exc:
                    raise ConfigurationError(
                        f"bad value for [{section}] {key}: {raw!r}"
                    ) from exc
    if seed is not None:
        cfg["signal"]["seed"] = int(seed)
    if output_dir is not None:
        cfg["output"]["dir"] = str(output_dir)
    return cfg


def build_family(cfg):
    fam = cfg["family"]
    kind = fam.get("kind")
    if kind == "frequency":
        return FrequencyFamily(d=fam["osc_width_s"])
    if kind == "switch":
        osc = Oscillatory(d=fam["osc_width_s"], freq_hz=fam["osc_freq_hz"])
        bb_kind = fam.get("broadband_kind", "squared_exponential")
        if bb_kind == "squared_exponential":
            broadband = SquaredExponential(delta=fam["broadband_scale_s"])
        elif bb_kind == "exponential":
            broadband = Exponential(ell=fam["broadband_scale_s"])
        else:
            raise ConfigurationError(f"unknown broadband kind {bb_kind!r}")
        return SwitchFamily(broadband=broadband, oscillatory=osc)
    raise ConfigurationError(f"unknown family kind {kind!r}")


def build_state_grid(cfg):
    fam_kind = cfg["family"].get("kind")
    if fam_kind == "switch":
        return StateGrid(np.array([0.0, 1.0]))
    grid = cfg["grid"]
    lo, hi, step = grid["freq_min_hz"], grid["freq_max_hz"], grid["freq_step_hz"]
    num = int(np.floor((hi - lo) / step + 1e-9)) + 1
    return StateGrid(lo + step * np.arange(num))


def build_transition(cfg, grid):
    tr = cfg["transition"]
    kind = tr.get("kind")
    if kind == "random_walk":
        return build_random_walk_transitions(
            grid, step_std=tr["step_std_hz"], autoregressive_coeff=tr.get("ar_coeff", 1.0)
        )
    if kind == "two_state":
        return build_two_state_transitions(tr.get("stay_probability", 0.98))
    raise ConfigurationError(f"unknown transition kind {kind!r}")


def build_model_config(cfg) -> CoupledModelConfig:
    grid = build_state_grid(cfg)
    return CoupledModelConfig(
        family=build_family(cfg),
        transition=build_transition(cfg, grid),
        window_spacing=cfg["windows"]["spacing_s"],
        window_width=cfg["windows"]["width_s"],
        truncation_radius=cfg["windows"].get("truncation_radius", 3.0),
        noise=NoiseModel(lam=cfg["noise"]["lambda"]),
        estimator=cfg["estimator"].get("kind", "mean"),
    )


def build_synthetic_spec(cfg):
    sig = cfg["signal"]
    kind = sig.get("kind")
    if kind == "chirp":
        return ChirpSpec(
            t_start=sig.get("t_start", 0.0),
            t_end=sig.get("t_end", 2.5),
            sample_rate_hz=sig.get("sample_rate_hz", 100.0),
            noise_std=sig.get("noise_std", 0.5),
            seed=sig.get("seed", 0),
        )
    if kind == "two_state":
        return TwoStateSpec(
            t_start=sig.get("t_start", -2.5),
            t_end=sig.get("t_end", 2.5),
            step=sig.get("step_s", 0.01),
            noise_std=sig.get("noise_std", 0.3),
            seed=sig.get("seed", 0),
        )
    raise ConfigurationError(
        "no synthetic signal configured; set [signal] kind = chirp | two_state"
    )


def write_csv(path, header, columns):
    columns = [np.asarray(c) for c in columns]
    with open(path, "w", newline="") as fh:
        fh.write(",".join(header) + "\n")
        for row in zip(*columns):
            fh.write(",".join(repr(float(v)) for v in row) + "\n")


def read_series_csv(path) -> TimeSeries:
    times, values = [], []
    with open(path, newline="") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if lineno == 1:
                if line.lower().replace(" ", "") != "time,value":
                    raise ValueError(f"{path}:1: expected header 'time,value', got {line!r}")
                continue
            if not line:
                continue
            parts = line.split(",")
            if len(parts) != 2:
                raise ValueError(f"{path}:{lineno}: expected two columns, got {len(parts)}")
            try:
                times.append(float(parts[0]))
                values.append(float(parts[1]))
            except ValueError as exc:
                raise ValueError(f"{path}:{lineno}: cannot parse {line!r}") from exc
    try:
        return TimeSeries(np.array(times), np.array(values))
    except ValueError as exc:
        raise ValueError(f"{path}: {exc}") from exc


def write_covariance_bin(path, matrix):
    matrix = np.ascontiguousarray(matrix, dtype="<f8")
    with open(path, "wb") as fh:
        fh.write(struct.pack("<Q", matrix.shape[0]))
        fh.write(matrix.tobytes())


def read_covariance_bin(path):
    with open(path, "rb") as fh:
        (n,) = struct.unpack("<Q", fh.read(8))
        data = np.frombuffer(fh.read(), dtype="<f8")
    return data.reshape(n, n)


def cmd_simulate(cfg):
    out = Path(cfg["output"]["dir"])
    out.mkdir(parents=True, exist_ok=True)
    spec = build_synthetic_spec(cfg)
    if isinstance(spec, ChirpSpec):
        data = gen_chirp(spec)
        truth = data.true_frequency
    else:
        data = gen_two_state(spec)
        truth = data.true_state
    write_csv(out / "clean.csv", ["time", "value"], [data.clean.times, data.clean.values])
    write_csv(out / "noisy.csv", ["time", "value"], [data.noisy.times, data.noisy.values])
    write_csv(out / "truth.csv", ["time", "value"], [data.clean.times, truth])
    return [out / "clean.csv", out / "noisy.csv", out / "truth.csv"]


def _resolve_input(cfg):
    path = cfg["input"].get("path")
    if not path:
        raise ConfigurationError("no input CSV configured; set [input] path")
    return read_series_csv(path)


def cmd_analyze(cfg):
    out = Path(cfg["output"]["dir"])
    out.mkdir(parents=True, exist_ok=True)
    series = _resolve_input(cfg)
    model = build_model_config(cfg)
    started = time.perf_counter()
    result = fit(series, model)
    runtime = time.perf_counter() - started

    write_csv(
        out / "posterior_mean.csv",
        ["time", "mean", "variance"],
        [series.times, result.regression.posterior_mean, result.regression.posterior_variance],
    )
    grid = model.transition.grid
    state_cols = [f"p_{v:g}" for v in grid.values]
    write_csv(
        out / "state_posterior.csv",
        ["segment_time"] + state_cols,
        [result.windows.support_points] + [result.marginals.gamma[:, a] for a in range(len(grid))],
    )
    write_csv(
        out / "point_estimates.csv",
        ["segment_time", "estimate"],
        [result.windows.support_points, result.point_estimates],
    )
    write_covariance_bin(out / "covariance.bin", result.global_cov.matrix)
    summary = {
        "log_evidence": result.marginals.log_evidence,
        "config": cfg,
        "runtime_s": runtime,
    }
    with open(out / "summary.json", "w") as fh:
        json.dump(summary, fh, indent=2, sort_keys=True)
        fh.write("\n")
    return result


def _baseline_regression(name, cfg, series):
    fam = cfg["family"]
    if name == "stationary_se":
        spec = SquaredExponential(delta=fam["broadband_scale_s"])
    elif name == "stationary_exponential":
        spec = Exponential(ell=fam["broadband_scale_s"])
    elif name == "stationary_oscillatory":
        spec = Oscillatory(d=fam["osc_width_s"], freq_hz=fam["osc_freq_hz"])
    elif name == "stationary_oscillatory_opt":
        grid = build_state_grid(cfg)
        specs = [Oscillatory(d=fam["osc_width_s"], freq_hz=f) for f in grid.values]
        return stationary_baseline_fit(
            series, specs, NoiseModel(lam=cfg["noise"]["lambda"])
        ).regression
    else:
        raise ConfigurationError(f"unknown baseline {name!r}")
    return stationary_fit(series, spec, NoiseModel(lam=cfg["noise"]["lambda"]))


def cmd_compare(cfg):
    out = Path(cfg["output"]["dir"])
    out.mkdir(parents=True, exist_ok=True)
    series = _resolve_input(cfg)
    clean_path = cfg["input"].get("clean_path")
    clean = read_series_csv(clean_path) if clean_path else None

    baselines = [
        b.strip()
        for b in cfg["compare"].get("baselines", "").split(",")
        if b.strip()
    ]
    methods = {}
    model = build_model_config(cfg)
    methods["coupled"] = fit(series, model).regression
    for name in baselines:
        methods[name] = _baseline_regression(name, cfg, series)

    report = {"methods": {}}
    for name, regression in methods.items():
        csv_name = f"{name}_mean.csv"
        write_csv(
            out / csv_name,
            ["time", "mean"],
            [series.times, regression.posterior_mean],
        )
        entry = {"mean_csv": csv_name}
        if clean is not None:
            entry["correlation"] = pearson_correlation(
                regression.posterior_mean, clean.values
            )
        report["methods"][name] = entry
    with open(out / "comparison.json", "w") as fh:
        json.dump(report, fh, indent=2, sort_keys=True)
        fh.write("\n")
    return report


def build_parser():
    parser = argparse.ArgumentParser(
        prog="lcgp",
        description="Nonstationary time-series analysis with locally coupled GP regression.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name in ("simulate", "analyze", "compare"):
        cmd = sub.add_parser(name)
        cmd.add_argument("--config", type=str, default=None, help="INI config file")
        cmd.add_argument("--preset", type=str, default=None, help="named parameter preset")
        cmd.add_argument("--seed", type=int, default=None, help="noise seed override")
        cmd.add_argument("--output-dir", type=str, default=None)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = load_config(args.preset, args.config, args.seed, args.output_dir)
        if args.command == "simulate":
            cmd_simulate(cfg)
        elif args.command == "analyze":
            cmd_analyze(cfg)
        else:
            cmd_compare(cfg)
    except Exception as exc:
        print(f"lcgp {args.command}: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
