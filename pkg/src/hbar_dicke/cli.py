"""Command-line front end.

Every subcommand writes plot-ready CSV or JSON and, next to it, a run manifest
(``<output>.manifest.json``) recording the command, its parameters, the SHA-256
of the device file and the tool version. ``hbar-dicke replay`` re-runs a
manifest and reproduces the output byte for byte.

Exit codes: 0 success, 1 usage, 2 validation, 3 numerical failure. Error
lines are printed to stderr prefixed with ``error:``.
"""

import argparse
import csv
import hashlib
import io
import json
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .device import SCHEMA_PATH, ClusterSpec, intra_cluster_spacings, load_device_config
from .dicke import (
    bright_mode_frequency,
    collective_couplings,
    fidelity_exact,
    purity_analytic,
    static_dicke_population,
    tau_min_purity,
    tau_timed,
    tau_timed_exact,
)
from .dynamics import (
    DEFAULT_T_MAX_US,
    DEFAULT_T_POINTS,
    RABI_CSV_HEADER,
    TRACE_CSV_HEADER,
    simulate_rabi_grid,
    simulate_trace,
)
from .errors import ConfigParseError, HbarDickeError, NumericalError, ValidationError
from .readout import correct_constrained, invert_unconstrained, probability_vector
from .spectroscopy import CSV_HEADER as SPECTRUM_CSV_HEADER
from .spectroscopy import sweep_spectrum

EXIT_OK, EXIT_USAGE, EXIT_VALIDATION, EXIT_NUMERICAL = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def fmt(x):
    """Full-precision scientific notation for data columns."""
    return f"{float(x):.16e}"


def csv_text(header, rows):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([v if isinstance(v, (int, np.integer, str)) else fmt(v) for v in row])
    return buf.getvalue()


def json_text(obj):
    return json.dumps(obj, indent=2, sort_keys=True, allow_nan=False) + "\n"


def _floats(a):
    return [None if not np.isfinite(v) else float(v) for v in np.asarray(a, dtype=float)]


# -- shared argument handling --------------------------------------------------

def _config_digest(path):
    if path is None:
        return None
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


def _load_config(args):
    if not args.config:
        raise UsageError(f"--config is required (device file format: see {SCHEMA_PATH} and README)")
    return load_device_config(args.config)


def _cluster(args):
    cfg = _load_config(args)
    if not args.cluster:
        raise UsageError("--cluster is required; available clusters: " + ", ".join(c.name for c in cfg.clusters))
    return cfg, cfg.cluster(args.cluster)


def _positive_int(minimum):
    def parse(text):
        try:
            value = int(text)
        except ValueError:
            raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}")
        if value < minimum:
            raise argparse.ArgumentTypeError(f"must be >= {minimum}, got {value}")
        return value
    return parse


def _float_list(text):
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}")


# -- subcommands ---------------------------------------------------------------

def cmd_spectroscopy(args):
    _, cluster = _cluster(args)
    sweep = sweep_spectrum(cluster, args.fmin, args.fmax, args.points, threads=args.threads)
    return csv_text(SPECTRUM_CSV_HEADER, sweep.csv_rows())


def _t1(args, cfg, cluster):
    if args.t1_us is not None:
        return args.t1_us
    if getattr(args, "device_t1", False):
        t1 = cfg.qubit_for(cluster).t1
        if t1 is None:
            raise ValidationError(f"qubit {cluster.qubit} has no t1_us in the device file")
        return t1
    return None


def cmd_rabi(args):
    cfg, cluster = _cluster(args)
    grid = simulate_rabi_grid(
        cluster, args.fmin, args.fmax, args.fpoints,
        t_max=args.tmax_us, t_points=args.tsteps, t1=_t1(args, cfg, cluster), threads=args.threads,
    )
    if args.format == "json":
        return json_text({
            "cluster": cluster.name,
            "envelope_applied": grid.envelope_applied,
            "qubit_frequencies_ghz": _floats(grid.qubit_frequencies),
            "times_us": _floats(grid.times),
            "p_excited": [_floats(row) for row in grid.p_excited],
        })
    return csv_text(RABI_CSV_HEADER, grid.csv_rows())


def cmd_trace(args):
    cfg, cluster = _cluster(args)
    fq = args.qubit_frequency if args.qubit_frequency is not None else bright_mode_frequency(cluster)
    trace = simulate_trace(cluster, fq, args.tmax_us, args.tsteps, t1=_t1(args, cfg, cluster))
    return csv_text(TRACE_CSV_HEADER, zip(trace.times, trace.p_excited, trace.purity))


def _dicke_cluster(args):
    if args.frequencies is not None or args.couplings is not None:
        if args.frequencies is None or args.couplings is None:
            raise UsageError("--frequencies and --couplings must be given together")
        if len(args.frequencies) != len(args.couplings):
            raise UsageError("--frequencies and --couplings must have the same length")
        return ClusterSpec.from_arrays(args.frequencies, args.couplings, name="synthetic")
    _, cluster = _cluster(args)
    return cluster


def cmd_dicke(args):
    if not 0 < args.fidelity_floor < 1:
        raise ValidationError("--fidelity-floor must lie in (0, 1)")
    cluster = _dicke_cluster(args)
    fq = args.qubit_frequency if args.qubit_frequency is not None else bright_mode_frequency(cluster)
    coll = collective_couplings(cluster)
    if not coll.g_eff > 0:
        raise ValidationError("cluster couplings must be positive")
    trace = simulate_trace(cluster, fq, args.tmax_us, args.tsteps)
    t = trace.times
    t_min, p_min = trace.first_purity_minimum()

    spread = float(np.ptp(cluster.frequencies))
    timed = {"closed_form_mean_spacing_us": None, "numeric_root_exact_us": None, "mean_spacing_mhz": None}
    if cluster.n_modes >= 2 and spread > 0:
        spacing = float(np.mean(np.abs(intra_cluster_spacings(cluster))))
        timed["mean_spacing_mhz"] = spacing
        timed["closed_form_mean_spacing_us"] = tau_timed(cluster.n_modes, spacing, args.fidelity_floor)
        timed["numeric_root_exact_us"] = tau_timed_exact(cluster, args.fidelity_floor, fq)

    report = {
        "cluster": cluster.name,
        "n_modes": cluster.n_modes,
        "qubit_frequency_ghz": fq,
        "g_eff_mhz": coll.g_eff,
        "g_bar_mhz": coll.g_bar,
        "tau_min_purity_us": {
            "g_eff": tau_min_purity(coll, use_mean=False),
            "sqrt_n_g_bar": tau_min_purity(coll, use_mean=True),
        },
        "fidelity_floor": args.fidelity_floor,
        "tau_timed": timed,
        "simulated_purity_minimum": {"time_us": t_min, "purity": p_min},
        "curves": {
            "time_us": _floats(t),
            "fidelity": _floats(fidelity_exact(cluster, fq, t)),
            "purity_analytic": _floats(purity_analytic(coll.g_eff, t)),
            "purity_simulated": _floats(trace.purity),
            "p_excited_simulated": _floats(trace.p_excited),
            "static_dicke_population": _floats(static_dicke_population(cluster.n_modes, coll.g_bar, t))
            if coll.g_bar > 0 else None,
        },
    }
    return json_text(report)


def _read_noisy_csv(path):
    rows = []
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        fields = set(reader.fieldnames or ())
        if {"p0", "p1"} <= fields:
            keys, counts = ("p0", "p1"), False
        elif {"n0", "n1"} <= fields:
            keys, counts = ("n0", "n1"), True
        else:
            raise ValidationError(f"{path}: expected columns p0,p1 or n0,n1")
        for line, rec in enumerate(reader, start=2):
            try:
                v = np.array([float(rec[k]) for k in keys])
            except ValueError:
                raise ValidationError(f"{path}:{line}: non-numeric entry")
            rows.append(_counts_to_probabilities(v) if counts else probability_vector(v))
    return rows


def _counts_to_probabilities(counts):
    counts = np.asarray(counts, dtype=float)
    if np.any(counts < 0) or counts.sum() <= 0:
        raise ValidationError("counts must be non-negative with a positive total")
    return counts / counts.sum()


def cmd_readout(args):
    cfg = _load_config(args)
    if args.qubit not in cfg.response_matrices:
        raise ValidationError(
            f"no response matrix for qubit {args.qubit!r}; available: {', '.join(cfg.response_matrices)}"
        )
    m = cfg.response_matrices[args.qubit]
    if args.input:
        noisy_rows = _read_noisy_csv(args.input)
        out = []
        for v in noisy_rows:
            out.append(tuple(v) + tuple(correct_constrained(m, v)) + tuple(invert_unconstrained(m, v)))
        header = ("p0_noisy", "p1_noisy", "p0_corrected", "p1_corrected", "p0_inverse", "p1_inverse")
        return csv_text(header, out)
    if args.counts is not None:
        if len(args.counts) != 2:
            raise UsageError("--counts takes two values: n0,n1")
        noisy = _counts_to_probabilities(args.counts)
    elif args.p0 is not None and args.p1 is not None:
        noisy = probability_vector([args.p0, args.p1])
    else:
        raise UsageError("give --p0 and --p1, --counts, or --input")
    return json_text({
        "qubit": args.qubit,
        "noisy": _floats(noisy),
        "corrected": _floats(correct_constrained(m, noisy)),
        "unconstrained_inverse": _floats(invert_unconstrained(m, noisy)),
    })


COMMANDS = {
    "spectroscopy": cmd_spectroscopy,
    "rabi": cmd_rabi,
    "trace": cmd_trace,
    "dicke": cmd_dicke,
    "readout": cmd_readout,
}


# -- manifests -----------------------------------------------------------------

def manifest_path_for(output):
    return Path(str(output) + ".manifest.json")


def build_manifest(command, args):
    params = {k: v for k, v in sorted(vars(args).items()) if k not in ("command", "manifest")}
    return {
        "command": command,
        "parameters": params,
        "config_digest": _config_digest(getattr(args, "config", None)),
        "tool_version": __version__,
    }


def run(command, args):
    text = COMMANDS[command](args)
    manifest = build_manifest(command, args)
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
        manifest_file = manifest_path_for(args.output)
    else:
        sys.stdout.write(text)
        manifest_file = Path(args.manifest) if args.manifest else None
    if manifest_file is not None:
        manifest_file.write_text(json_text(manifest), encoding="utf-8")
    return text


def cmd_replay(args):
    manifest = json.loads(Path(args.manifest_file).read_text(encoding="utf-8"))
    command = manifest.get("command")
    if command not in COMMANDS:
        raise ValidationError(f"manifest names unknown command {command!r}")
    params = dict(manifest["parameters"])
    digest = _config_digest(params.get("config"))
    if digest != manifest.get("config_digest"):
        raise ValidationError("device file content differs from the manifest's config_digest")
    if manifest.get("tool_version") != __version__:
        print(f"warning: manifest written by version {manifest.get('tool_version')}, running {__version__}",
              file=sys.stderr)
    if args.output is not None:
        params["output"] = args.output
    ns = argparse.Namespace(**params, command=command, manifest=None)
    return run(command, ns)


# -- parser --------------------------------------------------------------------

def build_parser():
    p = _Parser(prog="hbar-dicke", description=(
        "Spectroscopy, vacuum Rabi dynamics, Dicke analytics and readout correction "
        "for a qubit coupled to clusters of acoustic modes."))
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    def common(sp, config=True, cluster=True):
        if config:
            sp.add_argument("--config", help=f"device file (schema: {SCHEMA_PATH})")
        if cluster:
            sp.add_argument("--cluster", help="cluster name from the device file")
        sp.add_argument("-o", "--output", help="output file (default: stdout)")
        sp.add_argument("--manifest", help="manifest path when writing to stdout")

    def time_args(sp):
        sp.add_argument("--tmax-us", type=float, default=DEFAULT_T_MAX_US)
        sp.add_argument("--tsteps", type=_positive_int(2), default=DEFAULT_T_POINTS)

    def t1_args(sp):
        sp.add_argument("--t1-us", type=float, help="apply an exp(-t/T1) envelope to the excited population")
        sp.add_argument("--device-t1", action="store_true", help="take T1 from the cluster's qubit")

    sp = sub.add_parser("spectroscopy", help="dressed transition lines over a qubit-frequency sweep")
    common(sp)
    sp.add_argument("--fmin", type=float, required=True, help="GHz")
    sp.add_argument("--fmax", type=float, required=True, help="GHz")
    sp.add_argument("--points", type=_positive_int(2), default=401)
    sp.add_argument("--threads", type=_positive_int(1), default=1)

    sp = sub.add_parser("rabi", help="vacuum Rabi grid over qubit frequency and time")
    common(sp)
    sp.add_argument("--fmin", type=float, required=True, help="GHz")
    sp.add_argument("--fmax", type=float, required=True, help="GHz")
    sp.add_argument("--fpoints", type=_positive_int(2), default=81)
    time_args(sp)
    t1_args(sp)
    sp.add_argument("--threads", type=_positive_int(1), default=1)
    sp.add_argument("--format", choices=("csv", "json"), default="csv")

    sp = sub.add_parser("trace", help="excited population and purity versus time")
    common(sp)
    sp.add_argument("--qubit-frequency", type=float, help="GHz (default: coupling-weighted cluster centre)")
    time_args(sp)
    t1_args(sp)

    sp = sub.add_parser("dicke", help="collective-coupling and timed-Dicke report")
    common(sp)
    sp.add_argument("--frequencies", type=_float_list, help="synthetic cluster mode frequencies, GHz")
    sp.add_argument("--couplings", type=_float_list, help="synthetic cluster couplings, MHz")
    sp.add_argument("--qubit-frequency", type=float, help="GHz (default: coupling-weighted cluster centre)")
    sp.add_argument("--fidelity-floor", type=float, default=0.9)
    time_args(sp)

    sp = sub.add_parser("readout", help="readout correction with the qubit's response matrix")
    common(sp, cluster=False)
    sp.add_argument("--qubit", required=True)
    sp.add_argument("--p0", type=float)
    sp.add_argument("--p1", type=float)
    sp.add_argument("--counts", type=_float_list, help="n0,n1")
    sp.add_argument("--input", help="CSV with columns p0,p1 or n0,n1")

    sp = sub.add_parser("replay", help="re-run a manifest")
    sp.add_argument("manifest_file")
    sp.add_argument("-o", "--output", help="write here instead of the manifest's output path")
    return p


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command is None:
            raise UsageError("a subcommand is required")
        if args.command == "replay":
            cmd_replay(args)
        else:
            run(args.command, args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ValidationError, ConfigParseError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except (NumericalError, ArithmeticError, np.linalg.LinAlgError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except HbarDickeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
