"""Command line entry point: ``noisyqa <subcommand>`` or ``python3 -m noisyqa``."""

from __future__ import annotations

import argparse
import dataclasses
import json
import logging
import sys

from .experiments import (
    PRESETS,
    BudgetExceededError,
    ExperimentConfig,
    convergence_check,
    gap_vs_fidelity,
    preset,
    run_experiment,
    success_scatter,
    sweep_gamma,
)

log = logging.getLogger("noisyqa")

_LIST_FIELDS = {"channels": str, "gammas": float, "methods": str}


def _config_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help="JSON file mirroring the experiment config; flags override it")
    p.add_argument("--seed", dest="base_seed", type=int, help="seed of instance 0 (instance k uses seed+k)")
    p.add_argument("--out", dest="output_dir", help="output directory")
    p.add_argument("--workers", type=int, help="worker processes")
    for f in dataclasses.fields(ExperimentConfig):
        if f.name in ("base_seed", "output_dir", "workers"):
            continue
        flag = "--" + f.name.replace("_", "-")
        if f.name in _LIST_FIELDS:
            p.add_argument(flag, dest=f.name, nargs="+", type=_LIST_FIELDS[f.name])
        elif f.type in ("bool", bool):
            p.add_argument(flag, dest=f.name, action=argparse.BooleanOptionalAction, default=None)
        else:
            conv = {"int": int, "float": float, "str": str}[str(f.type)]
            p.add_argument(flag, dest=f.name, type=conv)


def _overrides(args) -> dict:
    names = {f.name for f in dataclasses.fields(ExperimentConfig)}
    return {k: v for k, v in vars(args).items() if k in names and v is not None}


def _build_config(args) -> ExperimentConfig:
    base = {}
    if args.config:
        with open(args.config) as fh:
            base = json.load(fh)
    return ExperimentConfig.from_dict({**base, **_overrides(args)})


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="noisyqa", description="PQA vs CQA annealing under Lindblad noise")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)
    for name, helptext in [
        ("run", "full protocol: per-run JSON, aggregate CSV, manifest"),
        ("gap-vs-fidelity", "minimum-gap ratio against noiseless success ratio per instance"),
        ("sweep-gamma", "success probability against noise rate"),
        ("convergence-check", "step-doubling self test on one instance"),
    ]:
        sp = sub.add_parser(name, help=helptext)
        _config_flags(sp)
        if name == "convergence-check":
            sp.add_argument("--instance", type=int, default=0)
            sp.add_argument("--tol", type=float, default=1e-6)
    sp = sub.add_parser("preset", help="named figure configuration")
    sp.add_argument("name", choices=sorted(PRESETS))
    sp.add_argument("--gamma", type=float, help="noise rate, required by fig1_3 and fig4")
    _config_flags(sp)
    return p


def _summarise(proto: str, result) -> int:
    """Print a short summary; return the exit status."""
    if proto in ("run",):
        for k, v in sorted(result.paths.items()):
            print(f"{k}: {v}")
        nfail = sum(r.failed for r in result.records.values())
        print(f"runs: {len(result.records)}  failed: {nfail}")
        return 1 if nfail else 0
    if proto == "convergence-check":
        bad = [r for r in result if not r["passed"]]
        for r in result:
            print(f"{r['method']} {r['channel']} g={r['gamma']:g} {r['observable']}: "
                  f"{r['max_abs_diff']:.3e} {'ok' if r['passed'] else 'FAIL'}")
        return 1 if bad else 0
    for r in result:
        print(", ".join(f"{k}={v}" for k, v in r.items()))
    failed = [r for r in result if r.get("failed")]
    return 1 if failed else 0


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        if args.command == "preset":
            base = {}
            if args.config:
                with open(args.config) as fh:
                    base = json.load(fh)
            proto, cfg = preset(args.name, args.gamma, **{**base, **_overrides(args)})
        else:
            proto, cfg = args.command, _build_config(args)
    except (ValueError, KeyError, BudgetExceededError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2

    if proto == "convergence-check":
        result = convergence_check(cfg, instance=args.instance, tol=args.tol)
    elif proto == "scatter":
        result = success_scatter(cfg)
    elif proto == "gap-vs-fidelity":
        result = gap_vs_fidelity(cfg)
    elif proto == "sweep-gamma":
        result = sweep_gamma(cfg)
    else:
        result = run_experiment(cfg)
    return _summarise(proto, result)


if __name__ == "__main__":
    sys.exit(main())
