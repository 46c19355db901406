"""Command line: ``generate``, ``train``, ``evaluate`` and ``curve``.

Exit codes: 0 success, 1 usage error, 2 runtime failure.
"""
import argparse
import logging
import sys

import yaml

from . import classifiers
from .data import generate_banana, load_csv, save_csv
from .evaluation import ProbeConfig, boundary_signed_distances, save_report_csv
from .experiment import ExperimentConfig, default_config_text, emit_plot, load_config, \
    run_learning_curve


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _params(pairs):
    out = {}
    for item in pairs or []:
        key, sep, value = item.partition("=")
        if not sep or not key:
            raise UsageError(f"--param expects key=value, got {item!r}")
        out[key] = yaml.safe_load(value)
    return out


def cmd_generate(args):
    data = generate_banana(args.n_per_class, args.noise, args.seed, args.radius)
    save_csv(data, args.output)
    print(f"wrote {data.n} objects to {args.output}")


def cmd_train(args):
    data = load_csv(args.data)
    params = _params(args.param)
    if args.classifier not in classifiers.TRAINERS:
        raise UsageError(f"unknown classifier {args.classifier!r}; "
                         f"choose from {', '.join(sorted(classifiers.TRAINERS))}")
    model = classifiers.train(args.classifier, data, seed=args.seed, **params)
    classifiers.save_model(model, args.output)
    print(f"trained {model.kind} on {data.n} objects -> {args.output}")


def cmd_evaluate(args):
    model = classifiers.load_model(args.model)
    test = load_csv(args.test)
    reference = load_csv(args.reference) if args.reference else None
    probe = ProbeConfig(probes_per_test_object=args.probes, neighborhood_scale=args.scale,
                        k_opposite=args.k, interpolation_count=args.interpolation,
                        bisection_tolerance=args.tolerance, seed=args.seed)
    report = boundary_signed_distances(model, test, probe, reference=reference)
    save_report_csv(report, args.output)
    flags = ";".join(report.flags()) or "complete"
    print(f"e_S={report.e_s:.6g} eta={report.eta:.6g} d_max={report.d_max:.6g} flags={flags}")


def cmd_curve(args):
    if args.print_default_config:
        sys.stdout.write(default_config_text())
        return
    config = load_config(args.config) if args.config else \
        ExperimentConfig.from_dict(yaml.safe_load(default_config_text()))
    if args.jobs:
        config.n_jobs = args.jobs
    curve = run_learning_curve(config)
    curve.to_csv(args.csv)
    print(f"wrote {args.csv}")
    if args.plot:
        emit_plot(curve, args.plot)
        print(f"wrote {args.plot}")


def build_parser():
    parser = _Parser(prog="domainlearn", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("generate", help="banana data to CSV")
    p.add_argument("-n", "--n-per-class", type=int, default=50)
    p.add_argument("--noise", type=float, default=1.0)
    p.add_argument("--radius", type=float, default=5.0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("train", help="CSV + classifier id -> model file")
    p.add_argument("data")
    p.add_argument("-c", "--classifier", required=True)
    p.add_argument("-p", "--param", action="append", metavar="KEY=VALUE")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=cmd_train)

    p = sub.add_parser("evaluate", help="model + test CSV -> per-object report CSV")
    p.add_argument("model")
    p.add_argument("test")
    p.add_argument("-o", "--output", required=True)
    p.add_argument("--reference", help="CSV standing in for the domains when computing d_max")
    p.add_argument("--probes", type=int, default=200)
    p.add_argument("--scale", type=float, default=2.0)
    p.add_argument("-k", type=int, default=5)
    p.add_argument("--interpolation", type=int, default=3)
    p.add_argument("--tolerance", type=float, default=None)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("curve", help="learning curves from a YAML config")
    p.add_argument("config", nargs="?", help="YAML config (default: the packaged banana setup)")
    p.add_argument("--csv", default="learning_curve.csv")
    p.add_argument("--plot", default="learning_curve.svg")
    p.add_argument("--jobs", type=int, default=0)
    p.add_argument("--print-default-config", action="store_true")
    p.set_defaults(func=cmd_curve)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        args.func(args)
    except UsageError as exc:
        print(f"domainlearn: error: {exc}", file=sys.stderr)
        return 1
    except (OSError, ValueError, RuntimeError) as exc:
        print(f"domainlearn: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
