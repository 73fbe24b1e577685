"""Command-line front end: encode, eval, report, sample.

All input and output is JSON.  Exit codes: 0 success, 2 input validation,
3 register cap exceeded, 4 expression (parse or evaluation) errors.  Output
is byte-identical for identical input and seed.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

import numpy as np

from . import serialize
from .analysis import entanglement_report
from .errors import ResourceLimitError
from .exprparser import Environment, EvalError, ParseError, evaluate, parse
from .fuzzy import FuzzySet
from .qfs import QuantumFuzzySet, encode, value_marginals
from .statevec import DEFAULT_QUBIT_CAP, bloch_point, sample_distribution

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_RESOURCE = 3
EXIT_EXPRESSION = 4


@dataclass(frozen=True)
class PipelineSpec:
    """One batch evaluation: named sets, an expression, and run parameters."""

    universe_size: int
    sets: dict[str, FuzzySet]
    expression: str
    mode: str = "classical"
    seed: int = 0
    trials: int = 10000
    qubit_cap: int = DEFAULT_QUBIT_CAP


def _pipeline_from_dict(d: object) -> PipelineSpec:
    if not isinstance(d, dict):
        raise ValueError(f"pipeline spec must be a JSON object, got {type(d).__name__}")
    for key in ("universe_size", "sets", "expression"):
        if key not in d:
            raise ValueError(f"pipeline spec is missing the {key!r} field")
    n = int(d["universe_size"])
    raw_sets = d["sets"]
    if not isinstance(raw_sets, dict):
        raise ValueError("sets must be an object mapping names to membership arrays")
    sets = {}
    for name, memberships in raw_sets.items():
        if not isinstance(memberships, (list, tuple)):
            raise ValueError(f"set {name!r} must be a membership array")
        f = FuzzySet(np.array(memberships, dtype=np.float64))
        if f.universe_size != n:
            raise ValueError(
                f"set {name!r} has {f.universe_size} memberships, expected {n}"
            )
        sets[name] = f
    return PipelineSpec(
        universe_size=n,
        sets=sets,
        expression=str(d["expression"]),
        mode=str(d.get("mode", "classical")),
        seed=int(d.get("seed", 0)),
        trials=int(d.get("trials", 10000)),
        qubit_cap=int(d.get("qubit_cap", DEFAULT_QUBIT_CAP)),
    )


def _read_input(path: str | None) -> str:
    if path is None or path == "-":
        return sys.stdin.read()
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _write_output(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text + "\n")
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")


def _load_json(text: str) -> object:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValueError(f"malformed JSON: {exc}") from None


def _cmd_encode(args: argparse.Namespace) -> str:
    f = serialize.fuzzy_set_from_dict(_load_json(_read_input(args.input)))
    q = encode(f, cap=args.qubit_cap)
    return serialize.dumps(serialize.qfs_to_dict(q))


def _cmd_eval(args: argparse.Namespace) -> str:
    spec = _pipeline_from_dict(_load_json(_read_input(args.input)))
    mode = args.mode if args.mode is not None else spec.mode
    seed = args.seed if args.seed is not None else spec.seed
    trials = args.trials if args.trials is not None else spec.trials
    cap = args.qubit_cap if args.qubit_cap is not None else spec.qubit_cap
    env = Environment(
        universe_size=spec.universe_size,
        bindings=spec.sets,
        mode=mode,
        seed=seed,
        trials=trials,
        qubit_cap=cap,
    )
    result = evaluate(parse(spec.expression), env)
    if isinstance(result, FuzzySet):
        payload = {
            "mode": "classical",
            "universe_size": result.universe_size,
            "memberships": [float(m) for m in result.memberships],
        }
    elif isinstance(result, QuantumFuzzySet):
        report = entanglement_report(result)
        payload = {
            "mode": "quantum",
            "universe_size": result.universe_size,
            "total_qubits": result.state.n_qubits,
            "layout": [list(seg) for seg in result.layout.segments],
            "value_marginals": [float(p) for p in value_marginals(result)],
            "entanglement": serialize.report_to_dict(report),
        }
    elif mode == "classical":
        payload = {
            "mode": "classical",
            "distribution": serialize.distribution_to_dict(result),
        }
    else:
        payload = {
            "mode": "quantum",
            "trials": trials,
            "counts": serialize.distribution_to_dict(result),
        }
    return serialize.dumps(payload)


def _cmd_report(args: argparse.Namespace) -> str:
    q = serialize.qfs_from_dict(_load_json(_read_input(args.input)))
    report = entanglement_report(q)
    bloch = None
    if report.is_product:
        from .statevec import factor_product_state

        factors = factor_product_state(q.state)
        assert factors is not None
        bloch = [bloch_point(f) for f in factors]
    return serialize.dumps(serialize.report_to_dict(report, bloch))


def _cmd_sample(args: argparse.Namespace) -> str:
    shots = args.shots if args.shots is not None else 10000
    if shots < 1:
        raise ValueError(f"shots must be >= 1, got {shots}")
    q = serialize.qfs_from_dict(_load_json(_read_input(args.input)))
    rng = np.random.default_rng(args.seed if args.seed is not None else 0)
    counts = sample_distribution(q.state, rng, shots)
    payload = {"shots": shots, "counts": serialize.distribution_to_dict(counts)}
    return serialize.dumps(payload)


def _nonneg_int(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"must be >= 0, got {text}")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qfuzzy",
        description="Simulate fuzzy sets on a quantum register.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser, cap_default: int | None) -> None:
        p.add_argument("--input", default=None, help="input path (default: stdin)")
        p.add_argument("--output", default=None, help="output path (default: stdout)")
        p.add_argument(
            "--qubit-cap",
            type=_nonneg_int,
            default=cap_default,
            help="largest register to allocate (default 24)",
        )

    p_encode = sub.add_parser("encode", help="fuzzy set JSON -> register state JSON")
    common(p_encode, DEFAULT_QUBIT_CAP)
    p_encode.set_defaults(handler=_cmd_encode)

    p_eval = sub.add_parser("eval", help="evaluate a pipeline spec")
    common(p_eval, None)
    p_eval.add_argument("--mode", choices=("classical", "quantum"), default=None)
    p_eval.add_argument("--seed", type=_nonneg_int, default=None)
    p_eval.add_argument(
        "--trials", "--shots", dest="trials", type=_nonneg_int, default=None,
        help="trials for quantum DEFUZ (default 10000)",
    )
    p_eval.set_defaults(handler=_cmd_eval)

    p_report = sub.add_parser("report", help="state JSON -> entanglement report")
    common(p_report, DEFAULT_QUBIT_CAP)
    p_report.set_defaults(handler=_cmd_report)

    p_sample = sub.add_parser("sample", help="state JSON -> measurement counts")
    common(p_sample, DEFAULT_QUBIT_CAP)
    p_sample.add_argument("--seed", type=_nonneg_int, default=None)
    p_sample.add_argument(
        "--shots", "--trials", dest="shots", type=_nonneg_int, default=None,
        help="number of measurements (default 10000)",
    )
    p_sample.set_defaults(handler=_cmd_sample)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        text = args.handler(args)
    except ResourceLimitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except (ParseError, EvalError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_EXPRESSION
    except (ValueError, KeyError, TypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    _write_output(args.output, text)
    return EXIT_OK


if __name__ == "__main__":
    raise SystemExit(main())
