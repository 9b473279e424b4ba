"""Batch command-line front-end.

Subcommands: ``gate`` (per-input success tables for gates built from
correlation resources), ``thresholds`` (beta_k / nonlinearity / gap sweeps),
``compile`` / ``verify`` (GHZ measurement programs), ``inequality``
(contextuality certificates), and ``reliable`` (multiplexed-circuit
experiments). Exit codes: 0 success, 1 verification or certification
failure, 2 usage or file-format error. Identical invocations produce
byte-identical output; every stochastic run requires an explicit seed.

Relative ``--output`` paths are resolved against ``L2MBQC_OUTPUT_DIR``
when that variable is set.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from fractions import Fraction

from . import boolfn, gates, ghzc, mbqc, reliability

OUTPUT_DIR_ENV = "L2MBQC_OUTPUT_DIR"


def _fmt(x: float) -> str:
    return f"{float(x):.9g}"


def _frac(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def _resolve_output(path: str | None) -> str | None:
    if path is None:
        return None
    base = os.environ.get(OUTPUT_DIR_ENV)
    if base and not os.path.isabs(path):
        return os.path.join(base, path)
    return path


def _write(path: str | None, text: str):
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def _csv(lines: list[list[str]], comments: list[str] | None = None) -> str:
    out = []
    for c in comments or []:
        out.append(f"# {c}")
    out.extend(",".join(cells) for cells in lines)
    return "\n".join(out) + "\n"


@dataclass(frozen=True)
class RunConfig:
    """Validated invocation: subcommand plus its parameters and output sink."""

    subcommand: str
    params: dict
    output: str | None
    format: str


def _read_function(path: str) -> boolfn.BooleanFunction:
    with open(path, "r", encoding="utf-8") as fh:
        return boolfn.from_text(fh.read())


def _read_program(path: str) -> ghzc.GhzProgram:
    with open(path, "r", encoding="utf-8") as fh:
        return ghzc.program_from_config(json.load(fh))


# ---------------------------------------------------------------------------
# subcommands

_NAMED_TARGETS = ("and", "nand", "xor", "maj", "xnand")


def _build_gate(name: str, resource: str, k: int, epsilon: float) -> gates.NoisyGate:
    if resource == "chsh":
        base = gates.chsh_and_gate()
    elif resource == "noncontextual-quarter":
        base = gates.noncontextual_and_gate()
    elif resource == "ghz":
        target = boolfn.make_named(name, k)
        program = ghzc.compile_function(target)
        report = mbqc.run_exact(ghzc.run_as_l2program(program, epsilon), target)
        return gates.gate_from_report(target, report)
    else:
        raise ValueError(f"unknown resource {resource!r}")
    if name == "and":
        return base
    if name == "maj" and k == 3:
        return gates.maj3_from_and(base)
    if name == "xnand":
        return gates.xnand_from_and(base)
    raise ValueError(f"gate {name!r} cannot be built from resource {resource!r}")


def cmd_gate(cfg: RunConfig) -> int:
    p = cfg.params
    gate = _build_gate(p["name"], p["resource"], p["k"], p["epsilon"])
    eps = gate.epsilon
    classification = (
        f"epsilon-noisy (epsilon={_fmt(eps)})" if eps is not None else "not epsilon-noisy"
    )
    if cfg.format == "json":
        payload = {
            "gate": p["name"],
            "resource": p["resource"],
            "classification": classification,
            "epsilon": eps,
            "rows": [
                {
                    "input": format(i, f"0{gate.k}b")[::-1],
                    "success": 1.0 - e,
                    "error": e,
                }
                for i, e in enumerate(gate.errors)
            ],
        }
        _write(cfg.output, json.dumps(payload, indent=2, sort_keys=True) + "\n")
    else:
        lines = [["input", "success", "error"]]
        for i, e in enumerate(gate.errors):
            bits = "".join(str((i >> j) & 1) for j in range(gate.k))
            lines.append([bits, _fmt(1.0 - e), _fmt(e)])
        _write(cfg.output, _csv(lines, comments=[f"classification: {classification}"]))
    return 0


def cmd_thresholds(cfg: RunConfig) -> int:
    kmax = cfg.params["kmax"]
    if kmax % 2 == 0:
        raise ValueError(f"kmax must be odd, got {kmax}")
    rows = gates.threshold_sweep(kmax)
    betas = [r["beta"] for r in rows]
    gaps = [r["gap"] for r in rows]
    beta_increasing = all(b1 < b2 for b1, b2 in zip(betas, betas[1:]))
    gap_decreasing = all(g1 > g2 for g1, g2 in zip(gaps, gaps[1:]))
    if cfg.format == "json":
        payload = {
            "beta_strictly_increasing": beta_increasing,
            "gap_strictly_decreasing": gap_decreasing,
            "rows": [
                {
                    "k": r["k"],
                    "beta": _frac(r["beta"]),
                    "beta_float": float(r["beta"]),
                    "nu_over_2k": _frac(r["nu_over_2k"]),
                    "nu_over_2k_float": float(r["nu_over_2k"]),
                    "gap": _frac(r["gap"]),
                    "gap_float": float(r["gap"]),
                }
                for r in rows
            ],
        }
        _write(cfg.output, json.dumps(payload, indent=2, sort_keys=True) + "\n")
    else:
        lines = [
            ["k", "beta", "beta_float", "nu_over_2k", "nu_over_2k_float", "gap", "gap_float"]
        ]
        for r in rows:
            lines.append(
                [
                    str(r["k"]),
                    _frac(r["beta"]),
                    _fmt(float(r["beta"])),
                    _frac(r["nu_over_2k"]),
                    _fmt(float(r["nu_over_2k"])),
                    _frac(r["gap"]),
                    _fmt(float(r["gap"])),
                ]
            )
        comments = [
            f"beta_strictly_increasing: {str(beta_increasing).lower()}",
            f"gap_strictly_decreasing: {str(gap_decreasing).lower()}",
        ]
        _write(cfg.output, _csv(lines, comments=comments))
    return 0


def cmd_compile(cfg: RunConfig) -> int:
    f = _read_function(cfg.params["fn"])
    program = ghzc.compile_function(f, pad=cfg.params["pad"])
    _write(
        cfg.output,
        json.dumps(ghzc.program_to_config(program), indent=2, sort_keys=True) + "\n",
    )
    return 0


def cmd_verify(cfg: RunConfig) -> int:
    f = _read_function(cfg.params["fn"])
    program = _read_program(cfg.params["program"])
    result = ghzc.verify(program, f)
    payload = {
        "deterministic": result.deterministic,
        "qubits": program.n_qubits,
        "failing_inputs": [
            "".join(str(b) for b in x) for x in result.failing_inputs
        ],
        "min_success": min(result.success.values()),
    }
    _write(cfg.output, json.dumps(payload, indent=2, sort_keys=True) + "\n")
    return 0 if result.deterministic else 1


def cmd_inequality(cfg: RunConfig) -> int:
    f = _read_function(cfg.params["fn"])
    name = cfg.params["program"]
    if name == "chsh-and":
        program = mbqc.chsh_and_program()
    elif name == "noncontextual-and":
        program = mbqc.noncontextual_and_program()
    else:
        program = ghzc.run_as_l2program(_read_program(name), cfg.params["epsilon"])
    report = mbqc.run_exact(program, f)
    cert = mbqc.contextuality_certificate(report, f)
    verdict = "contextual" if cert.contextual else "inconclusive"
    payload = {
        "nu": cert.nu,
        "bound": _frac(cert.bound),
        "average_error": cert.average_error,
        "delta": cert.delta,
        "verdict": verdict,
    }
    _write(cfg.output, json.dumps(payload, indent=2, sort_keys=True) + "\n")
    return 0


def cmd_reliable(cfg: RunConfig) -> int:
    p = cfg.params
    with open(p["formula"], "r", encoding="utf-8") as fh:
        formula = reliability.parse_formula(fh.read())

    chsh = gates.chsh_and_gate()
    k = p["k"]
    if p["restore_epsilon"] is not None:
        kmaj = gates.uniform_noisy_gate(boolfn.make_named("maj", k), p["restore_epsilon"])
    elif k == 3:
        kmaj = gates.maj3_from_and(chsh)
    else:
        raise ValueError("k != 3 requires --restore-epsilon (gate from a noisy GHZ majority)")
    if p["xnand"] == "chsh":
        xnand = gates.xnand_from_and(chsh)
    elif p["xnand"] == "noncontextual-quarter":
        xnand = gates.xnand_from_and(gates.noncontextual_and_gate())
    else:
        raise ValueError(f"unknown xnand resource {p['xnand']!r}")

    circuit = reliability.build(
        formula,
        p["width"],
        k,
        p["rounds"],
        xnand=xnand,
        kmaj=kmaj,
        seed=p["seed"],
    )
    report = reliability.build_report(
        circuit,
        margin=p["margin"],
        trials=p["trials"],
        seed=p["seed"] if p["trials"] is not None else None,
        mc_inputs=p["mc_inputs"],
    )
    if cfg.format == "json":
        payload = report.summary()
        payload["rows"] = [
            {
                "input": "".join(str(b) for b in row.x),
                "analytic_error": row.analytic_error,
                "empirical_error": row.empirical_error,
                "ci_halfwidth": row.ci_halfwidth,
            }
            for row in report.rows
        ]
        _write(cfg.output, json.dumps(payload, indent=2, sort_keys=True) + "\n")
    else:
        lines = [["input", "analytic_error", "empirical_error", "ci_halfwidth"]]
        for row in report.rows:
            lines.append(
                [
                    "".join(str(b) for b in row.x),
                    _fmt(row.analytic_error),
                    _fmt(row.empirical_error) if row.empirical_error is not None else "",
                    _fmt(row.ci_halfwidth) if row.ci_halfwidth is not None else "",
                ]
            )
        comments = [
            f"delta: {_fmt(report.delta)}",
            f"worst_input: {''.join(str(b) for b in report.worst_input)}",
            f"reliable: {str(report.reliable).lower()} (margin {_fmt(report.margin)})",
        ]
        comments.extend(f"warning: {w}" for w in report.warnings)
        _write(cfg.output, _csv(lines, comments=comments))
    return 0 if report.reliable else 1


# ---------------------------------------------------------------------------
# argument parsing

def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="l2mbqc",
        description="Computation from correlations under mod-2 linear control",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def add_common(sp):
        sp.add_argument("--output", default=None, help="output path (default stdout)")
        sp.add_argument("--format", choices=("csv", "json"), default="csv")

    g = sub.add_parser("gate", help="per-input success table of a noisy gate")
    g.add_argument("name", choices=_NAMED_TARGETS)
    g.add_argument("--resource", required=True, choices=("chsh", "noncontextual-quarter", "ghz"))
    g.add_argument("--k", type=int, default=3, help="majority arity (odd)")
    g.add_argument("--epsilon", type=float, default=0.0, help="GHZ noise weight")
    add_common(g)

    t = sub.add_parser("thresholds", help="beta_k / nu / gap sweep")
    t.add_argument("--kmax", type=int, required=True)
    add_common(t)

    c = sub.add_parser("compile", help="Boolean function -> GHZ program")
    c.add_argument("--fn", required=True, help="truth-table file")
    c.add_argument("--pad", action="store_true", help="keep zero-increment qubits")
    add_common(c)

    v = sub.add_parser("verify", help="check a GHZ program against a function")
    v.add_argument("--program", required=True, help="program file")
    v.add_argument("--fn", required=True, help="truth-table file")
    add_common(v)

    i = sub.add_parser("inequality", help="contextuality certificate for a run")
    i.add_argument("--fn", required=True, help="truth-table file")
    i.add_argument(
        "--program",
        required=True,
        help="chsh-and, noncontextual-and, or a compiled program file",
    )
    i.add_argument("--epsilon", type=float, default=0.0, help="GHZ noise weight")
    add_common(i)

    r = sub.add_parser("reliable", help="multiplexed-circuit reliability experiment")
    r.add_argument("--formula", required=True, help="NAND formula file")
    r.add_argument("--width", type=int, required=True)
    r.add_argument("--k", type=int, default=3)
    r.add_argument("--rounds", type=int, required=True, help="restore rounds per stage")
    r.add_argument("--seed", type=int, required=True)
    r.add_argument("--trials", type=int, default=None, help="Monte Carlo trials")
    r.add_argument("--margin", type=float, default=0.05)
    r.add_argument("--restore-epsilon", type=float, default=None)
    r.add_argument("--xnand", choices=("chsh", "noncontextual-quarter"), default="chsh")
    r.add_argument("--mc-inputs", choices=("worst", "all"), default="worst")
    add_common(r)

    return parser


_DISPATCH = {
    "gate": cmd_gate,
    "thresholds": cmd_thresholds,
    "compile": cmd_compile,
    "verify": cmd_verify,
    "inequality": cmd_inequality,
    "reliable": cmd_reliable,
}


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    params = {
        k.replace("-", "_"): v
        for k, v in vars(args).items()
        if k not in ("subcommand", "output", "format")
    }
    cfg = RunConfig(
        subcommand=args.subcommand,
        params=params,
        output=_resolve_output(args.output),
        format=args.format,
    )
    try:
        return _DISPATCH[args.subcommand](cfg)
    except (ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
