"""Command-line front end.

Subcommands: expand (digit expansions), normality (goodness diagnostics of a
stream file), synthesize (generic-point construction), reduce (the feeble
transducer), safereduce (the safe-symbol transducer), verify (re-analysis of
a recorded reduce run).

Exit codes: 0 success, 2 arithmetic left UNDECIDED at the configured
precision, 3 contract or input violation.  Every report embeds the seed,
mode, and tool version so runs are reproducible byte for byte.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import __version__
from .blocks import Block, DigitStream, format_stream, parse_stream_text
from .cf import cf_expand
from .errors import ContractViolation, DomainError, RetryBudgetExceeded, UndecidedError
from .beta import BetaSystem, beta_automaton
from .gls import base_r_system, gls_itinerary, luroth_system, parse_gls_spec, tent_system
from .measures import convergence_diagnostic, parse_oracle_spec
from .realnum import parse_point
from .reduction import (
    pi_feeble,
    pi_safe_symbol,
    safe_symbol_window_stats,
    verify_reduction,
)
from .synthesis import BetaGluer, FullShiftGluer, synthesize_generic


def _emit(text: str, path: str | None):
    if path:
        with open(path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _report(payload: dict, args, path: str | None):
    payload = dict(payload)
    payload["version"] = __version__
    payload["seed"] = getattr(args, "seed", None)
    payload["mode"] = getattr(args, "mode", None)
    payload["command"] = args.command
    _emit(json.dumps(payload, indent=2, default=str) + "\n", path)


def _parse_alpha(spec: str):
    if spec == "identity":
        return "identity"
    if spec.startswith("const:"):
        return int(spec.split(":", 1)[1])
    if spec.startswith("list:"):
        return [int(tok) for tok in spec.split(":", 1)[1].split(",")]
    if spec.startswith("file:"):
        with open(spec.split(":", 1)[1]) as fh:
            return [int(tok) for tok in fh.read().split()]
    raise DomainError(f"bad alpha spec {spec!r}")


def _parse_gluer(spec: str):
    if spec == "full":
        return FullShiftGluer()
    if spec.startswith("beta:"):
        return BetaGluer(BetaSystem(parse_point(spec.split(":", 1)[1])))
    raise DomainError(f"bad gluer spec {spec!r}")


def _load_stream(path: str) -> DigitStream:
    with open(path) as fh:
        return DigitStream.from_symbols(parse_stream_text(fh.read()), label=path)


def cmd_expand(args) -> int:
    k = args.k
    point = parse_point(args.point)
    spec = args.system
    if spec == "cf":
        digits, exhausted = cf_expand(point, k)
        symbols = list(digits)
    elif spec.startswith("beta:"):
        sys_ = BetaSystem(parse_point(spec.split(":", 1)[1]))
        symbols = sys_.expand(point, k)
    else:
        if spec == "tent":
            system = tent_system()
        elif spec == "luroth":
            system = luroth_system()
        elif spec.startswith("base:"):
            system = base_r_system(int(spec.split(":", 1)[1]))
        elif spec.startswith("file:"):
            with open(spec.split(":", 1)[1]) as fh:
                system = parse_gls_spec(fh.read())
        else:
            raise DomainError(f"bad system spec {spec!r}")
        symbols = gls_itinerary(system, point, k)
    header = f"# {args.system} expansion of {args.point}, k={k}, shiftlab {__version__}\n"
    _emit(header + format_stream(symbols), args.out)
    return 0


def cmd_normality(args) -> int:
    stream = _load_stream(args.stream)
    oracle = parse_oracle_spec(args.oracle)
    eps = Fraction(args.eps)
    checkpoints = [int(tok) for tok in args.checkpoints.split(",")]
    need = max(checkpoints)
    if len(stream.prefix(need)) < need:
        raise DomainError("stream shorter than the last checkpoint")
    warning = None
    if eps > 1:
        warning = "eps > 1: every frequency bound is vacuous"
    rep = convergence_diagnostic(stream, oracle, args.m, eps, checkpoints)
    table = []
    for N, g in zip(rep.checkpoints, rep.goodness):
        table.append(
            {
                "N": N,
                "good": g.overall,
                "frequencies": {
                    " ".join(map(str, w)): str(f) for w, f in g.frequencies.items()
                },
            }
        )
    payload = {
        "oracle": oracle.label,
        "m": args.m,
        "eps": str(eps),
        "checkpoints": table,
        "all_good": rep.all_good,
        "oscillation_gaps": {
            " ".join(map(str, w)): str(rep.oscillation_gap(w)) for w in rep.ratio_min
        },
    }
    if warning:
        payload["warning"] = warning
    _report(payload, args, args.out)
    return 0


def cmd_synthesize(args) -> int:
    oracle = parse_oracle_spec(args.oracle)
    gluer = _parse_gluer(args.gluer)
    res = synthesize_generic(oracle, gluer, args.len, args.seed)
    _emit(format_stream(res.symbols), args.out)
    payload = {
        "oracle": res.oracle_label,
        "gluer": res.gluer_label,
        "length": len(res.symbols),
        "boundaries": res.boundaries,
        "stages": [
            {
                "n": st.index,
                "m": st.m,
                "eps": str(st.eps),
                "length": st.length,
                "tries": st.tries,
                "corrections": list(st.corrections),
            }
            for st in res.stages
        ],
        "correction_density": str(res.correction_density()),
    }
    _report(payload, args, args.report)
    return 0


def _trace_payload(trace, schedule) -> dict:
    return {
        "mode_label": trace.mode_label,
        "dependency_bound": trace.dependency_bound,
        "dropped_prefix": trace.dropped_prefix,
        "requested_length": trace.requested_length,
        "bands": [
            {
                "n": b.n,
                "a": b.a,
                "b": b.b,
                "c": b.c,
                "alpha_prime": b.alpha_prime,
                "start": b.start,
                "prime_end": b.prime_end,
                "end": b.end,
                "corrections": list(b.corrections),
            }
            for b in trace.bands
        ],
    }


def cmd_reduce(args) -> int:
    alpha = _parse_alpha(args.alpha)
    mu = parse_oracle_spec(args.mu)
    nu = parse_oracle_spec(args.nu)
    gluer = _parse_gluer(args.gluer)
    source_len = max(4 * args.len // 100, 4096)
    x = (
        _load_stream(args.x_file)
        if args.x_file
        else synthesize_generic(mu, gluer, source_len, args.seed).stream()
    )
    z = (
        _load_stream(args.z_file)
        if args.z_file
        else synthesize_generic(nu, FullShiftGluer(), source_len, args.seed + 1).stream()
    )
    if args.mode == "scaled":
        sys.stderr.write(
            "NON-PAPER: scaled schedule conditions (config=%d), demonstration only\n"
            % args.config
        )
    output, trace, schedule = pi_feeble(
        alpha, x, z, gluer, args.len, mu, nu, mode=args.mode, config=args.config
    )
    _emit(format_stream(output), args.out)
    report = verify_reduction(output, trace, mu, nu, m=args.m, eps=Fraction(args.eps))
    payload = {
        "trace": _trace_payload(trace, schedule),
        "verdict": report.verdict,
        "gap": str(report.gap),
        "double_deviations": [str(d) for d in report.double_deviations],
        "correction_densities": [[p, str(d)] for p, d in report.correction_densities],
        "config": args.config,
    }
    _report(payload, args, args.report)
    return 0


def cmd_safereduce(args) -> int:
    alpha = _parse_alpha(args.alpha)
    if args.x_file:
        x = _load_stream(args.x_file)
    else:
        x = DigitStream.periodic((0, 1))
    output, trace = pi_safe_symbol(
        alpha, x, args.gamma, args.len, branch=args.branch
    )
    _emit(format_stream(output), args.out)
    stats = safe_symbol_window_stats(output, trace)
    payload = {
        "branch": trace.branch,
        "gamma": trace.gamma,
        "boundaries": trace.boundaries,
        "stalled": trace.stalled,
        "windows": [
            {
                "n": w.index,
                "start": w.start,
                "end": w.end,
                "q": w.q,
                "p": w.p,
                "zeroed": w.zeroed,
                "alpha": w.alpha,
            }
            for w in trace.windows
        ],
        "gap": str(stats.gap),
        "zeroed_window_freqs": [[n, b, str(f)] for n, b, f in stats.zeroed_windows],
        "kept_window_freqs": [[n, b, str(f)] for n, b, f in stats.kept_windows],
    }
    _report(payload, args, args.report)
    return 0


def cmd_verify(args) -> int:
    with open(args.trace) as fh:
        raw = json.load(fh)
    with open(args.stream) as fh:
        symbols = parse_stream_text(fh.read())
    from .reduction import BandRecord, ReductionTrace

    bands = [
        BandRecord(
            n=b["n"],
            a=b["a"],
            b=b["b"],
            c=b["c"],
            alpha_prime=b["alpha_prime"],
            start=b["start"],
            prime_end=b["prime_end"],
            end=b["end"],
            corrections=tuple(b.get("corrections", ())),
        )
        for b in raw["trace"]["bands"]
    ]
    trace = ReductionTrace(
        mode_label=raw["trace"]["mode_label"],
        bands=bands,
        dependency_bound=raw["trace"]["dependency_bound"],
        dropped_prefix=raw["trace"]["dropped_prefix"],
        requested_length=raw["trace"]["requested_length"],
    )
    if not bands or len(symbols) < bands[-1].end:
        raise ContractViolation("stream shorter than the trace's final boundary")
    output = Block(symbols[: bands[-1].end])
    mu = parse_oracle_spec(args.mu)
    nu = parse_oracle_spec(args.nu)
    report = verify_reduction(output, trace, mu, nu, m=args.m, eps=Fraction(args.eps))
    payload = {
        "verdict": report.verdict,
        "gap": str(report.gap),
        "double_deviations": [str(d) for d in report.double_deviations],
        "monotone_improving": report.monotone_improving,
        "correction_densities": [[p, str(d)] for p, d in report.correction_densities],
    }
    _report(payload, args, args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="shiftlab")
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("expand", help="digit expansion of a point")
    p.add_argument("--system", required=True, help="tent|base:R|luroth|cf|beta:P|file:PATH")
    p.add_argument("--point", required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_expand)

    p = sub.add_parser("normality", help="goodness diagnostics of a stream file")
    p.add_argument("--stream", required=True)
    p.add_argument("--oracle", required=True)
    p.add_argument("--m", type=int, default=3)
    p.add_argument("--eps", default="0.05")
    p.add_argument("--checkpoints", required=True, help="comma-separated depths")
    p.add_argument("--out")
    p.set_defaults(func=cmd_normality)

    p = sub.add_parser("synthesize", help="construct a generic-point prefix")
    p.add_argument("--oracle", required=True)
    p.add_argument("--gluer", default="full", help="full|beta:P")
    p.add_argument("--len", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.add_argument("--report")
    p.set_defaults(func=cmd_synthesize)

    p = sub.add_parser("reduce", help="run the feeble-specification transducer")
    p.add_argument("--alpha", required=True, help="identity|const:K|list:a,b,c|file:PATH")
    p.add_argument("--mu", required=True)
    p.add_argument("--nu", required=True)
    p.add_argument("--gluer", default="full")
    p.add_argument("--len", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--mode", choices=("paper", "scaled"), default="paper")
    p.add_argument("--config", type=int, default=16)
    p.add_argument("--m", type=int, default=2)
    p.add_argument("--eps", default="0.05")
    p.add_argument("--x-file")
    p.add_argument("--z-file")
    p.add_argument("--out")
    p.add_argument("--report")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("safereduce", help="run the safe-symbol transducer")
    p.add_argument("--alpha", required=True)
    p.add_argument("--gamma", type=int, default=1)
    p.add_argument("--len", type=int, required=True)
    p.add_argument("--branch", choices=("standard", "dirac"), default="standard")
    p.add_argument("--x-file")
    p.add_argument("--out")
    p.add_argument("--report")
    p.set_defaults(func=cmd_safereduce)

    p = sub.add_parser("verify", help="re-analyze a recorded reduce run")
    p.add_argument("--stream", required=True)
    p.add_argument("--trace", required=True)
    p.add_argument("--mu", required=True)
    p.add_argument("--nu", required=True)
    p.add_argument("--m", type=int, default=2)
    p.add_argument("--eps", default="0.05")
    p.add_argument("--out")
    p.set_defaults(func=cmd_verify)

    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except UndecidedError as exc:
        sys.stderr.write(f"UNDECIDED: {exc}\n")
        return 2
    except (ContractViolation, DomainError, RetryBudgetExceeded, OSError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 3


if __name__ == "__main__":
    sys.exit(main())
