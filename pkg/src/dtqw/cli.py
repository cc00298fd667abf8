"""Command-line front end.

Exit codes: 0 success, 1 numerical regression (a tolerance was breached),
2 usage or input errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import re
import sys
from pathlib import Path

from dtqw import qsim
from dtqw.circuit import Circuit, GateKind, SchemaViolation, export_qasm, from_json, metrics, to_json
from dtqw.encoding import EncodingName, OutOfDomain, UnmappedBitString, get_encoding
from dtqw.equivalence import certify
from dtqw.synthesis import (
    BoundaryOverflow,
    CapacityExceeded,
    SynthesisFailure,
    SynthesisPlan,
    UnsupportedDepth,
    WalkKind,
    estimate_resources,
    synthesize_dqw_ancilla,
    synthesize_walk,
)
from dtqw.walk import (
    CoinConvention,
    Distribution,
    InitialState,
    Variant,
    WalkSpec,
    distribution,
    make_initial,
    step_dqw,
    step_sqw,
    trajectory,
)

TOLERANCE = 1e-10
CSV_HEADER = ("step", "x", "p_up", "p_down", "p")

_PI_FORM = re.compile(r"^\s*([+-]?(?:\d+(?:\.\d*)?|\.\d+)?)\s*\*?\s*pi\s*(?:/\s*(\d+(?:\.\d*)?))?\s*$")


class UsageError(Exception):
    pass


def parse_angle(text: str) -> float:
    """Radians from a decimal or a multiple of pi such as ``pi/4`` or ``-3pi/8``."""
    m = _PI_FORM.match(text)
    if m:
        num = m.group(1)
        factor = -1.0 if num == "-" else 1.0 if num in ("", "+") else float(num)
        den = float(m.group(2)) if m.group(2) else 1.0
        if den == 0:
            raise argparse.ArgumentTypeError(f"zero denominator in {text!r}")
        return factor * math.pi / den
    try:
        return float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an angle: {text!r}") from None


def parse_angles(text: str) -> list[float]:
    return [parse_angle(part) for part in text.split(",")]


def _non_negative(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 0:
        raise argparse.ArgumentTypeError(f"must be non-negative, got {v}")
    return v


# --- output ----------------------------------------------------------------


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _rows(step: int, dist: Distribution) -> list[tuple]:
    return [(step, e.x, e.p_up, e.p_down, e.p) for e in dist]


def _format_rows(rows: list[tuple], fmt: str) -> str:
    rows = sorted(rows, key=lambda r: (r[0], r[1]))
    if fmt == "json":
        return json.dumps([dict(zip(CSV_HEADER, r)) for r in rows], indent=1) + "\n"
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for step, x, pu, pd, p in rows:
        w.writerow((step, x, repr(float(pu)), repr(float(pd)), repr(float(p))))
    return buf.getvalue()


# --- simulate / equivalence -------------------------------------------------


def cmd_simulate(args: argparse.Namespace) -> int:
    if args.theta2 is not None and args.walk != "ssqw":
        raise UsageError("--theta2 only applies to --walk ssqw")
    spec = WalkSpec(
        Variant(args.walk),
        args.theta,
        args.steps,
        theta2=args.theta2,
        convention=CoinConvention(args.coin),
        initial=InitialState(args.delta, args.eta),
        initial_position=args.x0,
    )
    rows: list[tuple] = []
    for state in trajectory(spec):
        if args.trajectory or state.t == spec.steps:
            rows += _rows(state.t, distribution(state))
    _emit(_format_rows(rows, args.format), args.out)
    return 0


def cmd_equivalence(args: argparse.Namespace) -> int:
    report = certify(args.theta, args.steps, InitialState(args.delta, args.eta), CoinConvention(args.coin))
    names = ("ssqw-sqw", "dqw-sqw", "ssqw-dqw")
    worst = dict(zip(names, report.worst()))
    ok = report.passed(TOLERANCE)
    if args.format == "json":
        text = json.dumps({"t": args.steps, "theta": args.theta, "max_deviation": worst, "passed": ok}) + "\n"
    else:
        text = "".join(f"{k}\t{v:.3e}\n" for k, v in worst.items())
        text += f"{'PASS' if ok else 'FAIL'} (tolerance {TOLERANCE:g})\n"
    _emit(text, args.out)
    return 0 if ok else 1


# --- circuits ---------------------------------------------------------------


def _load(path: str) -> Circuit:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    return from_json(text)


def _coin_angles(c: Circuit) -> tuple[list[float], CoinConvention | None]:
    """Per-step coin angles and convention, read from the coin-qubit rotations."""
    gates = [g for g in c.gates if g.kind is GateKind.COIN_R and g.targets[0] == c.coin_qubit]
    conventions = {g.convention for g in gates}
    if len(conventions) > 1:
        raise UsageError("circuit mixes coin conventions")
    return [g.theta for g in gates], (conventions.pop() if conventions else None)


def _circuit_state(c: Circuit, args: argparse.Namespace) -> tuple[qsim.QState, str, float]:
    """Output state of ``c``; returns (state, ancilla handling, postselection probability)."""
    initial = args.initial or "0" * c.width
    if len(initial) != c.width:
        raise UsageError(f"--initial has {len(initial)} bits, circuit has {c.width} qubits")
    state = qsim.run(c, initial)
    if c.ancilla_qubits and args.postselect:
        state, p = qsim.postselect(state, list(c.ancilla_qubits))
        return state, "postselected", p
    return state, "traced", 1.0


def cmd_synth(args: argparse.Namespace) -> int:
    walk = WalkKind(args.walk)
    thetas = args.theta if len(args.theta) > 1 else args.theta[0]
    if walk is WalkKind.DQW_ANCILLA:
        circ = synthesize_dqw_ancilla(args.steps, thetas, merge=not args.no_merge)
    else:
        enc = get_encoding(args.encoding)
        plan = SynthesisPlan(
            walk,
            enc,
            args.steps,
            fixed_initial=(0, args.x0) if args.fixed_initial else None,
            parity_tracking=args.parity_tracking,
            initial_position=args.x0,
            convention=CoinConvention(args.coin),
        )
        circ = synthesize_walk(plan, thetas)
    _emit(to_json(circ) + "\n", args.out)
    if args.qasm:
        Path(args.qasm).write_text(export_qasm(circ))
    m = metrics(circ)
    print(
        f"width {circ.width}, ancillas {len(circ.ancilla_qubits)}, gates {m.total_gates}, "
        f"depth {m.depth}, max control order {m.max_control_order}",
        file=sys.stderr,
    )
    return 0


def cmd_run(args: argparse.Namespace) -> int:
    c = _load(args.circuit)
    if c.ancilla_qubits and not (args.trace_ancillas or args.postselect):
        raise UsageError("circuit has ancillas: pass --trace-ancillas or --postselect")
    state, mode, p = _circuit_state(c, args)
    if args.shots is not None:
        if args.seed is None:
            raise UsageError("--shots needs an explicit --seed")
        counts = qsim.sample(state, args.shots, args.seed)
        _emit(json.dumps(dict(sorted(counts.items()))) + "\n", args.out)
        return 0
    if c.ancilla_qubits:
        _, purity = qsim.trace_out(state, list(c.ancilla_qubits))
        print(f"ancillas {mode}; probability {p:.6g}; walk-register purity {purity:.12g}", file=sys.stderr)
    enc = get_encoding(args.encoding)
    dist = qsim.position_distribution(state, enc, c.coin_qubit, c.position_qubits)
    steps = len(_coin_angles(c)[0])
    _emit(_format_rows(_rows(steps, dist), args.format), args.out)
    return 0


def cmd_export(args: argparse.Namespace) -> int:
    _emit(export_qasm(_load(args.circuit)), args.out)
    return 0


def _oracle(walk: WalkKind, thetas: list[float], convention: CoinConvention, x0: int) -> Distribution:
    state = make_initial(WalkSpec(Variant.DQW, 0.0, 0, convention=convention, initial_position=x0))
    stepper = step_sqw if walk is WalkKind.SQW else step_dqw
    for th in thetas:
        state = stepper(state, th, convention)
    return distribution(state)


def total_variation(a: Distribution, b: Distribution) -> float:
    pa, pb = a.as_dict(), b.as_dict()
    return 0.5 * sum(abs(pa.get(x, 0.0) - pb.get(x, 0.0)) for x in set(pa) | set(pb))


def cmd_compare(args: argparse.Namespace) -> int:
    c = _load(args.circuit)
    walk = WalkKind(args.walk)
    if walk is WalkKind.DQW_ANCILLA:
        enc = get_encoding(EncodingName.HAMMING)
        args.postselect = bool(c.ancilla_qubits)
    else:
        enc = get_encoding(args.encoding)
        args.postselect = False
    if args.initial is None:
        bits = "0" + enc.encode(args.x0)
        args.initial = bits + "0" * (c.width - len(bits))
    state, mode, p = _circuit_state(c, args)
    thetas, convention = _coin_angles(c)
    oracle = _oracle(walk, thetas, convention or CoinConvention.PHASE, args.x0)
    got = qsim.position_distribution(state, enc, c.coin_qubit, c.position_qubits)
    tv = total_variation(got, oracle)
    ok = tv < TOLERANCE
    extra = f", ancillas {mode} (probability {p:.6g})" if c.ancilla_qubits else ""
    _emit(f"steps {len(thetas)}, total variation {tv:.3e}{extra}\n{'PASS' if ok else 'FAIL'}\n", args.out)
    return 0 if ok else 1


# --- resources --------------------------------------------------------------


def cmd_resources(args: argparse.Namespace) -> int:
    r = estimate_resources(args.walk, qubits=args.qubits, steps=args.steps)
    fields = {
        "walk": r.walk.value,
        "qubits": r.min_qubits,
        "steps": r.max_steps,
        "control_order": r.max_control_order,
        "ancillas": r.ancillas,
    }
    if args.format == "json":
        text = json.dumps(fields) + "\n"
    else:
        text = "\t".join(fields) + "\n" + "\t".join(str(v) for v in fields.values()) + "\n"
    _emit(text, args.out)
    return 0


# --- parser -----------------------------------------------------------------


def _walk_flags(p: argparse.ArgumentParser, theta_default: str = "pi/4") -> None:
    p.add_argument("--theta", type=parse_angle, default=parse_angle(theta_default), help="coin angle (radians or e.g. pi/4)")
    p.add_argument("--delta", type=parse_angle, default=0.0, help="initial coin angle delta")
    p.add_argument("--eta", type=parse_angle, default=0.0, help="initial coin phase eta")
    p.add_argument("--coin", choices=[c.value for c in CoinConvention], default="phase")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="dtqw", description="Discrete-time quantum walks and their circuits.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("simulate", help="evolve a walk and print its distribution")
    p.add_argument("--walk", choices=[v.value for v in Variant], required=True)
    p.add_argument("--steps", type=_non_negative, required=True)
    _walk_flags(p)
    p.add_argument("--theta2", type=parse_angle, help="second half-step angle (ssqw)")
    p.add_argument("--x0", type=int, default=0, help="initial position")
    p.add_argument("--trajectory", action="store_true", help="emit every step, not just the last")
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.add_argument("--out")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("equivalence", help="check the three walk equivalences up to t")
    p.add_argument("--steps", type=_non_negative, required=True, help="split-step count t")
    _walk_flags(p)
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.add_argument("--out")
    p.set_defaults(func=cmd_equivalence)

    p = sub.add_parser("circuit", help="synthesize, run, export or check circuits")
    csub = p.add_subparsers(dest="action", required=True)

    s = csub.add_parser("synth", help="compile a walk into circuit JSON")
    s.add_argument("--walk", choices=[w.value for w in WalkKind], required=True)
    s.add_argument("--encoding", choices=[e.value for e in EncodingName], default="table1")
    s.add_argument("--steps", type=_non_negative, required=True)
    s.add_argument("--theta", type=parse_angles, default=[math.pi / 4], help="one angle, or one per step, comma separated")
    s.add_argument("--coin", choices=[c.value for c in CoinConvention], default="phase")
    s.add_argument("--x0", type=int, default=0)
    s.add_argument("--fixed-initial", action="store_true", help="specialise to the initial state (up, x0)")
    s.add_argument("--parity-tracking", action="store_true", help="track the parity-bit flips classically")
    s.add_argument("--no-merge", action="store_true", help="dqw-ancilla: omit the ancilla merge")
    s.add_argument("--out")
    s.add_argument("--qasm", help="also write OpenQASM 2.0 here")
    s.set_defaults(func=cmd_synth)

    r = csub.add_parser("run", help="simulate a circuit and print the position distribution")
    r.add_argument("circuit")
    r.add_argument("--encoding", choices=[e.value for e in EncodingName], default="table1")
    r.add_argument("--initial", help="initial basis bit string (default all zeros)")
    r.add_argument("--trace-ancillas", action="store_true", help="sum over ancilla outcomes")
    r.add_argument("--postselect", action="store_true", help="condition ancillas on all zeros")
    r.add_argument("--shots", type=int, help="sample measurement counts instead")
    r.add_argument("--seed", type=int, help="PCG64 seed for --shots")
    r.add_argument("--format", choices=["csv", "json"], default="csv")
    r.add_argument("--out")
    r.set_defaults(func=cmd_run)

    e = csub.add_parser("export", help="write OpenQASM 2.0")
    e.add_argument("circuit")
    e.add_argument("--out")
    e.set_defaults(func=cmd_export)

    c = csub.add_parser("compare", help="total-variation distance to the direct simulation")
    c.add_argument("circuit")
    c.add_argument("--walk", choices=[w.value for w in WalkKind], required=True)
    c.add_argument("--encoding", choices=[e.value for e in EncodingName], default="table1")
    c.add_argument("--x0", type=int, default=0, help="initial position (coin up)")
    c.add_argument("--initial", help="override the initial basis bit string")
    c.add_argument("--out")
    c.set_defaults(func=cmd_compare)

    p = sub.add_parser("resources", help="register size, step capacity and control order")
    p.add_argument("--walk", choices=[w.value for w in WalkKind], required=True)
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--qubits", type=int)
    g.add_argument("--steps", type=_non_negative)
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.add_argument("--out")
    p.set_defaults(func=cmd_resources)
    return parser


_INPUT_ERRORS = (
    UsageError,
    SchemaViolation,
    OutOfDomain,
    UnmappedBitString,
    CapacityExceeded,
    BoundaryOverflow,
    UnsupportedDepth,
    ValueError,
)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except SynthesisFailure as exc:
        print(f"dtqw: synthesis failed: {exc}", file=sys.stderr)
        return 1
    except _INPUT_ERRORS as exc:
        print(f"dtqw: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
