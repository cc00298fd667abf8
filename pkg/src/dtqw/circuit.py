"""Gate-level circuit IR: gates, circuits, metrics, JSON and OpenQASM 2.0 text.

Multi-controlled X gates are kept whole, and every control carries a polarity
(1 fires on |1>, 0 fires on |0>). Negative controls are only lowered to X
conjugation when exporting QASM.
"""

from __future__ import annotations

import enum
import json
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, NamedTuple

import jsonschema

from dtqw.walk import CoinConvention

__all__ = [
    "GateKind",
    "Control",
    "Gate",
    "Circuit",
    "Metrics",
    "SchemaViolation",
    "x",
    "coin",
    "controlled_x",
    "cswap",
    "swap",
    "metrics",
    "to_json",
    "from_json",
    "export_qasm",
]


class SchemaViolation(ValueError):
    pass


class GateKind(str, enum.Enum):
    X = "x"
    COIN_R = "coin"
    CNOT = "cx"
    TOFFOLI = "ccx"
    MCX = "mcx"
    CSWAP = "cswap"
    SWAP = "swap"


class Control(NamedTuple):
    qubit: int
    polarity: int = 1


_X_KINDS = (GateKind.X, GateKind.CNOT, GateKind.TOFFOLI, GateKind.MCX)


@dataclass(frozen=True)
class Gate:
    kind: GateKind
    targets: tuple[int, ...]
    controls: tuple[Control, ...] = ()
    theta: float | None = None
    convention: CoinConvention | None = None

    def __post_init__(self) -> None:
        kind = GateKind(self.kind)
        object.__setattr__(self, "kind", kind)
        object.__setattr__(self, "targets", tuple(int(t) for t in self.targets))
        object.__setattr__(self, "controls", tuple(Control(int(q), int(p)) for q, p in self.controls))
        expected_controls = {GateKind.X: 0, GateKind.COIN_R: 0, GateKind.SWAP: 0,
                             GateKind.CNOT: 1, GateKind.TOFFOLI: 2, GateKind.CSWAP: 1}
        n_targets = 2 if kind in (GateKind.CSWAP, GateKind.SWAP) else 1
        if len(self.targets) != n_targets:
            raise ValueError(f"{kind.value} takes {n_targets} target(s), got {self.targets}")
        if kind in expected_controls and len(self.controls) != expected_controls[kind]:
            raise ValueError(f"{kind.value} takes {expected_controls[kind]} control(s)")
        if any(c.polarity not in (0, 1) for c in self.controls):
            raise ValueError("control polarity must be 0 or 1")
        if kind is GateKind.COIN_R:
            if self.theta is None:
                raise ValueError("coin gate needs theta")
            object.__setattr__(self, "convention", CoinConvention(self.convention or CoinConvention.PHASE))
        qubits = [c.qubit for c in self.controls] + list(self.targets)
        if len(set(qubits)) != len(qubits):
            raise ValueError(f"overlapping qubits in {kind.value}: {qubits}")

    @property
    def qubits(self) -> tuple[int, ...]:
        return tuple(c.qubit for c in self.controls) + self.targets

    @property
    def control_order(self) -> int:
        return len(self.controls)

    @property
    def is_classical(self) -> bool:
        return self.kind is not GateKind.COIN_R

    def fires(self, bits: Iterable[int]) -> bool:
        """Whether every control matches on the classical basis state ``bits``."""
        b = list(bits)
        return all(b[c.qubit] == c.polarity for c in self.controls)

    def apply_bits(self, bits: tuple[int, ...]) -> tuple[int, ...]:
        """Image of a classical basis state (not defined for the coin gate)."""
        if self.kind is GateKind.COIN_R:
            raise ValueError("coin gate has no classical action")
        if not self.fires(bits):
            return bits
        out = list(bits)
        if self.kind in _X_KINDS:
            out[self.targets[0]] ^= 1
        else:
            a, b = self.targets
            out[a], out[b] = out[b], out[a]
        return tuple(out)


def x(target: int) -> Gate:
    return Gate(GateKind.X, (target,))


def coin(target: int, theta: float, convention: CoinConvention = CoinConvention.PHASE) -> Gate:
    return Gate(GateKind.COIN_R, (target,), theta=float(theta), convention=CoinConvention(convention))


def controlled_x(controls: Iterable[tuple[int, int]], target: int) -> Gate:
    """X on ``target`` under ``controls``; the kind follows the control count."""
    ctl = tuple(Control(q, p) for q, p in sorted(controls))
    kind = {0: GateKind.X, 1: GateKind.CNOT, 2: GateKind.TOFFOLI}.get(len(ctl), GateKind.MCX)
    return Gate(kind, (target,), ctl)


def cswap(control: int, a: int, b: int) -> Gate:
    return Gate(GateKind.CSWAP, (a, b), (Control(control, 1),))


def swap(a: int, b: int) -> Gate:
    return Gate(GateKind.SWAP, (a, b))


@dataclass(frozen=True)
class Circuit:
    width: int
    coin_qubit: int
    position_qubits: tuple[int, ...]
    ancilla_qubits: tuple[int, ...] = ()
    gates: tuple[Gate, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "position_qubits", tuple(self.position_qubits))
        object.__setattr__(self, "ancilla_qubits", tuple(self.ancilla_qubits))
        object.__setattr__(self, "gates", tuple(self.gates))
        roles = [self.coin_qubit, *self.position_qubits, *self.ancilla_qubits]
        if len(set(roles)) != len(roles):
            raise ValueError("coin, position and ancilla qubits must be disjoint")
        if any(not 0 <= q < self.width for q in roles):
            raise ValueError(f"qubit role outside width {self.width}")
        for g in self.gates:
            if any(not 0 <= q < self.width for q in g.qubits):
                raise ValueError(f"gate {g.kind.value} on {g.qubits} outside width {self.width}")

    def with_gates(self, gates: Iterable[Gate]) -> "Circuit":
        return Circuit(self.width, self.coin_qubit, self.position_qubits, self.ancilla_qubits, tuple(gates))

    def __add__(self, other: "Circuit") -> "Circuit":
        if (self.width, self.coin_qubit, self.position_qubits, self.ancilla_qubits) != (
            other.width, other.coin_qubit, other.position_qubits, other.ancilla_qubits
        ):
            raise ValueError("cannot concatenate circuits with different layouts")
        return self.with_gates(self.gates + other.gates)


class Metrics(NamedTuple):
    gate_count_by_kind: dict[str, int]
    total_gates: int
    depth: int
    max_control_order: int


def metrics(c: Circuit) -> Metrics:
    counts = Counter(g.kind.value for g in c.gates)
    level = [0] * c.width
    for g in c.gates:
        d = 1 + max(level[q] for q in g.qubits)
        for q in g.qubits:
            level[q] = d
    return Metrics(
        dict(sorted(counts.items())),
        len(c.gates),
        max(level, default=0),
        max((g.control_order for g in c.gates), default=0),
    )


_GATE_SCHEMA = {
    "type": "object",
    "required": ["g", "t"],
    "additionalProperties": False,
    "properties": {
        "g": {"enum": [k.value for k in GateKind]},
        "theta": {"type": "number"},
        "conv": {"enum": ["phase", "real"]},
        "c": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["q", "pol"],
                "additionalProperties": False,
                "properties": {"q": {"type": "integer"}, "pol": {"enum": [0, 1]}},
            },
        },
        "t": {"type": "array", "items": {"type": "integer"}, "minItems": 1},
    },
}

CIRCUIT_SCHEMA = {
    "type": "object",
    "required": ["width", "coin", "position", "ancilla", "gates"],
    "additionalProperties": False,
    "properties": {
        "width": {"type": "integer", "minimum": 1},
        "coin": {"type": "integer", "minimum": 0},
        "position": {"type": "array", "items": {"type": "integer"}},
        "ancilla": {"type": "array", "items": {"type": "integer"}},
        "gates": {"type": "array", "items": _GATE_SCHEMA},
    },
}


def _gate_to_dict(g: Gate) -> dict:
    d: dict = {"g": g.kind.value}
    if g.kind is GateKind.COIN_R:
        d["theta"] = g.theta
        d["conv"] = g.convention.value
    if g.controls:
        d["c"] = [{"q": c.qubit, "pol": c.polarity} for c in g.controls]
    d["t"] = list(g.targets)
    return d


def to_json(c: Circuit) -> str:
    """Serialise ``c``; ``from_json(to_json(c)) == c``."""
    payload = {
        "width": c.width,
        "coin": c.coin_qubit,
        "position": list(c.position_qubits),
        "ancilla": list(c.ancilla_qubits),
        "gates": [_gate_to_dict(g) for g in c.gates],
    }
    return json.dumps(payload)


def from_json(text: str) -> Circuit:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaViolation(f"line {exc.lineno}: {exc.msg}") from None
    try:
        jsonschema.validate(data, CIRCUIT_SCHEMA)
    except jsonschema.ValidationError as exc:
        where = "/".join(str(p) for p in exc.absolute_path) or "<root>"
        raise SchemaViolation(f"{where}: {exc.message}") from None
    gates = []
    for i, gd in enumerate(data["gates"]):
        try:
            gates.append(
                Gate(
                    GateKind(gd["g"]),
                    tuple(gd["t"]),
                    tuple((cd["q"], cd["pol"]) for cd in gd.get("c", ())),
                    theta=gd.get("theta"),
                    convention=gd.get("conv"),
                )
            )
        except ValueError as exc:
            raise SchemaViolation(f"gates/{i}: {exc}") from None
    try:
        return Circuit(data["width"], data["coin"], tuple(data["position"]), tuple(data["ancilla"]), tuple(gates))
    except ValueError as exc:
        raise SchemaViolation(str(exc)) from None


_QASM_COIN_DEFS = {
    CoinConvention.PHASE: "gate coin_phase(theta) a { rx(2*theta) a; }",
    CoinConvention.REAL: "gate coin_real(theta) a { u3(2*theta,0,pi) a; }",
}


def export_qasm(c: Circuit) -> str:
    """OpenQASM 2.0 text. MCX with k >= 3 controls becomes opaque ``mcx_k``."""
    lines = ["OPENQASM 2.0;", 'include "qelib1.inc";']
    conventions = sorted({g.convention for g in c.gates if g.kind is GateKind.COIN_R}, key=lambda v: v.value)
    lines += [_QASM_COIN_DEFS[conv] for conv in conventions]
    orders = sorted({len(g.controls) for g in c.gates if g.kind is GateKind.MCX and len(g.controls) >= 3})
    for k in orders:
        args = ",".join([f"c{i}" for i in range(k)] + ["t"])
        lines.append(f"opaque mcx_{k} {args};")
    lines.append(f"qreg q[{c.width}];")

    for g in c.gates:
        negs = [f"x q[{ctl.qubit}];" for ctl in g.controls if ctl.polarity == 0]
        lines += negs
        lines.append(_qasm_body(g))
        lines += negs
    return "\n".join(lines) + "\n"


def _qasm_body(g: Gate) -> str:
    q = [f"q[{i}]" for i in (*(ctl.qubit for ctl in g.controls), *g.targets)]
    if g.kind is GateKind.COIN_R:
        return f"coin_{g.convention.value}({float(g.theta)!r}) {q[0]};"
    if g.kind is GateKind.CSWAP:
        return f"cswap {','.join(q)};"
    if g.kind is GateKind.SWAP:
        return f"swap {','.join(q)};"
    k = len(g.controls)
    name = {0: "x", 1: "cx", 2: "ccx"}.get(k, f"mcx_{k}")
    return f"{name} {','.join(q)};"
