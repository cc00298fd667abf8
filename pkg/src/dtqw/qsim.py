"""Dense statevector simulation of circuit-IR circuits.

Index convention: a basis state is the bit string ``b0 b1 ... b(n-1)`` with
qubit 0 leftmost, and its array index is ``int(bits, 2)``. So qubit 0 (the
coin) is the most significant bit and kets print as ``|coin pos... anc...>``,
matching the layout of the position tables.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from dtqw.circuit import Circuit, Gate, GateKind
from dtqw.encoding import Encoding, UnmappedBitString
from dtqw.walk import Distribution, coin_matrix

__all__ = [
    "MAX_QUBITS",
    "QState",
    "IndexOutOfRange",
    "basis_state",
    "apply_gate",
    "run",
    "trace_out",
    "postselect",
    "position_distribution",
    "sample",
]

MAX_QUBITS = 12


class IndexOutOfRange(IndexError):
    pass


@dataclass(frozen=True, eq=False)
class QState:
    n: int
    amps: np.ndarray

    def __post_init__(self) -> None:
        if not 1 <= self.n <= MAX_QUBITS:
            raise ValueError(f"qubit count must be in 1..{MAX_QUBITS}, got {self.n}")
        a = np.array(self.amps, dtype=np.complex128).reshape(-1)
        if a.size != 2**self.n:
            raise ValueError(f"expected {2**self.n} amplitudes, got {a.size}")
        a.flags.writeable = False
        object.__setattr__(self, "amps", a)

    def norm(self) -> float:
        return float(np.sum(np.abs(self.amps) ** 2))

    def amplitude(self, bits: str) -> complex:
        return complex(self.amps[int(bits, 2)])

    def kets(self, tol: float = 1e-12) -> dict[str, complex]:
        """Nonzero amplitudes keyed by bit string."""
        idx = np.flatnonzero(np.abs(self.amps) > tol)
        return {format(int(i), f"0{self.n}b"): complex(self.amps[i]) for i in idx}

    def probabilities(self) -> np.ndarray:
        return np.abs(self.amps) ** 2


def basis_state(bits: str) -> QState:
    if set(bits) - {"0", "1"}:
        raise ValueError(f"not a bit string: {bits!r}")
    a = np.zeros(2 ** len(bits), dtype=np.complex128)
    a[int(bits, 2)] = 1.0
    return QState(len(bits), a)


def _check(state: QState, g: Gate) -> None:
    bad = [q for q in g.qubits if not 0 <= q < state.n]
    if bad:
        raise IndexOutOfRange(f"{g.kind.value} touches qubit(s) {bad} of a {state.n}-qubit state")


def _index(n: int, g: Gate, fixed: dict[int, int]) -> tuple:
    idx: list = [slice(None)] * n
    for c in g.controls:
        idx[c.qubit] = c.polarity
    for q, v in fixed.items():
        idx[q] = v
    return tuple(idx)


def apply_gate(state: QState, g: Gate) -> QState:
    _check(state, g)
    n = state.n
    psi = state.amps.reshape((2,) * n).copy()
    if g.kind is GateKind.COIN_R:
        m = coin_matrix(g.theta, g.convention)
        q = g.targets[0]
        psi = np.moveaxis(np.tensordot(m, psi, axes=([1], [q])), 0, q)
        return QState(n, psi)

    src = state.amps.reshape((2,) * n)
    if g.kind in (GateKind.CSWAP, GateKind.SWAP):
        a, b = g.targets
        s01, s10 = _index(n, g, {a: 0, b: 1}), _index(n, g, {a: 1, b: 0})
    else:
        t = g.targets[0]
        s01, s10 = _index(n, g, {t: 0}), _index(n, g, {t: 1})
    psi[s01], psi[s10] = src[s10], src[s01]
    return QState(n, psi)


def run(c: Circuit, initial: str | QState) -> QState:
    state = initial if isinstance(initial, QState) else basis_state(initial)
    if state.n != c.width:
        raise ValueError(f"initial state has {state.n} qubits, circuit has {c.width}")
    for g in c.gates:
        state = apply_gate(state, g)
    return state


def _split(state: QState, qubits: list[int]) -> tuple[np.ndarray, list[int]]:
    keep = [q for q in range(state.n) if q not in set(qubits)]
    psi = state.amps.reshape((2,) * state.n).transpose(keep + list(qubits))
    return psi.reshape(2 ** len(keep), 2 ** len(qubits)), keep


def trace_out(state: QState, qubits: list[int]) -> tuple[np.ndarray, float]:
    """Diagonal of the reduced density matrix on the kept qubits, and its purity.

    The diagonal is indexed like a state of the kept qubits in ascending order.
    """
    qubits = sorted(set(qubits))
    if any(not 0 <= q < state.n for q in qubits):
        raise IndexOutOfRange(f"cannot trace {qubits} from {state.n} qubits")
    m, _ = _split(state, qubits)
    diag = np.sum(np.abs(m) ** 2, axis=1)
    # Tr(rho^2) = ||M^dag M||_F^2; use the smaller Gram matrix.
    gram = m.conj().T @ m if m.shape[1] <= m.shape[0] else m @ m.conj().T
    purity = float(np.real(np.sum(np.abs(gram) ** 2)))
    return diag, purity


def postselect(state: QState, qubits: list[int], values: list[int] | None = None) -> tuple[QState, float]:
    """Project ``qubits`` onto ``values`` (default all 0) and renormalise.

    Returns the conditional state (same width, projected qubits fixed) and the
    probability of the outcome.
    """
    values = [0] * len(qubits) if values is None else list(values)
    psi = state.amps.reshape((2,) * state.n)
    idx: list = [slice(None)] * state.n
    for q, v in zip(qubits, values):
        idx[q] = v
    out = np.zeros_like(psi)
    out[tuple(idx)] = psi[tuple(idx)]
    p = float(np.sum(np.abs(out) ** 2))
    if p == 0.0:
        raise ValueError("postselected outcome has zero probability")
    return QState(state.n, out / np.sqrt(p)), p


def position_distribution(
    state: QState,
    enc: Encoding,
    coin_qubit: int,
    position_qubits: list[int] | tuple[int, ...],
    tol: float = 1e-12,
) -> Distribution:
    """Walk distribution read off the coin and position registers.

    Every other qubit is summed over. For HAMMING each weight class is summed.
    """
    if len(position_qubits) != enc.width:
        raise ValueError(f"encoding width {enc.width} != {len(position_qubits)} position qubits")
    probs: dict[int, list[float]] = {}
    for bits, amp in state.kets(tol=0.0).items():
        p = abs(amp) ** 2
        pos = "".join(bits[q] for q in position_qubits)
        try:
            x = enc.decode(pos)
        except UnmappedBitString:
            if abs(amp) > tol:
                raise
            continue
        slot = probs.setdefault(x, [0.0, 0.0])
        slot[int(bits[coin_qubit])] += p
    return Distribution.from_probs({x: (pu, pd) for x, (pu, pd) in probs.items()})


def sample(state: QState, shots: int, seed: int) -> dict[str, int]:
    """Multinomial measurement counts in the computational basis.

    Uses numpy's PCG64 generator seeded with ``seed``, so equal inputs give
    equal counts.
    """
    if shots < 1:
        raise ValueError("shots must be at least 1")
    p = state.probabilities()
    p = p / p.sum()
    rng = np.random.Generator(np.random.PCG64(seed))
    counts = rng.multinomial(shots, p)
    return {format(int(i), f"0{state.n}b"): int(counts[i]) for i in np.flatnonzero(counts)}
