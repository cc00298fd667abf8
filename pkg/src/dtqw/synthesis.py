"""Compile walk specifications into gate-level circuits.

Register layout for every circuit built here: qubit 0 is the coin, qubits
1..w hold the position string (leftmost table bit on qubit 1), ancillas follow.

Shift operators become partial permutations of ``(coin, position bits)``
basis states. Each coin sector is lowered with transformation-based reversible
synthesis, using the sector's coin value and any position bit that is constant
on the step's domain as extra controls. A reachable-set pass then drops every
control and gate that cannot matter on the states that can occur.
"""

from __future__ import annotations

import enum
import functools
import itertools
import math
import random
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from dtqw.circuit import Circuit, Gate, GateKind, coin, controlled_x, cswap, metrics, x
from dtqw.encoding import HAMMING, Encoding, EncodingName, get_encoding
from dtqw.walk import CoinConvention

__all__ = [
    "WalkKind",
    "BoundaryOverflow",
    "CapacityExceeded",
    "SynthesisFailure",
    "UnsupportedDepth",
    "ShiftPermutation",
    "SynthesisPlan",
    "Resources",
    "shift_permutation",
    "synthesize_step",
    "synthesize_walk",
    "interference_free_dqw",
    "merge_network",
    "synthesize_dqw_ancilla",
    "capacity",
    "estimate_resources",
    "compare_encodings",
    "reachable_prune",
]

Bits = tuple[int, ...]


class BoundaryOverflow(ValueError):
    pass


class CapacityExceeded(ValueError):
    pass


class SynthesisFailure(RuntimeError):
    pass


class UnsupportedDepth(ValueError):
    pass


class WalkKind(str, enum.Enum):
    SQW = "sqw"
    DQW = "dqw"
    DQW_ANCILLA = "dqw-ancilla"


def _moves(walk: WalkKind) -> tuple[int, int]:
    """Displacement of the (up, down) coin components."""
    return (-1, 1) if walk is WalkKind.SQW else (0, 1)


def _state(enc: Encoding, c: int, xpos: int) -> Bits:
    return (c, *(int(b) for b in enc.encode(xpos)))


@dataclass(frozen=True)
class ShiftPermutation:
    """Coin-conditioned shift written on basis states ``(coin, b1, ..., bw)``."""

    encoding: Encoding
    walk: WalkKind
    mapping: tuple[tuple[Bits, Bits], ...]

    def __post_init__(self) -> None:
        targets = [t for _, t in self.mapping]
        if len(set(targets)) != len(targets) or len({s for s, _ in self.mapping}) != len(targets):
            raise ValueError("shift permutation is not injective")

    def as_dict(self) -> dict[Bits, Bits]:
        return dict(self.mapping)

    @property
    def width(self) -> int:
        return 1 + self.encoding.width


def shift_permutation(
    enc: Encoding,
    walk: WalkKind | str,
    positions: Iterable[int] | None = None,
    parity: int | None = None,
) -> ShiftPermutation:
    """Shift operator of ``walk`` on the encoded basis.

    With ``positions`` omitted, every domain site whose neighbours are encoded
    is included (optionally only sites of the given ``parity``). Explicit
    positions with an unencodable neighbour raise BoundaryOverflow.
    """
    walk = WalkKind(walk)
    if not enc.injective:
        raise ValueError(f"{enc.name.value} is not injective; use synthesize_dqw_ancilla")
    domain = set(enc.domain)
    up, down = _moves(walk)
    explicit = positions is not None
    sites = sorted(set(positions)) if explicit else sorted(domain)
    if parity is not None:
        sites = [s for s in sites if s % 2 == parity % 2]
    pairs = []
    for xpos in sites:
        if xpos not in domain:
            raise BoundaryOverflow(f"{enc.name.value}: position {xpos} is not encodable")
        for c, move in ((0, up), (1, down)):
            if xpos + move not in domain:
                if explicit:
                    raise BoundaryOverflow(
                        f"{enc.name.value}: coin {c} at x={xpos} moves to unencodable x={xpos + move}"
                    )
                break
        else:
            for c, move in ((0, up), (1, down)):
                pairs.append((_state(enc, c, xpos), _state(enc, c, xpos + move)))
    return ShiftPermutation(enc, walk, tuple(pairs))


# --- reversible lowering -------------------------------------------------


def _mmd(perm: list[int], k: int) -> list[tuple[int, int]]:
    """Transformation-based synthesis of a permutation of range(2**k).

    Returns gates ``(target_bit, control_mask)`` in application order; every
    control is positive.
    """
    f = list(perm)
    out: list[tuple[int, int]] = []

    def apply(t: int, ctrl: int, start: int) -> None:
        for j in range(start, len(f)):
            if f[j] & ctrl == ctrl:
                f[j] ^= 1 << t

    for i in range(len(f)):
        if f[i] == i:
            continue
        for t in range(k):
            if (i >> t) & 1 and not (f[i] >> t) & 1:
                ctrl = f[i]
                apply(t, ctrl, i)
                out.append((t, ctrl))
        for t in range(k):
            if (f[i] >> t) & 1 and not (i >> t) & 1:
                ctrl = i
                apply(t, ctrl, i)
                out.append((t, ctrl))
    return out[::-1]


def _completions(
    partial: dict[int, int], k: int, brute_limit: int = 6, random_tries: int = 40
) -> Iterable[list[int]]:
    """Full permutations of range(2**k) extending ``partial``.

    Exhaustive when few states are unconstrained; otherwise a greedy pairing
    plus a fixed set of seeded random pairings.
    """
    size = 2**k
    free_src = [s for s in range(size) if s not in partial]
    used = set(partial.values())
    free_dst = [d for d in range(size) if d not in used]
    if len(free_src) <= brute_limit:
        for order in itertools.permutations(free_dst):
            full = dict(partial)
            full.update(zip(free_src, order))
            yield [full[i] for i in range(size)]
        return
    # Keep untouched states fixed, then pair the rest by Hamming distance.
    full = dict(partial)
    fixed = [s for s in free_src if s in set(free_dst)]
    full.update({s: s for s in fixed})
    rest_src = [s for s in free_src if s not in full]
    rest_dst = [d for d in free_dst if d not in set(fixed)]
    greedy = dict(full)
    pool = list(rest_dst)
    for s in rest_src:
        d = min(pool, key=lambda v: (bin(v ^ s).count("1"), v))
        pool.remove(d)
        greedy[s] = d
    yield [greedy[i] for i in range(size)]
    rng = random.Random(len(partial) * 7919 + k)
    for _ in range(random_tries):
        order = list(rest_dst)
        rng.shuffle(order)
        trial = dict(full)
        trial.update(zip(rest_src, order))
        yield [trial[i] for i in range(size)]


def _sector_gates(
    pairs: dict[Bits, Bits], coin_value: int, n: int
) -> list[Gate]:
    """Lower the pairs of one coin sector to controlled-X gates."""
    srcs = list(pairs)
    if all(s == t for s, t in pairs.items()):
        return []
    context = [
        q for q in range(1, n)
        if len({s[q] for s in srcs} | {t[q] for t in pairs.values()}) == 1
    ]
    free = [q for q in range(1, n) if q not in context]
    k = len(free)

    def pack(b: Bits) -> int:
        return sum(b[q] << i for i, q in enumerate(free))

    partial = {pack(s): pack(t) for s, t in pairs.items()}
    base = [(0, coin_value)] + [(q, srcs[0][q]) for q in context]
    best: list[Gate] | None = None
    best_key = None
    for perm in _completions(partial, k):
        inverse = [0] * len(perm)
        for i, v in enumerate(perm):
            inverse[v] = i
        for raw in (_mmd(perm, k), _mmd(inverse, k)[::-1]):
            gates = [
                controlled_x(base + [(free[i], 1) for i in range(k) if (mask >> i) & 1], free[t])
                for t, mask in raw
            ]
            key = _cost(gates)
            if best_key is None or key < best_key:
                best, best_key = gates, key
    return best or []


def _propagate(states: set[Bits], g: Gate, coin_qubit: int = 0) -> set[Bits]:
    if g.kind is GateKind.COIN_R:
        q = g.targets[0]
        out = set(states)
        for s in states:
            flipped = list(s)
            flipped[q] ^= 1
            out.add(tuple(flipped))
        return out
    return {g.apply_bits(s) for s in states}


def _reduce(gates: list[Gate], states: set[Bits]) -> list[Gate]:
    """Drop controls and gates that make no difference on ``states``.

    ``states`` is the set of basis states that can enter the first gate. Gate
    actions on every reachable state are unchanged.
    """
    out: list[Gate] = []
    current = set(states)
    for g in gates:
        if g.kind is GateKind.COIN_R:
            out.append(g)
            current = _propagate(current, g)
            continue
        if not any(g.fires(s) for s in current):
            continue
        if g.kind in (GateKind.X, GateKind.CNOT, GateKind.TOFFOLI, GateKind.MCX):
            ctl = list(g.controls)
            for c in sorted(g.controls, key=lambda c: c.qubit == 0):
                trial = [d for d in ctl if d != c]
                if all(s[c.qubit] == c.polarity for s in current if all(s[d.qubit] == d.polarity for d in trial)):
                    ctl = trial
            g = controlled_x(ctl, g.targets[0])
        out.append(g)
        current = _propagate(current, g)
    return _cancel_pairs(out)


def _cancel_pairs(gates: list[Gate]) -> list[Gate]:
    out: list[Gate] = []
    for g in gates:
        if out and out[-1] == g and g.kind is not GateKind.COIN_R:
            out.pop()
        else:
            out.append(g)
    return out


# Exact search is only attempted on small domains of narrow registers.
EXACT_MAX_QUBITS = 5
EXACT_MAX_STATES = 16
EXACT_HALF_DEPTH = 3


def _gate_table(n: int, max_controls: int) -> list[tuple[int, tuple[tuple[int, int], ...]]]:
    table = []
    for t in range(n):
        others = [q for q in range(n) if q != t]
        for k in range(max_controls + 1):
            for qs in itertools.combinations(others, k):
                for pol in itertools.product((0, 1), repeat=k):
                    table.append((t, tuple(zip(qs, pol))))
    return table


# Odd multipliers for hashing bit-plane rows to 64-bit keys.
_PLANE_WEIGHTS = np.random.Generator(np.random.PCG64(20240611)).integers(
    1, 2**63, size=EXACT_MAX_QUBITS, dtype=np.uint64
) | np.uint64(1)


def _keys(planes: np.ndarray) -> np.ndarray:
    return planes.astype(np.uint64) @ _PLANE_WEIGHTS[: planes.shape[1]]


class _Frontier:
    """Images of a set of basis states under all controlled-X words of each length.

    A row stores one bit plane per qubit: bit i of plane q is qubit q of the
    i-th tracked state. Layers below ``depth`` are deduplicated against all
    earlier ones; the last layer is kept raw, as it is only probed for matches.
    """

    def __init__(self, states: list[Bits], table, depth: int):
        n = len(states[0])
        self.full = np.uint32(2 ** len(states) - 1)
        self.table = table
        self.depth = depth
        start = np.array(
            [[sum(s[q] << i for i, s in enumerate(states)) for q in range(n)]], dtype=np.uint32
        )
        keys = _keys(start)
        # (planes, keys, parent index, gate index) per depth, built on demand
        self.layers = [(start, keys, np.zeros(1, dtype=np.int64), np.full(1, -1))]
        self.seen = keys
        self._sorted: dict[int, tuple[np.ndarray, np.ndarray]] = {}

    def layer(self, d: int):
        while len(self.layers) <= d:
            cand, parent, gate = self._expand(self.layers[-1][0])
            keys = _keys(cand)
            if len(self.layers) < self.depth:
                keys, first = np.unique(keys, return_index=True)
                fresh = ~np.isin(keys, self.seen, assume_unique=True)
                first, keys = first[fresh], keys[fresh]
                cand, parent, gate = cand[first], parent[first], gate[first]
                self.seen = np.concatenate([self.seen, keys])
            self.layers.append((cand, keys, parent, gate))
        return self.layers[d]

    def sorted_keys(self, d: int) -> tuple[np.ndarray, np.ndarray]:
        if d not in self._sorted:
            keys = self.layer(d)[1]
            order = np.argsort(keys)
            self._sorted[d] = order, keys[order]
        return self._sorted[d]

    def _expand(self, rows: np.ndarray):
        g = len(self.table)
        out = np.repeat(rows[:, None, :], g, axis=1)
        for i, (t, ctl) in enumerate(self.table):
            fires = np.full(len(rows), self.full, dtype=np.uint32)
            for q, pol in ctl:
                fires &= rows[:, q] if pol else ~rows[:, q]
            out[:, i, t] ^= fires & self.full
        idx = np.arange(len(rows) * g)
        return out.reshape(-1, rows.shape[1]), idx // g, idx % g

    def word(self, depth: int, idx: int) -> list[int]:
        out = []
        for d in range(depth, 0, -1):
            _, _, parent, gate = self.layers[d]
            out.append(int(gate[idx]))
            idx = int(parent[idx])
        return out[::-1]


def _exact_network(pairs: dict[Bits, Bits], n: int, max_controls: int) -> list[Gate] | None:
    """Shortest controlled-X network with at most ``max_controls`` controls.

    Meet-in-the-middle over words of up to ``2 * EXACT_HALF_DEPTH`` gates.
    Controlled-X gates are involutions, so a word reaching the same middle
    rows from the sources and from the targets gives a network.
    """
    table = _gate_table(n, max_controls)
    srcs = list(pairs)
    fwd = _Frontier(srcs, table, EXACT_HALF_DEPTH)
    bwd = _Frontier([pairs[s] for s in srcs], table, EXACT_HALF_DEPTH)
    top = EXACT_HALF_DEPTH
    for total in range(2 * top + 1):
        for da in range(max(0, total - top), min(total, top) + 1):
            db = total - da
            order_a, ka = fwd.sorted_keys(da)
            order_b, kb = bwd.sorted_keys(db)
            pos = np.searchsorted(kb, ka)
            for ia in np.flatnonzero(kb[np.minimum(pos, len(kb) - 1)] == ka):
                i = order_a[ia]
                p = pos[ia]
                while p < len(kb) and kb[p] == ka[ia]:
                    j = order_b[p]
                    if np.array_equal(fwd.layer(da)[0][i], bwd.layer(db)[0][j]):
                        word = fwd.word(da, int(i)) + bwd.word(db, int(j))[::-1]
                        return [controlled_x(table[w][1], table[w][0]) for w in word]
                    p += 1
    return None


def _lower(mapping: dict[Bits, Bits], n: int, reach: set[Bits] | None = None) -> list[Gate]:
    """Controlled-X network realising ``mapping`` (coin bit preserved).

    The network is only required to be right on ``reach`` (default: the whole
    mapping domain), which lets the reduction pass drop more controls.
    """
    reach = set(mapping) if reach is None else set(reach)
    return list(_lower_cached(tuple(sorted(mapping.items())), tuple(sorted(reach)), n))


@functools.lru_cache(maxsize=None)
def _lower_cached(items: tuple, reach: tuple, n: int) -> tuple[Gate, ...]:
    mapping = dict(items)
    gates: list[Gate] = []
    for c in (0, 1):
        sector = {s: t for s, t in mapping.items() if s[0] == c}
        if sector:
            gates += _sector_gates(sector, c, n)
    gates = _reduce(gates, set(reach))
    _check(gates, {s: mapping[s] for s in reach})
    return tuple(gates)


def _check(gates: list[Gate], mapping: dict[Bits, Bits]) -> None:
    for s in mapping:
        img = s
        for g in gates:
            img = g.apply_bits(img)
        if img != mapping[s]:
            raise SynthesisFailure(f"network maps {s} to {img}, expected {mapping[s]}")


def _refine(gates: list[Gate], mapping: dict[Bits, Bits], n: int) -> list[Gate]:
    """Swap ``gates`` for an exact network of lower control order, if one exists."""
    if n > EXACT_MAX_QUBITS or len(mapping) > EXACT_MAX_STATES:
        return gates
    return list(_refine_cached(tuple(gates), tuple(sorted(mapping.items())), n))


@functools.lru_cache(maxsize=None)
def _refine_cached(gates: tuple[Gate, ...], items: tuple, n: int) -> tuple[Gate, ...]:
    mapping = dict(items)
    for limit in range(1, min(_cost(gates)[0], 3)):
        found = _exact_network(mapping, n, limit)
        if found is not None:
            _check(found, mapping)
            return tuple(found)
    return gates


def _cost(gates: list[Gate]) -> tuple[int, int, int]:
    return (
        max((g.control_order for g in gates), default=0),
        len(gates),
        sum(g.control_order for g in gates),
    )


def _always_flipped(mapping: dict[Bits, Bits], n: int) -> list[int]:
    return [q for q in range(1, n) if mapping and all(s[q] != t[q] for s, t in mapping.items())]


def synthesize_step(
    perm: ShiftPermutation,
    theta: float,
    convention: CoinConvention = CoinConvention.PHASE,
) -> Circuit:
    """Coin rotation followed by a network equal to ``perm`` on its domain."""
    n = perm.width
    mapping = perm.as_dict()
    flips = _always_flipped(mapping, n)
    body = {s: _xor(t, flips) for s, t in mapping.items()}
    gates = [coin(0, theta, convention)] + _lower(body, n) + [x(q) for q in flips]
    return Circuit(n, 0, tuple(range(1, n)), (), tuple(gates))


def _xor(b: Bits, qubits: Iterable[int]) -> Bits:
    out = list(b)
    for q in qubits:
        out[q] ^= 1
    return tuple(out)


# --- walks ---------------------------------------------------------------


@dataclass(frozen=True)
class SynthesisPlan:
    """What to compile.

    ``fixed_initial`` is ``(coin, x)``; when set, the circuit is only required
    to be correct from that basis state and is specialised accordingly.
    Otherwise the circuit is correct from any in-range state whose position
    has the parity of ``initial_position``.
    """

    walk: WalkKind
    encoding: Encoding
    steps: int
    fixed_initial: tuple[int, int] | None = None
    parity_tracking: bool = False
    initial_position: int = 0
    convention: CoinConvention = CoinConvention.PHASE

    def __post_init__(self) -> None:
        object.__setattr__(self, "walk", WalkKind(self.walk))
        object.__setattr__(self, "convention", CoinConvention(self.convention))
        if self.steps < 0:
            raise ValueError("steps must be non-negative")

    @property
    def start(self) -> int:
        return self.fixed_initial[1] if self.fixed_initial else self.initial_position


def capacity(enc: Encoding, walk: WalkKind | str, start: int = 0) -> int:
    """Largest step count that never leaves the encoding's domain from ``start``."""
    walk = WalkKind(walk)
    domain = set(enc.domain)
    if start not in domain:
        return -1
    up, down = (-1, 1) if walk is WalkKind.SQW else (0, 1)
    t = 0
    while all(v in domain for v in (start + (t + 1) * up, start + (t + 1) * down)):
        t += 1
    return t


def _sites(plan: SynthesisPlan, t: int) -> list[int]:
    """Positions that can be occupied before step ``t + 1`` (0-based ``t``)."""
    x0 = plan.start
    if plan.fixed_initial is not None:
        if plan.walk is WalkKind.SQW:
            return list(range(x0 - t, x0 + t + 1, 2))
        return list(range(x0, x0 + t + 1))
    domain = plan.encoding.domain
    if plan.walk is WalkKind.SQW:
        return [s for s in domain if (s - x0 - t) % 2 == 0]
    return list(domain)


def synthesize_walk(plan: SynthesisPlan, thetas: float | Iterable[float]) -> Circuit:
    """Concatenate one coin + shift body per step.

    Standard-walk bodies alternate between even-site and odd-site networks.
    With ``parity_tracking`` the parity qubit's per-step X gates are tracked
    classically and a single X is emitted at the end when needed.
    """
    if plan.walk is WalkKind.DQW_ANCILLA:
        return synthesize_dqw_ancilla(plan.steps, thetas)
    thetas = _thetas(thetas, plan.steps)
    enc = plan.encoding
    cap = capacity(enc, plan.walk, plan.start)
    if plan.steps > cap:
        raise CapacityExceeded(
            f"{enc.name.value} supports {max(cap, 0)} {plan.walk.value} steps from x={plan.start}, "
            f"asked for {plan.steps}"
        )
    n = 1 + enc.width
    frame = (0,) * n
    gates: list[Gate] = []
    for t in range(plan.steps):
        sites = _sites(plan, t)
        if plan.fixed_initial is not None:
            perm = shift_permutation(enc, plan.walk, positions=sites)
        else:
            parity = (plan.start + t) % 2 if plan.walk is WalkKind.SQW else None
            perm = shift_permutation(enc, plan.walk, parity=parity)
        mapping = perm.as_dict()
        flips = _always_flipped(mapping, n)
        mask = _ones(frame)
        body = {_xor(s, mask): _xor(_xor(d, flips), mask) for s, d in mapping.items()}
        network = _lower(body, n)
        if plan.fixed_initial is not None:
            # The generic body, pruned to this step's states, is sometimes cheaper.
            parity = (plan.start + t) % 2 if plan.walk is WalkKind.SQW else None
            generic = shift_permutation(enc, plan.walk, parity=parity).as_dict()
            if set(mapping) <= set(generic) and _always_flipped(generic, n) == flips:
                wide = {_xor(s, mask): _xor(_xor(d, flips), mask) for s, d in generic.items()}
                alt = _lower(wide, n, reach=set(body))
                if _cost(alt) < _cost(network):
                    network = alt
            network = _refine(network, body, n)
        gates.append(coin(0, thetas[t], plan.convention))
        gates += network
        if plan.parity_tracking:
            frame = _xor(frame, flips)
        else:
            gates += [x(q) for q in flips]
    gates += [x(q) for q in _ones(frame)]
    circuit = Circuit(n, 0, tuple(range(1, n)), (), tuple(gates))
    if plan.fixed_initial is not None:
        circuit = reachable_prune(circuit, {_state(enc, *plan.fixed_initial)})
    return circuit


def _ones(b: Bits) -> list[int]:
    return [q for q, v in enumerate(b) if v]


def _thetas(thetas: float | Iterable[float], steps: int) -> list[float]:
    if isinstance(thetas, (int, float)):
        return [float(thetas)] * steps
    out = [float(v) for v in thetas]
    if len(out) == 1 and steps > 1:
        out = out * steps
    if len(out) != steps:
        raise ValueError(f"need {steps} coin angles, got {len(out)}")
    return out


def reachable_prune(circuit: Circuit, initial: set[Bits]) -> Circuit:
    """Specialise ``circuit`` to the given initial basis states.

    Gates that never fire on a reachable state are removed and redundant
    controls dropped; the output state from ``initial`` is unchanged.
    """
    return circuit.with_gates(_reduce(list(circuit.gates), set(initial)))


# --- Hamming-weight encoding with ancilla merge -----------------------------

MAX_ANCILLA_STEPS = 4

# Comparators (source, destination) over position qubits 1..n-1: move a 1 from
# source to destination when the destination is empty. The order reproduces
# the merged representatives 01 (n=3) and 010 / 011 (n=4).
_COMPARATORS = {
    3: ((1, 2),),
    4: ((1, 2), (3, 2), (1, 3)),
}


def interference_free_dqw(n: int, thetas: float | Iterable[float], width: int | None = None) -> Circuit:
    """Directed walk on the Hamming-weight encoding without the merge.

    Step k applies the REAL coin then flips position qubit k when the coin is 1,
    so position qubit k records the k-th coin outcome.
    """
    thetas = _thetas(thetas, n)
    w = max(n, HAMMING.width) if width is None else width
    if n > w:
        raise CapacityExceeded(f"{n} steps need {n} position qubits, have {w}")
    gates = []
    for k in range(n):
        gates.append(coin(0, thetas[k], CoinConvention.REAL))
        gates.append(controlled_x([(0, 1)], k + 1))
    return Circuit(1 + w, 0, tuple(range(1, 1 + w)), (), tuple(gates))


def merge_network(n: int, first_ancilla: int) -> list[Gate]:
    """Comparator network on ``C(n-1, 2)`` ancillas, then a Hadamard layer.

    Each comparator is a CNOT into its ancilla, an ancilla-controlled swap and
    a Toffoli that clears the ancilla when no swap was needed. Afterwards each
    weight class of the first ``n - 1`` position bits sits on one string and the
    ancillas label which member it came from. The Hadamard layer (REAL coin at
    pi/4) makes the ancilla outcome 0...0 project the members onto their
    coherent sum.
    """
    if n > MAX_ANCILLA_STEPS:
        raise UnsupportedDepth(f"merge network defined for up to {MAX_ANCILLA_STEPS} steps, got {n}")
    comparators = _COMPARATORS.get(n, ())
    gates: list[Gate] = []
    for i, (src, dst) in enumerate(comparators):
        a = first_ancilla + i
        gates.append(controlled_x([(src, 1)], a))
        gates.append(cswap(a, src, dst))
        gates.append(controlled_x([(src, 1), (dst, 1)], a))
    for i in range(len(comparators)):
        gates.append(coin(first_ancilla + i, math.pi / 4, CoinConvention.REAL))
    return gates


def synthesize_dqw_ancilla(n: int, thetas: float | Iterable[float], merge: bool = True) -> Circuit:
    """Interference-free directed walk plus the ancilla merge (n <= 4).

    The walk register is exact after postselecting every ancilla on 0; see
    ``dtqw.qsim.postselect``.
    """
    if n > MAX_ANCILLA_STEPS:
        raise UnsupportedDepth(f"ancilla directed walk supports at most {MAX_ANCILLA_STEPS} steps, got {n}")
    if n < 0:
        raise ValueError("steps must be non-negative")
    base = interference_free_dqw(n, thetas)
    if not merge:
        return base
    n_anc = math.comb(n - 1, 2) if n >= 2 else 0
    width = base.width + n_anc
    ancillas = tuple(range(base.width, width))
    gates = base.gates + tuple(merge_network(n, base.width))
    return Circuit(width, 0, base.position_qubits, ancillas, gates)


# --- resources -----------------------------------------------------------


@dataclass(frozen=True)
class Resources:
    walk: WalkKind
    min_qubits: int
    max_steps: int
    max_control_order: int
    ancillas: int


def estimate_resources(walk: WalkKind | str, qubits: int | None = None, steps: int | None = None) -> Resources:
    """Register size versus step count.

    Given ``qubits`` (coin included) the remaining fields describe the largest
    walk that register holds; given ``steps`` they describe the smallest
    register for that walk.
    """
    walk = WalkKind(walk)
    if (qubits is None) == (steps is None):
        raise ValueError("give exactly one of qubits or steps")
    if qubits is not None and qubits < 2:
        raise ValueError("need at least 2 qubits")
    if steps is not None and steps < 0:
        raise ValueError("steps must be non-negative")

    if walk is WalkKind.SQW:
        if qubits is None:
            qubits = math.ceil(math.log2(steps + 1)) + 2
        max_steps = 2 ** (qubits - 2) - 1
        return Resources(walk, qubits, max_steps if steps is None else steps, qubits - 2, 0)
    if walk is WalkKind.DQW:
        if qubits is None:
            qubits = math.ceil(math.log2(steps + 1)) + 1
        max_steps = 2 ** (qubits - 1) - 1
        return Resources(walk, qubits, max_steps if steps is None else steps, qubits - 1, 0)
    # Hamming weight: one position qubit per step.
    if steps is None:
        steps = qubits - 1
    n_anc = math.comb(steps - 1, 2) if steps >= 2 else 0
    order = 2 if n_anc else (1 if steps else 0)
    return Resources(walk, steps + 1, steps, order, n_anc)


@dataclass(frozen=True)
class CostRow:
    encoding: str
    total_gates: int
    depth: int
    max_control_order: int
    body_control_order: int
    gate_count_by_kind: dict
    ancillas: int
    note: str = ""


def compare_encodings(
    walk: WalkKind | str,
    steps: int,
    encodings: Iterable[Encoding | str],
    theta: float = math.pi / 4,
    fixed_initial: tuple[int, int] | None = (0, 0),
) -> list[CostRow]:
    """Gate cost of the same walk under several encodings, cheapest first.

    HAMMING rows use the interference-free directed walk; the merge network is
    added when ``steps`` allows it. Rows that cannot hold the walk raise
    CapacityExceeded.
    """
    walk = WalkKind(walk)
    rows = []
    for e in encodings:
        enc = get_encoding(e) if isinstance(e, (str, EncodingName)) else e
        if enc.name is EncodingName.HAMMING:
            if walk is WalkKind.SQW:
                raise CapacityExceeded("the Hamming-weight encoding only supports the directed walk")
            body = interference_free_dqw(steps, theta)
            merged = steps <= MAX_ANCILLA_STEPS
            circ = synthesize_dqw_ancilla(steps, theta) if merged else body
            m = metrics(circ)
            rows.append(CostRow(enc.name.value, m.total_gates, m.depth, m.max_control_order,
                                metrics(body).max_control_order, m.gate_count_by_kind,
                                len(circ.ancilla_qubits), "" if merged else "merge omitted"))
            continue
        plan = SynthesisPlan(WalkKind.DQW if walk is WalkKind.DQW_ANCILLA else walk, enc, steps, fixed_initial)
        circ = synthesize_walk(plan, theta)
        m = metrics(circ)
        body = max((g.control_order for g in circ.gates), default=0)
        rows.append(CostRow(enc.name.value, m.total_gates, m.depth, m.max_control_order, body,
                            m.gate_count_by_kind, 0))
    return sorted(rows, key=lambda r: (r.max_control_order, r.total_gates, r.encoding))
