"""Direct amplitude evolution of one-dimensional discrete-time quantum walks.

Three variants share one state layout: two complex arrays (coin up, coin down)
over a contiguous window of lattice sites whose leftmost label is ``offset``.

* SQW   -- coin, then up moves to x-1 and down moves to x+1.
* DQW   -- coin, then up stays and down moves to x+1.
* SSQW  -- coin(theta1), up moves left; coin(theta2), down moves right.

The window grows by one site on each side per step, so a walk started at
``x0`` always lives on ``[x0 - t, x0 + t]``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field, replace
from typing import Iterator, NamedTuple

import numpy as np

__all__ = [
    "CoinConvention",
    "Variant",
    "InitialState",
    "WalkSpec",
    "WalkState",
    "DistEntry",
    "Distribution",
    "coin_matrix",
    "make_initial",
    "step_sqw",
    "step_dqw",
    "step_ssqw",
    "step",
    "evolve",
    "trajectory",
    "distribution",
    "moments",
    "max_deviation",
]


class CoinConvention(str, enum.Enum):
    PHASE = "phase"
    REAL = "real"


class Variant(str, enum.Enum):
    SQW = "sqw"
    DQW = "dqw"
    SSQW = "ssqw"


def coin_matrix(theta: float, convention: CoinConvention = CoinConvention.PHASE) -> np.ndarray:
    """Return the 2x2 coin in the (up, down) basis.

    PHASE is ``[[c, -i s], [-i s, c]]``; REAL is ``[[c, s], [s, -c]]``.
    """
    c, s = math.cos(theta), math.sin(theta)
    if CoinConvention(convention) is CoinConvention.PHASE:
        return np.array([[c, -1j * s], [-1j * s, c]], dtype=np.complex128)
    return np.array([[c, s], [s, -c]], dtype=np.complex128)


@dataclass(frozen=True)
class InitialState:
    """Coin state ``cos(delta)|up> + exp(-i eta) sin(delta)|down>``."""

    delta: float = 0.0
    eta: float = 0.0

    def amplitudes(self) -> tuple[complex, complex]:
        return (
            complex(math.cos(self.delta)),
            complex(np.exp(-1j * self.eta) * math.sin(self.delta)),
        )


@dataclass(frozen=True)
class WalkSpec:
    variant: Variant
    theta: float
    steps: int
    theta2: float | None = None
    convention: CoinConvention = CoinConvention.PHASE
    initial: InitialState = field(default_factory=InitialState)
    initial_position: int = 0

    def __post_init__(self) -> None:
        object.__setattr__(self, "variant", Variant(self.variant))
        object.__setattr__(self, "convention", CoinConvention(self.convention))
        if self.steps < 0:
            raise ValueError(f"steps must be non-negative, got {self.steps}")
        if self.theta2 is not None and self.variant is not Variant.SSQW:
            raise ValueError("theta2 is only meaningful for the split-step walk")

    @property
    def second_theta(self) -> float:
        return self.theta if self.theta2 is None else self.theta2


@dataclass(frozen=True, eq=False)
class WalkState:
    """Amplitudes on sites ``offset .. offset + len(amps_up) - 1`` after ``t`` steps.

    The arrays are marked read-only; every step returns a fresh state.
    """

    t: int
    offset: int
    amps_up: np.ndarray
    amps_down: np.ndarray

    def __post_init__(self) -> None:
        up = np.array(self.amps_up, dtype=np.complex128)
        down = np.array(self.amps_down, dtype=np.complex128)
        if up.shape != down.shape or up.ndim != 1:
            raise ValueError("amps_up and amps_down must be 1-d arrays of equal length")
        up.flags.writeable = False
        down.flags.writeable = False
        object.__setattr__(self, "amps_up", up)
        object.__setattr__(self, "amps_down", down)

    @property
    def positions(self) -> np.ndarray:
        return np.arange(self.offset, self.offset + self.amps_up.size)

    def norm(self) -> float:
        return float(np.sum(np.abs(self.amps_up) ** 2) + np.sum(np.abs(self.amps_down) ** 2))

    def amplitude(self, x: int) -> tuple[complex, complex]:
        """(up, down) amplitude at site ``x``; zero outside the window."""
        i = x - self.offset
        if 0 <= i < self.amps_up.size:
            return complex(self.amps_up[i]), complex(self.amps_down[i])
        return 0j, 0j


def make_initial(spec: WalkSpec) -> WalkState:
    up, down = spec.initial.amplitudes()
    return WalkState(0, spec.initial_position, np.array([up]), np.array([down]))


def _coined(state: WalkState, theta: float, convention: CoinConvention) -> tuple[np.ndarray, np.ndarray]:
    m = coin_matrix(theta, convention)
    up = m[0, 0] * state.amps_up + m[0, 1] * state.amps_down
    down = m[1, 0] * state.amps_up + m[1, 1] * state.amps_down
    return up, down


def _shifted(up: np.ndarray, down: np.ndarray, up_move: int, down_move: int) -> tuple[np.ndarray, np.ndarray]:
    # Result spans one extra site on each side; moves are in {-1, 0, 1}.
    n = up.size
    new_up = np.zeros(n + 2, dtype=np.complex128)
    new_down = np.zeros(n + 2, dtype=np.complex128)
    new_up[1 + up_move : 1 + up_move + n] = up
    new_down[1 + down_move : 1 + down_move + n] = down
    return new_up, new_down


def step_sqw(
    state: WalkState, theta: float, convention: CoinConvention = CoinConvention.PHASE
) -> WalkState:
    up, down = _shifted(*_coined(state, theta, convention), -1, 1)
    return WalkState(state.t + 1, state.offset - 1, up, down)


def step_dqw(
    state: WalkState, theta: float, convention: CoinConvention = CoinConvention.PHASE
) -> WalkState:
    up, down = _shifted(*_coined(state, theta, convention), 0, 1)
    return WalkState(state.t + 1, state.offset - 1, up, down)


def step_ssqw(
    state: WalkState,
    theta1: float,
    theta2: float | None = None,
    convention: CoinConvention = CoinConvention.PHASE,
) -> WalkState:
    """One split step: ``S+ C(theta2) S- C(theta1)``."""
    theta2 = theta1 if theta2 is None else theta2
    # S- grows the window on the left only, S+ on the right only.
    up, down = _coined(state, theta1, convention)
    n = up.size
    half_up = np.zeros(n + 1, dtype=np.complex128)
    half_down = np.zeros(n + 1, dtype=np.complex128)
    half_up[:n] = up
    half_down[1:] = down
    half = WalkState(state.t, state.offset - 1, half_up, half_down)
    up, down = _coined(half, theta2, convention)
    new_up = np.zeros(n + 2, dtype=np.complex128)
    new_down = np.zeros(n + 2, dtype=np.complex128)
    new_up[: n + 1] = up
    new_down[1:] = down
    return WalkState(state.t + 1, state.offset - 1, new_up, new_down)


def step(state: WalkState, spec: WalkSpec) -> WalkState:
    """Advance ``state`` by one step of ``spec``'s variant."""
    if spec.variant is Variant.SQW:
        return step_sqw(state, spec.theta, spec.convention)
    if spec.variant is Variant.DQW:
        return step_dqw(state, spec.theta, spec.convention)
    return step_ssqw(state, spec.theta, spec.second_theta, spec.convention)


def trajectory(spec: WalkSpec) -> Iterator[WalkState]:
    """Yield the states at t = 0, 1, ..., spec.steps."""
    state = make_initial(spec)
    yield state
    for _ in range(spec.steps):
        state = step(state, spec)
        yield state


def evolve(spec: WalkSpec) -> WalkState:
    state = make_initial(spec)
    for _ in range(spec.steps):
        state = step(state, spec)
    return state


class DistEntry(NamedTuple):
    x: int
    p_up: float
    p_down: float
    p: float


@dataclass(frozen=True)
class Distribution:
    entries: tuple[DistEntry, ...]

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self) -> Iterator[DistEntry]:
        return iter(self.entries)

    def as_dict(self) -> dict[int, float]:
        return {e.x: e.p for e in self.entries}

    def total(self) -> float:
        return float(sum(e.p for e in self.entries))

    def prob(self, x: int) -> float:
        return self.as_dict().get(x, 0.0)

    @classmethod
    def from_probs(cls, probs: dict[int, tuple[float, float]]) -> "Distribution":
        """Build from ``{x: (p_up, p_down)}``."""
        return cls(tuple(DistEntry(x, pu, pd, pu + pd) for x, (pu, pd) in sorted(probs.items())))


def distribution(state: WalkState) -> Distribution:
    """Per-site probabilities, trimmed to the outermost sites with nonzero amplitude.

    Interior sites with zero probability (odd sites of a standard walk) are kept.
    """
    p_up = np.abs(state.amps_up) ** 2
    p_down = np.abs(state.amps_down) ** 2
    nz = np.flatnonzero((p_up + p_down) > 0)
    if nz.size == 0:
        return Distribution(())
    lo, hi = nz[0], nz[-1] + 1
    return Distribution(
        tuple(
            DistEntry(int(state.offset + i), float(p_up[i]), float(p_down[i]), float(p_up[i] + p_down[i]))
            for i in range(lo, hi)
        )
    )


def moments(dist: Distribution) -> tuple[float, float, int]:
    """Mean, variance and most likely site (ties go to the smaller x)."""
    if len(dist) == 0:
        raise ValueError("moments of an empty distribution")
    xs = np.array([e.x for e in dist.entries], dtype=float)
    ps = np.array([e.p for e in dist.entries])
    mean = float(np.dot(xs, ps))
    var = float(np.dot((xs - mean) ** 2, ps))
    best = max(dist.entries, key=lambda e: (e.p, -e.x))
    return mean, var, best.x


def max_deviation(a: WalkState, b: WalkState) -> float:
    """Largest componentwise |a - b| over the union of both windows."""
    lo = min(a.offset, b.offset)
    hi = max(a.offset + a.amps_up.size, b.offset + b.amps_up.size)

    def padded(s: WalkState) -> np.ndarray:
        out = np.zeros((2, hi - lo), dtype=np.complex128)
        i = s.offset - lo
        out[0, i : i + s.amps_up.size] = s.amps_up
        out[1, i : i + s.amps_down.size] = s.amps_down
        return out

    diff = np.abs(padded(a) - padded(b))
    return float(diff.max()) if diff.size else 0.0


def with_time(state: WalkState, t: int) -> WalkState:
    return replace(state, t=t)
