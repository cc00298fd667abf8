"""Relabelling maps between the walk variants and numerical equivalence checks.

Two steps of the standard walk equal one split step once the empty odd sites
are dropped and site ``2y`` is relabelled ``y``. Two directed steps equal one
split step after a global shift one site to the left. All comparisons here are
componentwise on amplitudes (both coin components), not on probabilities.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from dtqw.walk import (
    CoinConvention,
    InitialState,
    Variant,
    WalkSpec,
    WalkState,
    max_deviation,
    trajectory,
)

__all__ = [
    "NonZeroOddAmplitude",
    "compress_even",
    "translate",
    "verify_ssqw_sqw",
    "verify_dqw_sqw",
    "verify_ssqw_dqw",
    "EquivalenceReport",
    "certify",
]

ODD_TOLERANCE = 1e-14


class NonZeroOddAmplitude(ValueError):
    """Raised when compress_even would discard a non-negligible amplitude."""


def compress_even(state: WalkState, tol: float = ODD_TOLERANCE) -> WalkState:
    """Drop odd sites and relabel site ``2y`` as ``y``."""
    xs = state.positions
    odd = (xs % 2) != 0
    worst = max(
        float(np.abs(state.amps_up[odd]).max(initial=0.0)),
        float(np.abs(state.amps_down[odd]).max(initial=0.0)),
    )
    if worst >= tol:
        x_bad = int(xs[odd][np.argmax(np.abs(state.amps_up[odd]) + np.abs(state.amps_down[odd]))])
        raise NonZeroOddAmplitude(f"amplitude {worst:.3g} at odd site x={x_bad}")
    even = ~odd
    if not even.any():
        return WalkState(state.t // 2, 0, np.zeros(0), np.zeros(0))
    first = int(xs[even][0])
    return WalkState(state.t // 2, first // 2, state.amps_up[even], state.amps_down[even])


def translate(state: WalkState, k: int) -> WalkState:
    """Global shift: site x becomes x + k."""
    return WalkState(state.t, state.offset + k, state.amps_up, state.amps_down)


def _spec(variant: Variant, theta: float, steps: int, initial: InitialState, convention) -> WalkSpec:
    return WalkSpec(variant, theta, steps, convention=convention, initial=initial)


def verify_ssqw_sqw(
    theta: float,
    steps_t: int,
    initial: InitialState = InitialState(),
    convention: CoinConvention = CoinConvention.PHASE,
) -> float:
    """Max |psi_SSQW(y, t) - psi_SQW(2y, 2t)|."""
    ss = _last(_spec(Variant.SSQW, theta, steps_t, initial, convention))
    sq = _last(_spec(Variant.SQW, theta, 2 * steps_t, initial, convention))
    return max_deviation(ss, compress_even(sq))


def verify_dqw_sqw(
    theta: float,
    steps_t: int,
    initial: InitialState = InitialState(),
    convention: CoinConvention = CoinConvention.PHASE,
) -> float:
    """Max |psi_SQW(2y, 2t) - psi_DQW(y + t, 2t)|."""
    sq = _last(_spec(Variant.SQW, theta, 2 * steps_t, initial, convention))
    dq = _last(_spec(Variant.DQW, theta, 2 * steps_t, initial, convention))
    return max_deviation(compress_even(sq), translate(dq, -steps_t))


def verify_ssqw_dqw(
    theta: float,
    steps_t: int,
    initial: InitialState = InitialState(),
    convention: CoinConvention = CoinConvention.PHASE,
) -> float:
    """Max |psi_SSQW(y, t) - psi_DQW(y + t, 2t)|."""
    ss = _last(_spec(Variant.SSQW, theta, steps_t, initial, convention))
    dq = _last(_spec(Variant.DQW, theta, 2 * steps_t, initial, convention))
    return max_deviation(ss, translate(dq, -steps_t))


def _last(spec: WalkSpec) -> WalkState:
    state = None
    for state in trajectory(spec):
        pass
    return state


@dataclass(frozen=True)
class EquivalenceReport:
    """Per-t deviations for the three pairwise equivalences."""

    theta: float
    initial: InitialState
    ssqw_sqw: tuple[float, ...]
    dqw_sqw: tuple[float, ...]
    ssqw_dqw: tuple[float, ...]

    def worst(self) -> tuple[float, float, float]:
        return max(self.ssqw_sqw), max(self.dqw_sqw), max(self.ssqw_dqw)

    def passed(self, tol: float = 1e-10) -> bool:
        return all(d < tol for d in self.worst())


def certify(
    theta: float,
    max_t: int,
    initial: InitialState = InitialState(),
    convention: CoinConvention = CoinConvention.PHASE,
) -> EquivalenceReport:
    """Run all three equivalences for every t in 0..max_t from single trajectories.

    Equivalent to calling the three ``verify_*`` functions for each t, but
    evolves each variant only once.
    """
    sq = list(trajectory(_spec(Variant.SQW, theta, 2 * max_t, initial, convention)))
    dq = list(trajectory(_spec(Variant.DQW, theta, 2 * max_t, initial, convention)))
    ss = list(trajectory(_spec(Variant.SSQW, theta, max_t, initial, convention)))
    a, b, c = [], [], []
    for t in range(max_t + 1):
        sq_c = compress_even(sq[2 * t])
        dq_t = translate(dq[2 * t], -t)
        a.append(max_deviation(ss[t], sq_c))
        b.append(max_deviation(sq_c, dq_t))
        c.append(max_deviation(ss[t], dq_t))
    return EquivalenceReport(theta, initial, tuple(a), tuple(b), tuple(c))
