"""Discrete-time quantum walks: direct simulation, variant equivalences,
position encodings and gate-level circuit synthesis with a small statevector
simulator to check the circuits."""

from dtqw.walk import (
    CoinConvention,
    Distribution,
    InitialState,
    Variant,
    WalkSpec,
    WalkState,
    distribution,
    evolve,
    make_initial,
    step,
    trajectory,
)
from dtqw.encoding import HAMMING, NAIVE, TABLE1, TABLE2, Encoding, EncodingName, get_encoding
from dtqw.circuit import Circuit, Gate, GateKind, export_qasm, from_json, metrics, to_json
from dtqw.synthesis import (
    SynthesisPlan,
    WalkKind,
    compare_encodings,
    estimate_resources,
    synthesize_dqw_ancilla,
    synthesize_walk,
)

__version__ = "0.1.0"
