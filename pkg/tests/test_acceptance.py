"""Acceptance criteria, one test per criterion.

Run with ``pytest tests/test_acceptance.py -v``; a summary section lists one
``criterion N: PASS|FAIL`` line per criterion. Each test runs every sub-check
before failing, so the assertion message lists everything that missed.
"""

import math
import time

import numpy as np
import pytest

from dtqw.circuit import export_qasm, from_json, metrics, to_json
from dtqw.encoding import HAMMING, NAIVE, TABLE1, TABLE2, validate
from dtqw.equivalence import certify
from dtqw.qsim import basis_state, position_distribution, postselect, run, sample, trace_out
from dtqw.synthesis import (
    SynthesisPlan,
    compare_encodings,
    estimate_resources,
    interference_free_dqw,
    synthesize_dqw_ancilla,
    synthesize_walk,
)
from dtqw.walk import (
    CoinConvention,
    InitialState,
    Variant,
    WalkSpec,
    WalkState,
    distribution,
    evolve,
    max_deviation,
    moments,
    step_ssqw,
    trajectory,
)

from ledgers import INTERFERENCE_FREE, MERGED, evaluate
from oracles import circuit_unitary, dense_probabilities, qasm_unitary
from test_encoding import GOLDEN_NAIVE, GOLDEN_TABLE1, GOLDEN_TABLE2
from test_walk import _ssqw_recurrence


class Checks:
    """Collects failed sub-checks so one test can report all of them."""

    def __init__(self):
        self.failures = []

    def expect(self, ok, what):
        if not ok:
            self.failures.append(what)

    def done(self):
        assert not self.failures, "; ".join(self.failures)


def test_criterion_1_equivalence_suite():
    chk = Checks()
    rng = np.random.default_rng(2024)
    start = time.perf_counter()
    worst = 0.0
    for theta in (math.pi / 7, math.pi / 4, math.pi / 3):
        for delta, eta in rng.uniform(0, 2 * math.pi, size=(10, 2)):
            report = certify(theta, 50, InitialState(delta, eta))
            worst = max(worst, *report.worst())
            chk.expect(len(report.ssqw_sqw) == 51, "not every t <= 50 checked")
    elapsed = time.perf_counter() - start
    chk.expect(worst < 1e-10, f"max deviation {worst:.3e}")
    chk.expect(elapsed < 10, f"runtime {elapsed:.1f}s")
    chk.done()


def test_criterion_2_hundred_step_distributions():
    chk = Checks()
    theta = math.pi / 4
    start = time.perf_counter()
    up = distribution(evolve(WalkSpec(Variant.SQW, theta, 100)))
    sym = distribution(evolve(WalkSpec(Variant.SQW, theta, 100, initial=InitialState(math.pi / 4, 0.0))))
    elapsed = time.perf_counter() - start

    peak = moments(up)[2]
    brute = dense_probabilities("sqw", theta, 100)
    brute_peak = max(sorted(brute), key=lambda x: brute[x])
    chk.expect(-75 <= peak <= -60, f"peak at {peak}")
    chk.expect(peak == brute_peak, f"peak {peak} vs brute force {brute_peak}")
    asym = max(abs(sym.prob(x) - sym.prob(-x)) for x in range(-100, 101))
    chk.expect(asym < 1e-12, f"asymmetry {asym:.3e}")
    for d in (up, sym):
        odd = max(d.prob(x) for x in range(-99, 100, 2))
        chk.expect(odd < 1e-14, f"odd-site probability {odd:.3e}")
    chk.expect(elapsed < 1, f"runtime {elapsed:.2f}s")
    chk.done()


def test_criterion_3_probability_equality():
    chk = Checks()
    theta = math.pi / 4
    for init in (InitialState(), InitialState(math.pi / 4, 0.0), InitialState(0.3, 1.9)):
        ss = distribution(evolve(WalkSpec(Variant.SSQW, theta, 50, initial=init)))
        sq = distribution(evolve(WalkSpec(Variant.SQW, theta, 100, initial=init)))
        dq = distribution(evolve(WalkSpec(Variant.DQW, theta, 100, initial=init)))
        err = max(
            max(abs(ss.prob(y) - sq.prob(2 * y)), abs(ss.prob(y) - dq.prob(y + 50)))
            for y in range(-50, 51)
        )
        chk.expect(err < 1e-10, f"deviation {err:.3e} for {init}")
    chk.done()


def test_criterion_4_register_capacity():
    chk = Checks()
    for qubits, steps, order in [(2, 0, 0), (3, 1, 1), (4, 3, 2), (5, 7, 3)]:
        r = estimate_resources("sqw", qubits=qubits)
        got = (r.min_qubits, r.max_steps, r.max_control_order)
        chk.expect(got == (qubits, steps, order), f"row {got}")
    circ = synthesize_walk(SynthesisPlan("sqw", TABLE1, 7), math.pi / 4)
    m = metrics(circ)
    chk.expect(circ.width == 5, f"width {circ.width}")
    chk.expect(m.max_control_order == 3, f"measured control order {m.max_control_order}")
    chk.done()


def _tv(a, b):
    pa, pb = a.as_dict(), b.as_dict()
    return 0.5 * sum(abs(pa.get(x, 0.0) - pb.get(x, 0.0)) for x in set(pa) | set(pb))


def test_criterion_5_master_circuit_oracle():
    chk = Checks()
    start = time.perf_counter()
    worst = 0.0
    for enc in (TABLE1, TABLE2):
        for walk, variant in (("sqw", Variant.SQW), ("dqw", Variant.DQW)):
            for steps in range(1, 8):
                for theta in (math.pi / 8, math.pi / 4):
                    circ = synthesize_walk(SynthesisPlan(walk, enc, steps, fixed_initial=(0, 0)), theta)
                    out = run(circ, "0" + enc.encode(0))
                    got = position_distribution(out, enc, circ.coin_qubit, circ.position_qubits)
                    ref = distribution(evolve(WalkSpec(variant, theta, steps)))
                    tv = _tv(got, ref)
                    worst = max(worst, tv)
                    chk.expect(tv < 1e-10, f"{enc.name.value} {walk} {steps} steps: tv {tv:.3e}")
    elapsed = time.perf_counter() - start
    chk.expect(elapsed < 30, f"runtime {elapsed:.1f}s")
    chk.done()


# Three uniform angles plus one per-step vector.
_MERGE_ANGLES = [(math.pi / 8,) * 4, (math.pi / 4,) * 4, (math.pi / 3,) * 4, (0.31, 1.17, 0.66, 1.42)]


def test_criterion_6_ancilla_merge_ledger():
    chk = Checks()
    for n in (3, 4):
        for angles in _MERGE_ANGLES:
            thetas = list(angles[:n])
            circ = synthesize_dqw_ancilla(n, thetas)
            chk.expect(len(circ.ancilla_qubits) == math.comb(n - 1, 2), f"n={n}: {len(circ.ancilla_qubits)} ancillas")
            full = run(circ, "0" * circ.width)
            anc = list(circ.ancilla_qubits)

            # Amplitudes: ancillas conditioned on 0...0, then renormalised.
            cond, _ = postselect(full, anc)
            pad = "0" * len(anc)
            kets = cond.kets(1e-12)
            extra = {k for k in kets if k[:5] not in MERGED[n] or not k.endswith(pad)}
            chk.expect(not extra, f"n={n}: unexpected kets {sorted(extra)}")
            for ket, expr in MERGED[n].items():
                want = evaluate(expr, thetas)
                got = cond.amplitude(ket + pad)
                chk.expect(abs(got - want) < 1e-10, f"n={n} {ket}: {got:.6f} vs {want:.6f}")

            # Purity of the walk register with the ancillas traced out, unconditioned.
            _, purity = trace_out(full, anc)
            chk.expect(abs(purity - 1) < 1e-10, f"n={n} thetas={thetas}: reduced purity {purity:.6f}")
    chk.done()


def test_criterion_7_interference_free_ledger():
    chk = Checks()
    rng = np.random.default_rng(77)
    for n in (1, 2, 3, 4):
        for _ in range(5):
            thetas = list(rng.uniform(-math.pi, math.pi, size=n))
            out = run(interference_free_dqw(n, thetas), "00000")
            kets = out.kets(1e-13)
            chk.expect(len(INTERFERENCE_FREE[n]) == 2**n, f"ledger size for n={n}")
            chk.expect(set(kets) <= set(INTERFERENCE_FREE[n]), f"n={n}: unexpected kets")
            for ket, expr in INTERFERENCE_FREE[n].items():
                want = evaluate(expr, thetas)
                chk.expect(abs(out.amplitude(ket) - want) < 1e-12, f"n={n} {ket}")
    chk.done()


def test_criterion_8_encoding_golden_rows():
    chk = Checks()
    for enc, golden in ((TABLE1, GOLDEN_TABLE1), (TABLE2, GOLDEN_TABLE2), (NAIVE, GOLDEN_NAIVE)):
        chk.expect(set(enc.domain) == set(golden), f"{enc.name.value} domain")
        for x, bits in golden.items():
            chk.expect(enc.encode(x) == bits and enc.decode(bits) == x, f"{enc.name.value} row {x}")
    chk.expect(len(GOLDEN_TABLE1) == 15 and len(GOLDEN_TABLE2) == 15 and len(GOLDEN_NAIVE) == 7, "row counts")
    chk.expect(validate(HAMMING).class_sizes == [1, 4, 6, 4, 1], "hamming census")
    rows = {r.encoding: r for r in compare_encodings("dqw", 5, ["naive", "table1"])}
    naive, table1 = rows["naive"].max_control_order, rows["table1"].max_control_order
    chk.expect(naive > table1, f"naive order {naive} vs table1 {table1}")
    chk.done()


def test_criterion_9_property_suite():
    chk = Checks()
    rng = np.random.default_rng(9)

    for variant in Variant:
        for conv in CoinConvention:
            for theta in (0.0, math.pi / 7, math.pi / 4, 1.2):
                spec = WalkSpec(variant, theta, 50, convention=conv, initial=InitialState(*rng.uniform(0, 6, 2)))
                dev = max(abs(s.norm() - 1) for s in trajectory(spec))
                chk.expect(dev < 1e-12, f"{variant.value}/{conv.value} norm drift {dev:.3e}")

    for _ in range(20):
        theta = rng.uniform(-math.pi, math.pi)
        v = rng.normal(size=(2, 6)) + 1j * rng.normal(size=(2, 6))
        v /= np.linalg.norm(v)
        got = step_ssqw(WalkState(0, -3, v[0], v[1]), theta, theta)
        ref_u, ref_d = _ssqw_recurrence(v[0], v[1], theta)
        dev = max_deviation(got, WalkState(1, -4, ref_u, ref_d))
        chk.expect(dev < 1e-12, f"split-step recurrence deviation {dev:.3e}")

    circuits = [
        synthesize_walk(SynthesisPlan("dqw", TABLE1, 7, fixed_initial=(0, 0)), math.pi / 4),
        synthesize_walk(SynthesisPlan("sqw", TABLE2, 7), math.pi / 4),
        synthesize_walk(SynthesisPlan("dqw", NAIVE, 4), [0.2, 0.4, 0.6, 0.8]),
        synthesize_dqw_ancilla(4, math.pi / 4),
    ]
    for circ in circuits:
        back = from_json(to_json(circ))
        chk.expect(back == circ, "JSON round-trip changed the circuit")
        chk.expect(metrics(back) == metrics(circ), "metrics changed over JSON")
        text = export_qasm(circ)
        chk.expect(export_qasm(back) == text, "QASM text not deterministic")
        chk.expect(np.allclose(qasm_unitary(text), circuit_unitary(circ), atol=1e-12), "QASM re-execution differs")

    state = run(circuits[0], basis_state("00000"))
    chk.expect(sample(state, 1000, seed=5) == sample(state, 1000, seed=5), "sampling not deterministic")
    chk.done()


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-v"]))
