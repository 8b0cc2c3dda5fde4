"""Batch command line: every headline demo behind one subcommand, with a
fixed default seed so documented runs reproduce byte for byte.

Exit codes: 0 success, 1 runtime failure (e.g. factoring exhausted its
rounds), 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys

import numpy as np

from . import algorithms, gf2, info_theory, protocols, steane
from .states import state_to_json

SCHEMA_VERSION = 1


class RuntimeFailure(Exception):
    """Raised by handlers when a run legitimately fails (exit code 1)."""


def _parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qinfo",
        description="information-theory and quantum-simulation demos",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, help_text: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--seed", type=int, default=0, help="rng seed (default 0)")
        p.add_argument("--out", type=str, default=None, help="write output to file")
        p.add_argument(
            "--format", choices=("csv", "json"), default=None,
            help="output format (default depends on the subcommand)",
        )
        return p

    add("entropy", "entropy/capacity headline values")
    p = add("huffman", "optimal prefix code for an i.i.d.-bit message source")
    p.add_argument("--bits", type=int, default=4, help="message length in bits")
    p.add_argument("--p-one", type=float, default=0.25, help="per-bit P(1)")
    add("hamming", "the [7,4,3] code's message/codeword table")
    p = add("shannon-demo", "Monte Carlo coding gain on the BSC")
    p.add_argument("--n-rep", type=int, default=5, help="largest repetition factor")
    p.add_argument("--p", type=float, default=0.25, help="channel flip probability")
    p.add_argument("--trials", type=int, default=100_000)
    p = add("bell", "singlet correlation sweep vs axis separation")
    p.add_argument("--steps", type=int, default=36, help="rows: k*180/steps degrees")
    p = add("lhv", "local-hidden-variable bound vs the quantum value")
    p.add_argument(
        "--angles", type=str, default="0,120,240",
        help="comma-separated axis angles in degrees",
    )
    add("ghz", "three-particle correlation contradiction")
    add("clone", "copying by CNOT: works on basis states, fails on |+>")
    add("densecode", "two classical bits through one qubit")
    p = add("teleport", "teleportation fidelity over seeded runs")
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--dump-state", type=str, default=None,
                   help="write Bob's final state (last trial) as JSON amplitudes")
    p = add("bb84", "quantum key distribution with optional eavesdropper")
    p.add_argument("--n", type=int, default=10_000, help="qubits sent")
    p.add_argument("--eve", action="store_true", help="intercept-resend attack")
    p.add_argument("--disclose", type=float, default=0.5,
                   help="fraction of sifted bits compared publicly")
    p = add("shor", "factor N by quantum period finding")
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--max-rounds", type=int, default=20)
    p = add("grover", "search 2^n items for a marked index")
    p.add_argument("--n-qubits", type=int, default=4)
    p.add_argument("--marked", type=int, default=None,
                   help="marked index (default: drawn from the seed)")
    p.add_argument("--iterations", type=int, default=None)
    p.add_argument("--dump-state", type=str, default=None,
                   help="write the pre-measurement state as JSON amplitudes")
    add("qec-syndromes", "syndrome table of the one-qubit error operators")
    p = add("qec-scaling", "logical failure rate vs physical error rate")
    p.add_argument("--eps", type=str, default="0.003,0.01,0.03",
                   help="comma-separated physical error rates")
    p.add_argument("--trials", type=int, default=20_000, help="trials per point")
    p = add("bound", "syndrome counting bound and the error-scaling estimate")
    p.add_argument("--n", type=int, default=5)
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--golay-n", type=int, default=23)
    p.add_argument("--t", type=int, default=3)
    p.add_argument("--eps", type=float, default=0.001)
    return parser


# ---------------------------------------------------------------------------
# Handlers: each returns (csv_header, csv_rows, json_payload, default_format)
# ---------------------------------------------------------------------------

def _handle_entropy(args):
    fair = info_theory.shannon_entropy(info_theory.ProbDist.uniform(6))
    loaded = info_theory.shannon_entropy(
        info_theory.ProbDist((0.1, 0.1, 0.1, 0.1, 0.1, 0.5))
    )
    h = info_theory.binary_entropy(0.25)
    cap = info_theory.bsc_capacity(0.25)
    rows = [
        ("fair_die_bits", fair),
        ("loaded_die_bits", loaded),
        ("binary_entropy_0.25", h),
        ("bsc_capacity_0.25", cap),
    ]
    payload = {name: value for name, value in rows}
    return ("quantity", "value"), rows, payload, "json"


def _handle_huffman(args):
    dist = info_theory.message_distribution(args.bits, args.p_one)
    code = info_theory.huffman_build(dist)
    entropy = info_theory.shannon_entropy(dist)
    rows = [
        (format(sym, f"0{args.bits}b"), dist.probs[sym], code.codewords[sym],
         len(code.codewords[sym]))
        for sym in sorted(code.codewords)
    ]
    payload = {
        "bits": args.bits,
        "p_one": args.p_one,
        "codewords": {format(s, f"0{args.bits}b"): w
                      for s, w in sorted(code.codewords.items())},
        "average_length": code.average_length,
        "source_entropy": entropy,
    }
    return ("symbol", "probability", "codeword", "length"), rows, payload, "csv"


def _handle_hamming(args):
    code = gf2.hamming_7_4()
    rows = [
        (format(m, "04b"), code.encode(format(m, "04b"))) for m in range(16)
    ]
    payload = {
        "n": code.n,
        "k": code.k,
        "min_distance": code.min_distance(),
        "codewords": {msg: word for msg, word in rows},
    }
    return ("message", "codeword"), rows, payload, "csv"


def _handle_shannon_demo(args):
    results = gf2.shannon_demo(args.n_rep, args.p, args.trials, args.seed)
    rows = [
        (r.scheme, r.rate, r.success_prob, r.trials, r.seed) for r in results
    ]
    payload = {"p": args.p, "schemes": [vars(r) for r in results]}
    return ("scheme", "rate", "success_prob", "trials", "seed"), rows, payload, "csv"


def _handle_bell(args):
    if args.steps < 1:
        raise RuntimeFailure("--steps must be >= 1")
    rows = []
    for k in range(args.steps):
        delta_deg = k * 180.0 / args.steps
        p_same = protocols.bell_correlation(math.radians(delta_deg), 0.0)
        rows.append((delta_deg, 0.0, p_same))
    payload = {
        "rows": [
            {"phi_a": a, "phi_b": b, "p_same": p} for a, b, p in rows
        ]
    }
    return ("phi_a", "phi_b", "p_same"), rows, payload, "csv"


def _handle_lhv(args):
    degrees = [float(x) for x in args.angles.split(",") if x.strip()]
    radians = [math.radians(d) for d in degrees]
    lhv = protocols.lhv_max_same_probability(radians)
    pairs = [
        (i, j) for i in range(len(radians)) for j in range(len(radians)) if i != j
    ]
    quantum = (
        sum(protocols.bell_correlation(radians[i], radians[j]) for i, j in pairs)
        / len(pairs)
        if pairs
        else 0.0
    )
    rows = [("lhv_max", lhv), ("quantum", quantum)]
    payload = {"angles_deg": degrees, "lhv_max": lhv, "quantum": quantum}
    return ("kind", "value"), rows, payload, "json"


def _handle_ghz(args):
    values = protocols.ghz_contradiction()
    rows = sorted(values.items())
    return ("observable", "expectation"), rows, dict(values), "json"


def _handle_clone(args):
    from .states import GATE_H, apply_1q, basis_state

    plus = apply_1q(basis_state("0"), GATE_H, 0)
    rows = [
        ("|0>", protocols.attempt_clone_via_xor(basis_state("0"))),
        ("|1>", protocols.attempt_clone_via_xor(basis_state("1"))),
        ("|+>", protocols.attempt_clone_via_xor(plus)),
    ]
    return ("input", "copy_fidelity"), rows, {k: v for k, v in rows}, "json"


def _handle_densecode(args):
    rows = [(b, protocols.dense_code_roundtrip(b)) for b in range(4)]
    return (
        ("input", "decoded"),
        rows,
        {"roundtrip": {str(b): d for b, d in rows}},
        "json",
    )


def _handle_teleport(args):
    from .density import state_fidelity
    from .states import from_amplitudes

    rng = np.random.default_rng(args.seed)
    fidelities = []
    bits_seen = [0, 0, 0, 0]
    bob = None
    for _ in range(args.trials):
        a, b = steane.random_logical_pair(rng)
        source = from_amplitudes([a, b])
        bob, bits = protocols.teleport(source, rng)
        fidelities.append(state_fidelity(bob, source))
        bits_seen[bits[0] * 2 + bits[1]] += 1
    if args.dump_state and bob is not None:
        with open(args.dump_state, "w") as fh:
            fh.write(state_to_json(bob))
    rows = [
        ("trials", args.trials),
        ("min_fidelity", min(fidelities)),
        ("mean_fidelity", sum(fidelities) / len(fidelities)),
    ]
    payload = {
        "trials": args.trials,
        "min_fidelity": min(fidelities),
        "mean_fidelity": sum(fidelities) / len(fidelities),
        "bell_bit_counts": bits_seen,
    }
    return ("metric", "value"), rows, payload, "json"


def _handle_bb84(args):
    rng = np.random.default_rng(args.seed)
    report = protocols.bb84(args.n, args.eve, args.disclose, rng)
    payload = vars(report).copy()
    rows = [(k, v) for k, v in payload.items() if k != "final_key_bits"]
    rows.append(("final_key_len", len(report.final_key_bits)))
    return ("field", "value"), rows, payload, "json"


def _handle_shor(args):
    rng = np.random.default_rng(args.seed)
    try:
        result = algorithms.shor_factor(args.N, rng, args.max_rounds)
    except ValueError as exc:
        raise RuntimeFailure(str(exc)) from None
    transcripts = [run.transcript() for run in result.runs]
    payload = {
        "N": result.n,
        "factor": result.factor,
        "cofactor": result.cofactor,
        "method": result.method,
        "rounds_used": result.rounds_used,
        "runs": transcripts,
        "verified": result.factor is not None
        and result.n % result.factor == 0,
    }
    rows = [(k, payload[k]) for k in
            ("N", "factor", "cofactor", "method", "rounds_used", "verified")]
    if not result.succeeded and result.method != "prime":
        # Emit the payload before signaling failure so the transcript survives.
        return ("field", "value"), rows, payload, "json", 1
    return ("field", "value"), rows, payload, "json"


def _handle_grover(args):
    rng = np.random.default_rng(args.seed)
    size = 1 << args.n_qubits
    marked = args.marked if args.marked is not None else int(rng.integers(size))
    inst = algorithms.GroverInstance(args.n_qubits, marked)
    result = algorithms.grover_search(inst, rng, args.iterations)
    if args.dump_state:
        with open(args.dump_state, "w") as fh:
            fh.write(state_to_json(algorithms.grover_state(inst, result.iterations)))
    payload = {
        "n_qubits": args.n_qubits,
        "size": size,
        "marked": marked,
        "iterations": result.iterations,
        "success_probability": result.success_probability,
        "found": result.found,
        "hit": result.found == marked,
    }
    rows = [(k, v) for k, v in payload.items()]
    return ("field", "value"), rows, payload, "json"


def _handle_qec_syndromes(args):
    rows = steane.syndrome_enumeration()
    payload = {
        "rows": [
            {"error": e, "syndrome_x": x, "syndrome_z": z} for e, x, z in rows
        ]
    }
    return ("error", "syndrome_x", "syndrome_z"), rows, payload, "csv"


def _handle_qec_scaling(args):
    eps_list = [float(x) for x in args.eps.split(",") if x.strip()]
    result = steane.noise_scaling_mc(eps_list, args.trials, args.seed)
    rows = [(r.eps, r.failures, r.trials, r.rate) for r in result.rows]
    payload = {"rows": result.as_dicts(), "slope": result.slope}
    return ("eps", "failures", "trials", "rate"), rows, payload, "csv"


def _handle_bound(args):
    satisfied, lhs, rhs = steane.quantum_hamming_bound(args.n, args.k)
    estimate = steane.uncorrectable_estimate(args.golay_n, args.t, args.eps)
    payload = {
        "n": args.n,
        "k": args.k,
        "syndromes": lhs,
        "required": rhs,
        "satisfied": satisfied,
        "estimate_n": args.golay_n,
        "estimate_t": args.t,
        "estimate_eps": args.eps,
        "uncorrectable_estimate": estimate,
    }
    rows = [(k, v) for k, v in payload.items()]
    return ("field", "value"), rows, payload, "json"


_HANDLERS = {
    "entropy": _handle_entropy,
    "huffman": _handle_huffman,
    "hamming": _handle_hamming,
    "shannon-demo": _handle_shannon_demo,
    "bell": _handle_bell,
    "lhv": _handle_lhv,
    "ghz": _handle_ghz,
    "clone": _handle_clone,
    "densecode": _handle_densecode,
    "teleport": _handle_teleport,
    "bb84": _handle_bb84,
    "shor": _handle_shor,
    "grover": _handle_grover,
    "qec-syndromes": _handle_qec_syndromes,
    "qec-scaling": _handle_qec_scaling,
    "bound": _handle_bound,
}


def _render(header, rows, payload, fmt: str, seed: int) -> str:
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow(row)
        return buf.getvalue()
    document = {"schema_version": SCHEMA_VERSION, "seed": seed}
    document.update(payload)
    return json.dumps(document, indent=2, default=_json_default) + "\n"


def _json_default(value):
    if isinstance(value, (np.integer,)):
        return int(value)
    if isinstance(value, (np.floating,)):
        return float(value)
    if isinstance(value, np.ndarray):
        return value.tolist()
    raise TypeError(f"cannot serialize {type(value)}")


def main(argv: list[str] | None = None) -> int:
    args = _parser().parse_args(argv)
    handler = _HANDLERS[args.command]
    try:
        outcome = handler(args)
    except RuntimeFailure as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    if len(outcome) == 5:
        header, rows, payload, default_fmt, code = outcome
    else:
        header, rows, payload, default_fmt = outcome
        code = 0
    fmt = args.format or default_fmt
    text = _render(header, rows, payload, fmt, args.seed)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
