"""JSON and CSV formats of the command-line interface.

Covariance matrices travel as ``{"n_modes": N, "matrix": [[...]]}`` with the
2N x 2N matrix row major.  All mode indices in external formats are 1-based;
the library itself is 0-based.  Floats are emitted with Python's shortest
round-trip representation, so read(write(x)) reproduces x bit for bit.
"""

from __future__ import annotations

import json
from typing import TextIO

import numpy as np

from .decompose import ModewiseDecomposition
from .entanglement import EntanglementReport
from .errors import InvalidInputError
from .gaussian import Bipartition, CovarianceMatrix


def fcm_to_dict(state: CovarianceMatrix) -> dict:
    return {"n_modes": state.n_modes, "matrix": state.matrix.tolist()}


def fcm_from_dict(data: dict) -> CovarianceMatrix:
    if not isinstance(data, dict) or "n_modes" not in data or "matrix" not in data:
        raise InvalidInputError('covariance JSON needs keys "n_modes" and "matrix"')
    matrix = np.asarray(data["matrix"], dtype=float)
    n = int(data["n_modes"])
    if matrix.shape != (2 * n, 2 * n):
        raise InvalidInputError(
            f"matrix shape {matrix.shape} does not match n_modes = {n}"
        )
    return CovarianceMatrix(matrix)


def write_fcm(state: CovarianceMatrix, stream: TextIO):
    json.dump(fcm_to_dict(state), stream, indent=1)
    stream.write("\n")


def read_fcm(stream: TextIO) -> CovarianceMatrix:
    try:
        data = json.load(stream)
    except json.JSONDecodeError as exc:
        raise InvalidInputError(f"malformed covariance JSON: {exc}") from exc
    return fcm_from_dict(data)


def parse_partition(text: str, n_modes: int) -> Bipartition:
    """Parse "1,3;2,4"-style 1-based partitions into a 0-based Bipartition."""
    parts = text.split(";")
    if len(parts) != 2:
        raise InvalidInputError(
            f'partition must be two semicolon-separated index lists, got {text!r}'
        )

    def parse_side(chunk: str) -> tuple[int, ...]:
        chunk = chunk.strip()
        if not chunk:
            return ()
        try:
            indices = tuple(int(tok) for tok in chunk.split(","))
        except ValueError as exc:
            raise InvalidInputError(f"partition indices must be integers: {chunk!r}") from exc
        for i in indices:
            if not 1 <= i <= n_modes:
                raise InvalidInputError(
                    f"partition index {i} out of range 1..{n_modes}"
                )
        return tuple(i - 1 for i in indices)

    return Bipartition(parse_side(parts[0]), parse_side(parts[1]))


def format_partition(partition: Bipartition) -> str:
    a = ",".join(str(i + 1) for i in partition.a_modes)
    b = ",".join(str(i + 1) for i in partition.b_modes)
    return f"{a};{b}"


def decomposition_to_dict(
    decomp: ModewiseDecomposition, residual: float | None = None
) -> dict:
    """JSON form of a decomposition; transformed-mode indices are 1-based."""
    data = {
        "n_modes": decomp.n_modes,
        "lambda0": decomp.lambda0,
        "partition": {
            "a_modes": [i + 1 for i in decomp.partition.a_modes],
            "b_modes": [i + 1 for i in decomp.partition.b_modes],
        },
        "pairs": [
            {
                "lambda": p.lam,
                "kappa": p.kappa,
                "theta": p.theta,
                "a_mode": p.a_mode + 1,
                "b_mode": p.b_mode + 1,
            }
            for p in decomp.pairs
        ],
        "residual_a": [{"mode": r.mode + 1, "lambda": r.lam} for r in decomp.residual_a],
        "residual_b": [{"mode": r.mode + 1, "lambda": r.lam} for r in decomp.residual_b],
        "transform_a": decomp.transform_a.tolist(),
        "transform_b": decomp.transform_b.tolist(),
    }
    if residual is not None:
        data["reconstruction_residual"] = residual
    return data


def report_to_dict(report: EntanglementReport) -> dict:
    return {
        "pair_entropies": list(report.pair_entropies),
        "total_modes_entropy": report.total_modes_entropy,
        "pair_npt_flags": list(report.pair_npt_flags),
        "separable": report.separable,
        "negativity_sum": report.negativity_sum,
    }


def parse_float_list(text: str) -> list[float]:
    try:
        return [float(tok) for tok in text.split(",") if tok.strip()]
    except ValueError as exc:
        raise InvalidInputError(f"expected comma-separated floats, got {text!r}") from exc


def write_spectrum_csv(lambdas, stream: TextIO):
    stream.write("mode,lambda\n")
    for i, lam in enumerate(lambdas, start=1):
        stream.write(f"{i},{float(lam)!r}\n")


def write_sweep_csv(rows: list[dict], stream: TextIO):
    """Sweep table: value, cut, pair count, padded angles, mode entanglement."""
    width = max((len(r["thetas"]) for r in rows), default=0)
    headers = ["value", "cut", "s"] + [f"theta_{k + 1}" for k in range(width)] + ["E_M"]
    stream.write(",".join(headers) + "\n")
    for r in rows:
        thetas = [repr(float(t)) for t in r["thetas"]] + [""] * (width - len(r["thetas"]))
        cells = [repr(float(r["value"])), str(r["cut"]), str(len(r["thetas"]))] + thetas
        cells.append("" if r["entropy"] is None else repr(float(r["entropy"])))
        stream.write(",".join(cells) + "\n")
