"""Shared test oracles and the acceptance-criteria report hook."""

from __future__ import annotations

from functools import reduce

import numpy as np

from pauliblocks import CliffordCircuit, Gate, PauliString

# ---------------------------------------------------------------------------
# Dense-matrix oracles, independent of the bit-vector implementation.

_SINGLE = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}

_H = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)
_S = np.array([[1, 0], [0, 1j]], dtype=complex)


def pauli_matrix(p: PauliString) -> np.ndarray:
    """2^n x 2^n matrix of a Pauli string, qubit 0 first in the kron chain."""
    return reduce(np.kron, (_SINGLE[ch] for ch in p.render()))


def matrices_commute(a: np.ndarray, b: np.ndarray) -> bool:
    return np.allclose(a @ b, b @ a)


def gate_matrix(gate: Gate, n: int) -> np.ndarray:
    if gate.kind in ("H", "S"):
        single = _H if gate.kind == "H" else _S
        mats = [np.eye(2, dtype=complex)] * n
        mats[gate.qubits[0]] = single
        return reduce(np.kron, mats)
    c, t = gate.qubits
    p0 = np.array([[1, 0], [0, 0]], dtype=complex)
    p1 = np.array([[0, 0], [0, 1]], dtype=complex)
    left = [np.eye(2, dtype=complex)] * n
    right = [np.eye(2, dtype=complex)] * n
    left[c] = p0
    right[c] = p1
    right[t] = _SINGLE["X"]
    return reduce(np.kron, left) + reduce(np.kron, right)


def circuit_matrix(circuit: CliffordCircuit) -> np.ndarray:
    """Unitary of the whole circuit; the first listed gate acts first."""
    u = np.eye(2**circuit.n_qubits, dtype=complex)
    for gate in circuit.gates:
        u = gate_matrix(gate, circuit.n_qubits) @ u
    return u


def equal_up_to_sign(a: np.ndarray, b: np.ndarray) -> bool:
    return np.allclose(a, b) or np.allclose(a, -b)


# ---------------------------------------------------------------------------
# Acceptance reporting: one line per criterion in the terminal summary.

ACCEPTANCE_LINES: list[str] = []


def record_criterion(number: int, description: str, ok: bool) -> bool:
    ACCEPTANCE_LINES.append(
        f"criterion {number:2d} {'PASS' if ok else 'FAIL'}: {description}"
    )
    return ok


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(set(ACCEPTANCE_LINES)):
            terminalreporter.line(line)
