"""Clifford circuits over {CNOT, H, S}: conjugation, tableaus, and
per-block diagonalization of block-commuting Pauli sets.

Conjugation is tracked phaselessly on the (x, z) bit vectors:

    H(q):       swap x_q and z_q
    S(q):       z_q ^= x_q
    CNOT(c, t): x_t ^= x_c, z_c ^= z_t

A Pauli is diagonal iff its x bits are all zero. Diagonalizing a group of
mutually block-commuting strings reduces each block independently by
symplectic Gaussian elimination, so the resulting circuit never contains a
gate that crosses a block boundary.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable, Sequence

from .paulis import BlockSpec, PauliString, k_commutes

__all__ = [
    "Gate",
    "CliffordCircuit",
    "Tableau",
    "conjugate",
    "is_diagonal",
    "diagonalize_group",
    "count_diagonalized",
    "circuit_depth",
    "per_block_circuits",
    "random_circuit",
    "circuit_to_text",
    "circuit_from_text",
]

_KINDS = ("H", "S", "CNOT")


@dataclass(frozen=True)
class Gate:
    kind: str
    qubits: tuple[int, ...]

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise ValueError(f"unknown gate kind {self.kind!r}")
        arity = 2 if self.kind == "CNOT" else 1
        if len(self.qubits) != arity:
            raise ValueError(f"{self.kind} takes {arity} qubit(s), got {self.qubits}")
        if any(q < 0 for q in self.qubits):
            raise ValueError(f"negative qubit index in {self.qubits}")
        if self.kind == "CNOT" and self.qubits[0] == self.qubits[1]:
            raise ValueError("CNOT control and target must differ")

    @classmethod
    def h(cls, q: int) -> "Gate":
        return cls("H", (q,))

    @classmethod
    def s(cls, q: int) -> "Gate":
        return cls("S", (q,))

    @classmethod
    def cnot(cls, control: int, target: int) -> "Gate":
        return cls("CNOT", (control, target))

    def __str__(self) -> str:
        return " ".join([self.kind, *map(str, self.qubits)])


@dataclass(frozen=True)
class CliffordCircuit:
    n_qubits: int
    gates: tuple[Gate, ...]

    def __post_init__(self):
        object.__setattr__(self, "gates", tuple(self.gates))
        for g in self.gates:
            if max(g.qubits) >= self.n_qubits:
                raise ValueError(f"gate {g} out of range for {self.n_qubits} qubits")

    @property
    def gate_count(self) -> int:
        return len(self.gates)


def _apply_gate(gate: Gate, x: int, z: int) -> tuple[int, int]:
    if gate.kind == "H":
        q = 1 << gate.qubits[0]
        if bool(x & q) != bool(z & q):
            x ^= q
            z ^= q
        return x, z
    if gate.kind == "S":
        q = 1 << gate.qubits[0]
        return x, z ^ (x & q)
    c, t = gate.qubits
    if (x >> c) & 1:
        x ^= 1 << t
    if (z >> t) & 1:
        z ^= 1 << c
    return x, z


def conjugate(circuit: CliffordCircuit, pauli: PauliString) -> PauliString:
    """Phaseless image of a Pauli string under conjugation by the circuit."""
    if pauli.n_qubits != circuit.n_qubits:
        raise ValueError(
            f"qubit count mismatch: circuit has {circuit.n_qubits}, Pauli has {pauli.n_qubits}"
        )
    x, z = pauli.x_bits, pauli.z_bits
    for gate in circuit.gates:
        x, z = _apply_gate(gate, x, z)
    return PauliString(pauli.n_qubits, x, z)


def is_diagonal(pauli: PauliString) -> bool:
    """True iff the string is Z-type (diagonal in the computational basis)."""
    return pauli.x_bits == 0


class Tableau:
    """Symplectic action of a circuit on the phaseless Pauli generators.

    Stores the (x, z) image of every X_j and Z_j basis generator; the image
    of an arbitrary string is the XOR combination selected by its bits.
    """

    __slots__ = ("n_qubits", "x_images", "z_images")

    def __init__(
        self,
        n_qubits: int,
        x_images: Sequence[tuple[int, int]],
        z_images: Sequence[tuple[int, int]],
    ):
        if len(x_images) != n_qubits or len(z_images) != n_qubits:
            raise ValueError("need one image per basis generator")
        self.n_qubits = n_qubits
        self.x_images = tuple(x_images)
        self.z_images = tuple(z_images)

    @classmethod
    def from_circuit(cls, circuit: CliffordCircuit) -> "Tableau":
        n = circuit.n_qubits
        x_images = []
        z_images = []
        for j in range(n):
            x, z = 1 << j, 0
            for gate in circuit.gates:
                x, z = _apply_gate(gate, x, z)
            x_images.append((x, z))
            x, z = 0, 1 << j
            for gate in circuit.gates:
                x, z = _apply_gate(gate, x, z)
            z_images.append((x, z))
        return cls(n, x_images, z_images)

    def apply(self, pauli: PauliString) -> PauliString:
        if pauli.n_qubits != self.n_qubits:
            raise ValueError("qubit count mismatch")
        x = z = 0
        for j in range(self.n_qubits):
            if (pauli.x_bits >> j) & 1:
                gx, gz = self.x_images[j]
                x ^= gx
                z ^= gz
            if (pauli.z_bits >> j) & 1:
                gx, gz = self.z_images[j]
                x ^= gx
                z ^= gz
        return PauliString(self.n_qubits, x, z)

    def is_symplectic(self) -> bool:
        """Check directly that the 2n x 2n binary action preserves the
        symplectic form on all generator pairs."""

        def sip(a: tuple[int, int], b: tuple[int, int]) -> int:
            return ((a[0] & b[1]) ^ (a[1] & b[0])).bit_count() & 1

        n = self.n_qubits
        for i in range(n):
            for j in range(n):
                if sip(self.x_images[i], self.x_images[j]) != 0:
                    return False
                if sip(self.z_images[i], self.z_images[j]) != 0:
                    return False
                if sip(self.x_images[i], self.z_images[j]) != (1 if i == j else 0):
                    return False
        return True


def _independent_rows(vectors: Iterable[tuple[int, int]], width: int) -> list[list[int]]:
    """Reduce (x, z) vectors over F2 to an independent generating subset."""
    pivots: dict[int, int] = {}  # pivot bit -> combined 2*width-bit vector
    for x, z in vectors:
        v = (x << width) | z
        while v:
            top = v.bit_length() - 1
            if top in pivots:
                v ^= pivots[top]
            else:
                pivots[top] = v
                break
    mask = (1 << width) - 1
    return [[v >> width, v & mask] for _, v in sorted(pivots.items(), reverse=True)]


def _diagonalize_block(rows: list[list[int]], width: int) -> list[Gate]:
    """Emit {CNOT, H, S} gates (local indices) sending every row to Z-type.

    `rows` must be independent and pairwise commuting on `width` qubits;
    they are updated in place to their images. Each pass fixes one row to a
    single-qubit Z on a fresh pivot, which later gates never touch, so the
    loop terminates within len(rows) passes. A failure to do so indicates
    a precondition violation and raises RuntimeError.
    """
    gates: list[Gate] = []

    def emit(gate: Gate) -> None:
        gates.append(gate)
        for row in rows:
            row[0], row[1] = _apply_gate(gate, row[0], row[1])

    fixed: list[tuple[int, int]] = []  # (row index, pivot qubit)
    for _ in range(len(rows)):
        candidate = -1
        for i in range(len(rows)):
            if any(i == f for f, _ in fixed):
                continue
            # clear Z entries on already-fixed pivots by row multiplication;
            # products of diagonalized rows stay diagonalized
            for f, q in fixed:
                if (rows[i][1] >> q) & 1:
                    rows[i][1] ^= 1 << q
                if (rows[i][0] >> q) & 1:
                    raise RuntimeError(
                        "block diagonalization failed: rows do not commute"
                    )
            if rows[i][0] and candidate < 0:
                candidate = i
        if candidate < 0:
            break
        i = candidate
        x = rows[i][0]
        pivot = (x & -x).bit_length() - 1
        for j in range(width):
            if j != pivot and (x >> j) & 1:
                emit(Gate.cnot(pivot, j))
        if (rows[i][1] >> pivot) & 1:
            emit(Gate.s(pivot))
        z_rest = rows[i][1]
        for j in range(width):
            if (z_rest >> j) & 1:
                emit(Gate.h(j))
        for j in range(width):
            if (z_rest >> j) & 1:
                emit(Gate.cnot(pivot, j))
        if rows[i] != [1 << pivot, 0]:
            raise RuntimeError("block diagonalization failed to isolate a pivot")
        emit(Gate.h(pivot))
        fixed.append((i, pivot))
    if any(row[0] for row in rows):
        raise RuntimeError("block diagonalization left a non-diagonal row")
    return gates


def diagonalize_group(
    members: Sequence[PauliString], blocks: BlockSpec
) -> CliffordCircuit:
    """Synthesize a circuit conjugating every member to Z-type, block by block.

    Members must pairwise block-commute under `blocks` (checked up front).
    The returned circuit is a disjoint union of sub-circuits, each confined
    to one block, produced by symplectic Gaussian elimination over an
    independent generating subset of the members' block restrictions.
    """
    members = list(members)
    if not members:
        raise ValueError("no members to diagonalize")
    n = members[0].n_qubits
    blocks.require_n(n)
    for p in members:
        if p.n_qubits != n:
            raise ValueError("members act on different qubit counts")
    for a in range(len(members)):
        for b in range(a + 1, len(members)):
            if not k_commutes(members[a], members[b], blocks):
                raise ValueError(
                    f"members {a} and {b} do not block-commute under {blocks}"
                )

    gates: list[Gate] = []
    for (start, stop), mask in zip(blocks.spans, blocks.masks):
        width = stop - start
        restrictions = (
            ((p.x_bits & mask) >> start, (p.z_bits & mask) >> start) for p in members
        )
        rows = _independent_rows(restrictions, width)
        for gate in _diagonalize_block(rows, width):
            shifted = tuple(q + start for q in gate.qubits)
            gates.append(Gate(gate.kind, shifted))
    return CliffordCircuit(n, tuple(gates))


def count_diagonalized(circuit: CliffordCircuit) -> int:
    """Number of phaseless n-qubit Paulis whose image under the circuit is
    diagonal, by exhaustive enumeration of all 4^n strings (n <= 6)."""
    n = circuit.n_qubits
    if n > 6:
        raise ValueError(f"enumeration supports n <= 6, got {n}")
    tab = Tableau.from_circuit(circuit)
    # x part of the image of a string is linear in its bits
    x_of_xgen = [img[0] for img in tab.x_images]
    x_of_zgen = [img[0] for img in tab.z_images]

    def xor_table(parts: list[int]) -> list[int]:
        out = [0] * (1 << n)
        for m in range(1, 1 << n):
            low = (m & -m).bit_length() - 1
            out[m] = out[m & (m - 1)] ^ parts[low]
        return out

    from_x = xor_table(x_of_xgen)
    from_z = xor_table(x_of_zgen)
    counts: dict[int, int] = {}
    for v in from_z:
        counts[v] = counts.get(v, 0) + 1
    return sum(counts.get(v, 0) for v in from_x)


def circuit_depth(circuit: CliffordCircuit) -> int:
    """Greedy layering depth: each gate lands in the earliest layer after
    the last layer touching any of its qubits."""
    last = [0] * circuit.n_qubits
    depth = 0
    for gate in circuit.gates:
        layer = 1 + max(last[q] for q in gate.qubits)
        for q in gate.qubits:
            last[q] = layer
        depth = max(depth, layer)
    return depth


def per_block_circuits(
    circuit: CliffordCircuit, blocks: BlockSpec
) -> list[CliffordCircuit]:
    """Split a block-local circuit into one sub-circuit per block.

    Raises ValueError if any gate touches qubits in more than one block.
    """
    blocks.require_n(circuit.n_qubits)
    buckets: list[list[Gate]] = [[] for _ in blocks.spans]
    for gate in circuit.gates:
        homes = {
            idx
            for idx, (start, stop) in enumerate(blocks.spans)
            for q in gate.qubits
            if start <= q < stop
        }
        if len(homes) != 1:
            raise ValueError(f"gate {gate} crosses a block boundary")
        buckets[homes.pop()].append(gate)
    return [CliffordCircuit(circuit.n_qubits, tuple(b)) for b in buckets]


def random_circuit(n_qubits: int, n_gates: int, seed: int) -> CliffordCircuit:
    """A seeded random circuit over {CNOT, H, S} (CNOT only when n >= 2)."""
    if n_qubits < 1 or n_gates < 0:
        raise ValueError("need n_qubits >= 1 and n_gates >= 0")
    rng = random.Random(seed)
    kinds = _KINDS if n_qubits >= 2 else ("H", "S")
    gates = []
    for _ in range(n_gates):
        kind = rng.choice(kinds)
        if kind == "CNOT":
            c, t = rng.sample(range(n_qubits), 2)
            gates.append(Gate.cnot(c, t))
        else:
            gates.append(Gate(kind, (rng.randrange(n_qubits),)))
    return CliffordCircuit(n_qubits, tuple(gates))


def circuit_to_text(circuit: CliffordCircuit) -> str:
    """Plain-text export: a "qubits: n" line then one gate per line."""
    lines = [f"qubits: {circuit.n_qubits}"]
    lines.extend(str(g) for g in circuit.gates)
    return "\n".join(lines) + "\n"


def circuit_from_text(text: str) -> CliffordCircuit:
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines or not lines[0].lower().startswith("qubits:"):
        raise ValueError("circuit text must start with 'qubits: n'")
    n = int(lines[0].split(":", 1)[1])
    gates = []
    for ln in lines[1:]:
        parts = ln.split()
        gates.append(Gate(parts[0], tuple(int(q) for q in parts[1:])))
    return CliffordCircuit(n, tuple(gates))
