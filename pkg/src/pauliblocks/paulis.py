"""Phaseless Pauli strings in the binary symplectic representation.

A Pauli string on n qubits is stored as two integer bitmaps:

    x_bits: bit i set iff qubit i carries X or Y
    z_bits: bit i set iff qubit i carries Z or Y

so I=(0,0), X=(1,0), Y=(1,1), Z=(0,1). Qubit 0 is the leftmost character
in dense text notation and the least significant bit of the bitmaps.
Two strings commute iff their symplectic inner product
popcount((x1 & z2) ^ (z1 & x2)) is even; block-wise commutativity applies
the same test to each block of an ordered qubit partition.
"""

from __future__ import annotations

import re
from typing import Iterable, Iterator

__all__ = [
    "PauliString",
    "BlockSpec",
    "parse_pauli",
    "commutes",
    "restrict",
    "k_commutes",
    "anticommuting_positions",
]

_DENSE_TOKEN = re.compile(r"[IXYZ]+")
_SPARSE_TOKEN = re.compile(r"([XYZ])(\d+)")


class PauliString:
    """An immutable, phaseless n-qubit Pauli string.

    Coefficients and phases are not part of the string; they live on
    Hamiltonian terms. Instances hash and compare by value and are safe
    to share between threads.
    """

    __slots__ = ("n_qubits", "x_bits", "z_bits")

    def __init__(self, n_qubits: int, x_bits: int = 0, z_bits: int = 0):
        if n_qubits < 1:
            raise ValueError(f"n_qubits must be positive, got {n_qubits}")
        limit = 1 << n_qubits
        if not (0 <= x_bits < limit and 0 <= z_bits < limit):
            raise ValueError(f"bit vectors out of range for {n_qubits} qubits")
        object.__setattr__(self, "n_qubits", n_qubits)
        object.__setattr__(self, "x_bits", x_bits)
        object.__setattr__(self, "z_bits", z_bits)

    def __setattr__(self, name, value):
        raise AttributeError("PauliString is immutable")

    def __reduce__(self):
        return (PauliString, (self.n_qubits, self.x_bits, self.z_bits))

    @classmethod
    def identity(cls, n_qubits: int) -> "PauliString":
        return cls(n_qubits, 0, 0)

    @property
    def support(self) -> int:
        """Bitmap of qubits carrying a non-identity factor."""
        return self.x_bits | self.z_bits

    @property
    def weight(self) -> int:
        """Number of non-identity single-qubit factors."""
        return (self.x_bits | self.z_bits).bit_count()

    @property
    def is_identity(self) -> bool:
        return self.x_bits == 0 and self.z_bits == 0

    def render(self) -> str:
        """Dense text form, qubit 0 leftmost (e.g. "XYZI")."""
        chars = []
        for i in range(self.n_qubits):
            x = (self.x_bits >> i) & 1
            z = (self.z_bits >> i) & 1
            chars.append("IXZY"[x + 2 * z])
        return "".join(chars)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PauliString):
            return NotImplemented
        return (
            self.n_qubits == other.n_qubits
            and self.x_bits == other.x_bits
            and self.z_bits == other.z_bits
        )

    def __hash__(self) -> int:
        return hash((self.n_qubits, self.x_bits, self.z_bits))

    def __repr__(self) -> str:
        return f"PauliString({self.render()!r})"

    def __str__(self) -> str:
        return self.render()


class BlockSpec:
    """An ordered partition of n qubit positions into contiguous blocks.

    The block sizes (k_1, ..., k_m) must be positive and sum to the qubit
    count of any string the partition is applied to. Bitmasks for each
    block are precomputed once at construction.
    """

    __slots__ = ("sizes", "spans", "masks")

    def __init__(self, sizes: Iterable[int]):
        sizes = tuple(int(s) for s in sizes)
        if not sizes:
            raise ValueError("BlockSpec needs at least one block")
        if any(s < 1 for s in sizes):
            raise ValueError(f"block sizes must be positive, got {sizes}")
        spans = []
        masks = []
        start = 0
        for s in sizes:
            stop = start + s
            spans.append((start, stop))
            masks.append(((1 << stop) - 1) ^ ((1 << start) - 1))
            start = stop
        object.__setattr__(self, "sizes", sizes)
        object.__setattr__(self, "spans", tuple(spans))
        object.__setattr__(self, "masks", tuple(masks))

    def __setattr__(self, name, value):
        raise AttributeError("BlockSpec is immutable")

    def __reduce__(self):
        return (BlockSpec, (self.sizes,))

    @classmethod
    def uniform(cls, k: int, n_qubits: int) -> "BlockSpec":
        """Blocks of size k covering n qubits; the final block is smaller
        when k does not divide n."""
        if not 1 <= k <= n_qubits:
            raise ValueError(f"block size k={k} must lie in [1, {n_qubits}]")
        sizes = [k] * (n_qubits // k)
        if n_qubits % k:
            sizes.append(n_qubits % k)
        return cls(sizes)

    @property
    def n_qubits(self) -> int:
        return self.spans[-1][1]

    def require_n(self, n_qubits: int) -> None:
        if self.n_qubits != n_qubits:
            raise ValueError(
                f"block sizes sum to {self.n_qubits}, expected {n_qubits}"
            )

    def __len__(self) -> int:
        return len(self.sizes)

    def __iter__(self) -> Iterator[tuple[int, int]]:
        return iter(self.spans)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BlockSpec):
            return NotImplemented
        return self.sizes == other.sizes

    def __hash__(self) -> int:
        return hash(self.sizes)

    def __repr__(self) -> str:
        return f"BlockSpec({self.sizes})"


def parse_pauli(text: str, n_qubits: int) -> PauliString:
    """Parse dense ("XIZY") or sparse ("X0 Z3") Pauli notation.

    Dense tokens may be split by whitespace ("X I" equals "XI") and must
    total exactly n_qubits characters. Sparse tokens name a Pauli letter in
    {X, Y, Z} and a qubit index; unmentioned positions are identity.

    Raises:
        ValueError: invalid character, index >= n_qubits, duplicate sparse
            index, or wrong dense length.
    """
    tokens = text.split()
    if not tokens:
        raise ValueError("empty Pauli specification")
    if all(_DENSE_TOKEN.fullmatch(t) for t in tokens):
        dense = "".join(tokens)
        if len(dense) != n_qubits:
            raise ValueError(
                f"dense Pauli {dense!r} has {len(dense)} characters, expected {n_qubits}"
            )
        x = z = 0
        for i, ch in enumerate(dense):
            if ch == "X":
                x |= 1 << i
            elif ch == "Y":
                x |= 1 << i
                z |= 1 << i
            elif ch == "Z":
                z |= 1 << i
        return PauliString(n_qubits, x, z)
    if all(_SPARSE_TOKEN.fullmatch(t) for t in tokens):
        x = z = 0
        seen = set()
        for t in tokens:
            m = _SPARSE_TOKEN.fullmatch(t)
            letter, idx = m.group(1), int(m.group(2))
            if idx >= n_qubits:
                raise ValueError(f"qubit index {idx} out of range for n={n_qubits}")
            if idx in seen:
                raise ValueError(f"duplicate qubit index {idx} in {text!r}")
            seen.add(idx)
            if letter != "Z":
                x |= 1 << idx
            if letter != "X":
                z |= 1 << idx
        return PauliString(n_qubits, x, z)
    raise ValueError(
        f"cannot parse Pauli {text!r}: expected dense IXYZ text or sparse tokens like 'X0 Z3'"
    )


def anticommuting_positions(p: PauliString, q: PauliString) -> int:
    """Bitmap of qubit positions where the single-qubit factors anticommute."""
    if p.n_qubits != q.n_qubits:
        raise ValueError(
            f"qubit count mismatch: {p.n_qubits} vs {q.n_qubits}"
        )
    return (p.x_bits & q.z_bits) ^ (p.z_bits & q.x_bits)


def commutes(p: PauliString, q: PauliString) -> bool:
    """True iff PQ = QP as operators (even symplectic inner product)."""
    return anticommuting_positions(p, q).bit_count() % 2 == 0


def restrict(p: PauliString, a: int, b: int) -> PauliString:
    """The (b - a)-qubit string made of factors a through b - 1 of p."""
    if not 0 <= a < b <= p.n_qubits:
        raise ValueError(f"invalid restriction range [{a}, {b}) on {p.n_qubits} qubits")
    mask = ((1 << b) - 1) ^ ((1 << a) - 1)
    return PauliString(b - a, (p.x_bits & mask) >> a, (p.z_bits & mask) >> a)


def k_commutes(p: PauliString, q: PauliString, blocks: BlockSpec) -> bool:
    """True iff p and q commute within every block of the partition."""
    blocks.require_n(p.n_qubits)
    anti = anticommuting_positions(p, q)
    if anti == 0:
        return True
    for mask in blocks.masks:
        if (anti & mask).bit_count() & 1:
            return False
    return True
