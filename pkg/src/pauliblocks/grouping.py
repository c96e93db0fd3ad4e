"""Greedy partitioning of Hamiltonian terms into block-commuting groups.

Sorted insertion visits terms by decreasing coefficient magnitude and puts
each into the first existing group whose every member block-commutes with
it, opening a new group otherwise. Random insertion is the same first-fit
pass over a seeded random permutation of the terms.

A grouping's quality is scored by the squared ratio of the total absolute
coefficient mass to the sum of per-group Euclidean coefficient norms. The
score is 1 when every group is a singleton and equals the term count when
all equal-magnitude terms share one group.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from typing import Iterable, Sequence

from .hamiltonians import Hamiltonian
from .paulis import BlockSpec, k_commutes

__all__ = [
    "Grouping",
    "sorted_insertion",
    "random_insertion",
    "r_hat",
    "check_grouping",
]


@dataclass(frozen=True)
class Grouping:
    """A partition of term indices into mutually block-commuting groups."""

    blocks: BlockSpec
    groups: tuple[tuple[int, ...], ...]
    r_hat: float

    @property
    def num_groups(self) -> int:
        return len(self.groups)

    @classmethod
    def from_groups(
        cls,
        h: Hamiltonian,
        blocks: BlockSpec,
        groups: Iterable[Iterable[int]],
    ) -> "Grouping":
        """Build a grouping from explicit index groups, validating it."""
        frozen = tuple(tuple(g) for g in groups)
        out = cls(blocks, frozen, _r_hat_of_groups(h, frozen))
        check_grouping(h, out)
        return out

    def to_json_dict(self) -> dict:
        return {
            "block_sizes": list(self.blocks.sizes),
            "groups": [list(g) for g in self.groups],
            "r_hat": self.r_hat,
            "num_groups": self.num_groups,
        }


def _r_hat_of_groups(h: Hamiltonian, groups: Sequence[Sequence[int]]) -> float:
    if not groups:
        raise ValueError("empty grouping")
    coeffs = h.coefficients()
    numerator = sum(abs(c) for c in coeffs)
    denominator = 0.0
    for group in groups:
        denominator += math.sqrt(sum(coeffs[i] * coeffs[i] for i in group))
    return (numerator / denominator) ** 2


def r_hat(h: Hamiltonian, grouping: Grouping) -> float:
    """Measurement-cost reduction score of a grouping, recomputed from h."""
    _require_partition(h, grouping.groups)
    return _r_hat_of_groups(h, grouping.groups)


def _require_partition(h: Hamiltonian, groups: Sequence[Sequence[int]]) -> None:
    flat = [i for g in groups for i in g]
    if len(flat) != h.num_terms or set(flat) != set(range(h.num_terms)):
        raise ValueError("groups do not form a partition of the term indices")


def check_grouping(h: Hamiltonian, grouping: Grouping) -> None:
    """Re-verify a grouping against its Hamiltonian from scratch.

    Checks the partition property and that every intra-group pair of
    Paulis block-commutes under the grouping's BlockSpec, independently of
    any bookkeeping done while the grouping was built.
    """
    grouping.blocks.require_n(h.n_qubits)
    _require_partition(h, grouping.groups)
    paulis = h.paulis()
    for group in grouping.groups:
        for a in range(len(group)):
            for b in range(a + 1, len(group)):
                p, q = paulis[group[a]], paulis[group[b]]
                if not k_commutes(p, q, grouping.blocks):
                    raise ValueError(
                        f"terms {group[a]} and {group[b]} do not block-commute"
                    )


def _first_fit(h: Hamiltonian, blocks: BlockSpec, order: Sequence[int]) -> Grouping:
    masks = blocks.masks
    xs = [t.pauli.x_bits for t in h.terms]
    zs = [t.pauli.z_bits for t in h.terms]
    groups: list[list[int]] = []
    # cached (x, z) of each group's members; the test stays pairwise
    group_bits: list[list[tuple[int, int]]] = []
    for i in order:
        x, z = xs[i], zs[i]
        for group, bits in zip(groups, group_bits):
            compatible = True
            for mx, mz in bits:
                anti = (x & mz) ^ (z & mx)
                if anti:
                    for mask in masks:
                        if (anti & mask).bit_count() & 1:
                            compatible = False
                            break
                    if not compatible:
                        break
            if compatible:
                group.append(i)
                bits.append((x, z))
                break
        else:
            groups.append([i])
            group_bits.append([(x, z)])
    frozen = tuple(tuple(g) for g in groups)
    return Grouping(blocks, frozen, _r_hat_of_groups(h, frozen))


def sorted_insertion(h: Hamiltonian, blocks: BlockSpec) -> Grouping:
    """Greedy first-fit grouping in decreasing |coefficient| order.

    Ties in magnitude are broken by original term index, so the result is
    deterministic.
    """
    if h.num_terms == 0:
        raise ValueError("cannot group an empty Hamiltonian")
    blocks.require_n(h.n_qubits)
    coeffs = h.coefficients()
    order = sorted(range(h.num_terms), key=lambda i: -abs(coeffs[i]))
    return _first_fit(h, blocks, order)


def random_insertion(h: Hamiltonian, blocks: BlockSpec, seed: int) -> Grouping:
    """First-fit grouping over a seeded uniform random term order."""
    if h.num_terms == 0:
        raise ValueError("cannot group an empty Hamiltonian")
    blocks.require_n(h.n_qubits)
    order = list(range(h.num_terms))
    random.Random(seed).shuffle(order)
    return _first_fit(h, blocks, order)
