"""Block-size sweeps, threshold extraction, scaling studies, and counting
oracles for block-commuting Pauli sets.

A sweep groups one Hamiltonian at every requested block size k and records
the group count and the measurement-cost score per k. The threshold k* is
the smallest k at which the score first reaches its maximum (within a
relative tolerance) or the group count first reaches its minimum. Counting
helpers provide both closed forms and brute-force enumerations so each can
check the other.
"""

from __future__ import annotations

import math
import statistics
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

import numpy as np

from .clifford import circuit_depth, diagonalize_group, per_block_circuits
from .grouping import Grouping, random_insertion, sorted_insertion
from .hamiltonians import Hamiltonian
from .paulis import BlockSpec, PauliString, restrict

__all__ = [
    "SweepRow",
    "KStarResult",
    "ScalingRow",
    "k_sweep",
    "find_k_star",
    "k_star_scaling",
    "count_block_commuting",
    "enumerate_block_commuting",
    "max_set_size_check",
    "count_linearly_independent_sets",
    "count_independent_commuting_sets",
    "diag_gate_lower_bound",
    "min_circuit_depth",
]


@dataclass(frozen=True)
class SweepRow:
    k: int
    num_groups: int
    r_hat: float
    max_block_circuit_gates: int | None = None
    max_block_circuit_depth: int | None = None

    def to_json_dict(self) -> dict:
        out = {"k": self.k, "num_groups": self.num_groups, "r_hat": self.r_hat}
        if self.max_block_circuit_gates is not None:
            out["max_block_circuit_gates"] = self.max_block_circuit_gates
            out["max_block_circuit_depth"] = self.max_block_circuit_depth
        return out


@dataclass(frozen=True)
class KStarResult:
    k_star_rhat: int
    k_star_groups: int


@dataclass(frozen=True)
class ScalingRow:
    n: int
    k_star_rhat: float
    k_star_groups: float
    k_star_rhat_std: float | None = None
    k_star_groups_std: float | None = None
    num_seeds: int | None = None

    def to_json_dict(self) -> dict:
        out = {
            "n": self.n,
            "k_star_rhat": self.k_star_rhat,
            "k_star_groups": self.k_star_groups,
        }
        if self.num_seeds is not None:
            out["k_star_rhat_std"] = self.k_star_rhat_std
            out["k_star_groups_std"] = self.k_star_groups_std
            out["num_seeds"] = self.num_seeds
        return out


def _group_once(
    h: Hamiltonian, blocks: BlockSpec, algorithm: str, seed: int | None
) -> Grouping:
    if algorithm == "sorted":
        return sorted_insertion(h, blocks)
    if algorithm == "random":
        if seed is None:
            raise ValueError("random insertion requires a seed")
        return random_insertion(h, blocks, seed)
    raise ValueError(f"unknown algorithm {algorithm!r}")


def _sweep_cell(args) -> SweepRow:
    h, k, algorithm, seed, with_circuits = args
    blocks = BlockSpec.uniform(k, h.n_qubits)
    grouping = _group_once(h, blocks, algorithm, seed)
    gates = depth = None
    if with_circuits:
        gates = depth = 0
        paulis = h.paulis()
        for group in grouping.groups:
            circuit = diagonalize_group([paulis[i] for i in group], blocks)
            for sub in per_block_circuits(circuit, blocks):
                gates = max(gates, sub.gate_count)
                depth = max(depth, circuit_depth(sub))
    return SweepRow(k, grouping.num_groups, grouping.r_hat, gates, depth)


def k_sweep(
    h: Hamiltonian,
    ks: Iterable[int],
    *,
    algorithm: str = "sorted",
    seed: int | None = None,
    with_circuits: bool = False,
    jobs: int = 1,
) -> list[SweepRow]:
    """One grouping per block size, each computed independently.

    Rows come back ordered by k. When `with_circuits` is set, each row also
    reports the largest per-block diagonalization sub-circuit (gate count
    and greedy-layering depth) over that row's groups. `jobs` > 1 farms the
    k values out to worker processes; the merge order is by k regardless of
    scheduling.
    """
    ks = sorted(set(int(k) for k in ks))
    if not ks:
        raise ValueError("no block sizes given")
    for k in ks:
        if not 1 <= k <= h.n_qubits:
            raise ValueError(f"block size {k} out of range [1, {h.n_qubits}]")
    tasks = [(h, k, algorithm, seed, with_circuits) for k in ks]
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(_sweep_cell, tasks))
    else:
        rows = [_sweep_cell(t) for t in tasks]
    return sorted(rows, key=lambda r: r.k)


def find_k_star(rows: Sequence[SweepRow], rel_tol: float = 1e-9) -> KStarResult:
    """Smallest k where r_hat first reaches its sweep maximum (within
    rel_tol) and smallest k where the group count first reaches its
    minimum."""
    if not rows:
        raise ValueError("empty sweep")
    if rel_tol < 0:
        raise ValueError("rel_tol must be nonnegative")
    best_r = max(r.r_hat for r in rows)
    fewest = min(r.num_groups for r in rows)
    k_rhat = min(r.k for r in rows if r.r_hat >= (1.0 - rel_tol) * best_r)
    k_groups = min(r.k for r in rows if r.num_groups == fewest)
    return KStarResult(k_rhat, k_groups)


def _scaling_cell(args):
    factory, n, seed, algorithm, rel_tol = args
    h = factory(n) if seed is None else factory(n, seed)
    rows = k_sweep(h, range(1, n + 1), algorithm=algorithm, seed=seed)
    res = find_k_star(rows, rel_tol)
    return n, seed, res


def k_star_scaling(
    factory: Callable,
    sizes: Iterable[int],
    *,
    seeds: Iterable[int] | None = None,
    algorithm: str = "sorted",
    rel_tol: float = 1e-9,
    jobs: int = 1,
) -> list[ScalingRow]:
    """Threshold block size per Hamiltonian size.

    For a deterministic family, `factory(n)` builds the instance and each
    row carries exact thresholds. For a randomized family pass `seeds`;
    `factory(n, seed)` builds each instance and rows carry the mean and
    population standard deviation over the seeds.
    """
    sizes = [int(n) for n in sizes]
    if not sizes:
        raise ValueError("no sizes given")
    seed_list = None if seeds is None else [int(s) for s in seeds]
    if seed_list is not None and not seed_list:
        raise ValueError("empty seed list")
    cells = []
    for n in sizes:
        for seed in seed_list if seed_list is not None else [None]:
            cells.append((factory, n, seed, algorithm, rel_tol))
    if jobs > 1 and len(cells) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_scaling_cell, cells))
    else:
        results = [_scaling_cell(c) for c in cells]

    by_size: dict[int, list[KStarResult]] = {n: [] for n in sizes}
    for n, _, res in results:
        by_size[n].append(res)
    rows = []
    for n in sizes:
        found = by_size[n]
        if seed_list is None:
            rows.append(ScalingRow(n, found[0].k_star_rhat, found[0].k_star_groups))
        else:
            rs = [r.k_star_rhat for r in found]
            gs = [r.k_star_groups for r in found]
            rows.append(
                ScalingRow(
                    n,
                    statistics.fmean(rs),
                    statistics.fmean(gs),
                    statistics.pstdev(rs),
                    statistics.pstdev(gs),
                    len(found),
                )
            )
    return rows


def count_block_commuting(p: PauliString, blocks: BlockSpec) -> int:
    """Closed-form count of phaseless strings block-commuting with p:
    4^n / 2^m for m blocks, independent of p.

    The formula presumes p acts non-trivially on every block; a block on
    which p restricts to the identity commutes with everything and breaks
    the count, so such inputs are rejected.
    """
    blocks.require_n(p.n_qubits)
    for idx, (start, stop) in enumerate(blocks.spans):
        if restrict(p, start, stop).is_identity:
            raise ValueError(
                f"p restricts to the identity on block {idx} "
                f"(qubits {start}..{stop - 1}); the closed form does not apply"
            )
    n, m = p.n_qubits, len(blocks)
    return 4**n // 2**m


def enumerate_block_commuting(p: PauliString, blocks: BlockSpec) -> int:
    """Brute-force count over all 4^n phaseless strings (n <= 8).

    Unlike the closed form, this accepts identity-restricted blocks and
    returns the true, larger count for them.
    """
    n = p.n_qubits
    if n > 8:
        raise ValueError(f"enumeration supports n <= 8, got {n}")
    blocks.require_n(n)
    xs = np.arange(1 << n, dtype=np.uint32)
    anti = (xs[:, None] & np.uint32(p.z_bits)) ^ (xs[None, :] & np.uint32(p.x_bits))
    ok = np.ones(anti.shape, dtype=bool)
    for mask in blocks.masks:
        ok &= (np.bitwise_count(anti & np.uint32(mask)) & 1) == 0
    return int(ok.sum())


def _bits_commute(x1: int, z1: int, x2: int, z2: int) -> bool:
    return ((x1 & z2) ^ (z1 & x2)).bit_count() % 2 == 0


def max_set_size_check(n: int, blocks: BlockSpec) -> int:
    """Construct and certify a largest block-commuting set (n <= 4).

    Per block, a maximal commuting set of restrictions is grown greedily
    from the full enumeration; the tensor-product set of these is then
    verified to be pairwise block-commuting, closed under phaseless
    multiplication, and non-extendable by any outside string. Returns the
    set size, which the theory pins at 2^n.
    """
    if n > 4:
        raise ValueError(f"exhaustive check supports n <= 4, got {n}")
    blocks.require_n(n)

    per_block: list[list[tuple[int, int]]] = []
    for start, stop in blocks.spans:
        width = stop - start
        chosen: list[tuple[int, int]] = []
        for x in range(1 << width):
            for z in range(1 << width):
                if all(_bits_commute(x, z, cx, cz) for cx, cz in chosen):
                    chosen.append((x, z))
        per_block.append(chosen)

    members: list[tuple[int, int]] = [(0, 0)]
    for (start, _), options in zip(blocks.spans, per_block):
        members = [
            (x | (bx << start), z | (bz << start))
            for x, z in members
            for bx, bz in options
        ]
    member_set = set(members)

    def blockwise(x1, z1, x2, z2) -> bool:
        return all(
            _bits_commute(x1 & m, z1 & m, x2 & m, z2 & m) for m in blocks.masks
        )

    for i in range(len(members)):
        for j in range(i + 1, len(members)):
            if not blockwise(*members[i], *members[j]):
                raise RuntimeError("product set is not pairwise block-commuting")
            prod = (members[i][0] ^ members[j][0], members[i][1] ^ members[j][1])
            if prod not in member_set:
                raise RuntimeError("product set is not closed under multiplication")
    for x in range(1 << n):
        for z in range(1 << n):
            if (x, z) in member_set:
                continue
            if all(blockwise(x, z, mx, mz) for mx, mz in members):
                raise RuntimeError("found an outside string extending the set")
    return len(members)


def count_linearly_independent_sets(dim: int, r: int) -> int:
    """Number of r-element sets of linearly independent vectors in a
    dim-dimensional binary vector space: (1/r!) * prod_{k<r} (2^dim - 2^k)."""
    if dim < 1 or not 1 <= r <= dim:
        raise ValueError(f"need 1 <= r <= dim, got r={r}, dim={dim}")
    product = 1
    for k in range(r):
        product *= 2**dim - 2**k
    sets, remainder = divmod(product, math.factorial(r))
    assert remainder == 0
    return sets


def count_independent_commuting_sets(n: int, r: int) -> int:
    """Number of r-element sets of independent, pairwise-commuting
    phaseless n-qubit strings: (1/r!) * prod_{k<r} (4^n/2^k - 2^k).

    Zero when r exceeds n, since a commuting subgroup has at most 2^n
    elements and therefore at most n independent generators.
    """
    if n < 1 or r < 1:
        raise ValueError(f"need n >= 1 and r >= 1, got n={n}, r={r}")
    product = 1
    for k in range(r):
        product *= 4**n // 2**k - 2**k
    if product <= 0:
        return 0
    sets, remainder = divmod(product, math.factorial(r))
    assert remainder == 0
    return sets


def diag_gate_lower_bound(n: int, r: int) -> float:
    """Gate-count threshold below which some size-r independent commuting
    set on n qubits escapes simultaneous diagonalization by any {CNOT, H,
    S, I} circuit: sum_{k<r} log2(1 + 2^(n-k)) / log2(n^2 + n + 1).

    The numerator is log2 of the ratio between all independent commuting
    r-sets and the r-sets any single circuit can diagonalize (the
    linearly independent subsets of one 2^n-element commuting subgroup);
    the denominator counts the gate choices per step.
    """
    if n < 2:
        raise ValueError(f"need n >= 2, got {n}")
    if not 1 <= r <= n:
        raise ValueError(f"need 1 <= r <= n, got r={r}")
    total = sum(math.log2(1 + 2 ** (n - k)) for k in range(r))
    return total / math.log2(n * n + n + 1)


def min_circuit_depth(d_gates: float, n: int) -> int:
    """Minimum possible depth of an n-qubit circuit with d gates."""
    if n < 1:
        raise ValueError("n must be positive")
    return math.ceil(d_gates / n)
