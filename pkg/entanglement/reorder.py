"""Permutation of the SCB basis that exposes the block-diagonal form of rho^Gamma."""

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from linalg.hermitian import as_matrix

from .separability import subspace_partition


class BlockCheck(NamedTuple):
    is_block_diagonal: bool
    max_off_block: float


@dataclass(frozen=True)
class BasisPermutation:
    """``mapping[new_position] = old SCB index``."""

    mapping: tuple
    block_sizes: tuple = ()

    def __post_init__(self):
        mapping = tuple(int(i) for i in self.mapping)
        if sorted(mapping) != list(range(len(mapping))):
            raise ValueError("mapping is not a permutation of 0..n-1")
        object.__setattr__(self, "mapping", mapping)
        object.__setattr__(self, "block_sizes", tuple(int(s) for s in self.block_sizes))
        if self.block_sizes and sum(self.block_sizes) != len(mapping):
            raise ValueError("block sizes do not add up to the permutation length")

    def __len__(self):
        return len(self.mapping)

    def inverse(self):
        inverse = np.empty(len(self.mapping), dtype=int)
        inverse[list(self.mapping)] = np.arange(len(self.mapping))
        return BasisPermutation(tuple(inverse.tolist()))


def subspace_permutation(p):
    partition = subspace_partition(p)
    return BasisPermutation(tuple(partition.flat()), tuple(partition.sizes))


def apply_permutation(rho, perm):
    """``P^T rho P``: entry (r, c) of the result is rho[mapping[r], mapping[c]]."""
    rho = as_matrix(rho)
    if rho.shape[0] != len(perm):
        raise ValueError(f"matrix dimension {rho.shape[0]} != permutation length {len(perm)}")
    order = list(perm.mapping)
    return rho[np.ix_(order, order)]


def _block_mask(block_sizes):
    n = sum(block_sizes)
    mask = np.zeros((n, n), dtype=bool)
    start = 0
    for size in block_sizes:
        mask[start : start + size, start : start + size] = True
        start += size
    return mask


def verify_block_diagonal(matrix, block_sizes, tol=0.0):
    matrix = as_matrix(matrix)
    if sum(block_sizes) != matrix.shape[0]:
        raise ValueError("block sizes do not add up to the matrix dimension")
    outside = np.abs(matrix[~_block_mask(block_sizes)])
    largest = float(outside.max()) if outside.size else 0.0
    return BlockCheck(largest <= tol, largest)


def diagonal_blocks(matrix, block_sizes):
    matrix = as_matrix(matrix)
    blocks, start = [], 0
    for size in block_sizes:
        blocks.append(matrix[start : start + size, start : start + size])
        start += size
    return blocks
