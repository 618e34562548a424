"""Combinatorial counting of restricted partitions.

These counts never touch eta products or the pentagonal number theorem: they
come from dynamic programming over admissible parts (or explicit
enumeration), which makes them an independent oracle for every
generating-function identity in the package.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

import numpy as np

from . import kernels
from .errors import TooLarge
from .series import EXACT, CoefficientRing

ENUMERATION_LIMIT = 40


@dataclass(frozen=True)
class PartitionConstraint:
    """No part divisible by ``ell`` (if given); every multiplicity below ``t`` (if given)."""

    ell: int | None = None
    t: int | None = None

    def __post_init__(self):
        if self.ell is None and self.t is None:
            raise ValueError("at least one of ell, t is required")
        for name in ("ell", "t"):
            v = getattr(self, name)
            if v is not None and v < 2:
                raise ValueError(f"{name} must be >= 2, got {v}")

    def admits_part(self, part: int) -> bool:
        return self.ell is None or part % self.ell != 0

    def max_multiplicity(self, part: int, n: int) -> int:
        cap = n // part
        return cap if self.t is None else min(cap, self.t - 1)

    def label(self) -> str:
        if self.ell is not None and self.t is not None:
            return f"RD({self.ell},{self.t})"
        if self.ell is not None:
            return f"regular({self.ell})"
        return f"distinct({self.t})"


@dataclass(frozen=True, eq=False)
class CountTable:
    """Counts indexed ``0..nmax``; exact Python ints or residues mod ``ring.modulus``."""

    label: str
    ring: CoefficientRing
    counts: np.ndarray
    constraint: PartitionConstraint | None = None

    def __post_init__(self):
        self.counts.setflags(write=False)

    @property
    def nmax(self) -> int:
        return len(self.counts) - 1

    def __getitem__(self, n: int) -> int:
        return int(self.counts[n])

    def __len__(self) -> int:
        return len(self.counts)

    def tolist(self) -> list[int]:
        return [int(c) for c in self.counts]


def _dp(constraint: PartitionConstraint, nmax: int, ring: CoefficientRing) -> np.ndarray:
    ell = constraint.ell or 0
    t = constraint.t or 0
    if ring.fast:
        return kernels.rd_counts_mod(nmax, ell, t, ring.modulus)
    counts = kernels.rd_counts_exact(nmax, ell, t, None)
    return ring.reduce(counts)


def count_partitions(constraint: PartitionConstraint, nmax: int, ring: CoefficientRing = EXACT) -> CountTable:
    """Telescoping DP: each admissible part ``i`` multiplies by ``(1 - q^(t i)) / (1 - q^i)``."""
    if nmax < 0:
        raise ValueError("nmax must be >= 0")
    return CountTable(constraint.label(), ring, _dp(constraint, nmax, ring), constraint)


def count_rd(ell: int, t: int, nmax: int, ring: CoefficientRing = EXACT) -> CountTable:
    return count_partitions(PartitionConstraint(ell, t), nmax, ring)


def count_regular(ell: int, nmax: int, ring: CoefficientRing = EXACT) -> CountTable:
    return count_partitions(PartitionConstraint(ell=ell), nmax, ring)


def count_distinct(t: int, nmax: int, ring: CoefficientRing = EXACT) -> CountTable:
    return count_partitions(PartitionConstraint(t=t), nmax, ring)


def count_bounded(constraint: PartitionConstraint, nmax: int) -> list[int]:
    """Exact counts by direct bounded convolution, one part at a time.

    Slower than :func:`count_partitions` (``O(nmax * t)`` per part) but built
    from nothing except the definition; used to cross-check the DP.
    """
    counts = [0] * (nmax + 1)
    counts[0] = 1
    for part in range(1, nmax + 1):
        if not constraint.admits_part(part):
            continue
        new = [0] * (nmax + 1)
        for n in range(nmax + 1):
            if counts[n] == 0:
                continue
            for mult in range(constraint.max_multiplicity(part, nmax - n) + 1):
                new[n + mult * part] += counts[n]
        counts = new
    return counts


Partition = tuple[tuple[int, int], ...]


def iter_partitions(constraint: PartitionConstraint, n: int) -> Iterator[Partition]:
    """Partitions of ``n`` as ``((part, multiplicity), ...)`` with parts decreasing.

    Output is in lexicographically decreasing order of the expanded part
    sequence.
    """

    def rec(remaining: int, largest: int) -> Iterator[list[tuple[int, int]]]:
        if remaining == 0:
            yield []
            return
        for part in range(min(remaining, largest), 0, -1):
            if not constraint.admits_part(part):
                continue
            for mult in range(constraint.max_multiplicity(part, remaining), 0, -1):
                for rest in rec(remaining - mult * part, part - 1):
                    yield [(part, mult)] + rest

    for p in rec(n, n):
        yield tuple(p)


def enumerate_partitions(constraint: PartitionConstraint, n: int) -> list[Partition]:
    if n > ENUMERATION_LIMIT:
        raise TooLarge(f"enumeration is limited to n <= {ENUMERATION_LIMIT}")
    if n < 0:
        raise ValueError("n must be >= 0")
    return list(iter_partitions(constraint, n))


def enumerate_rd(ell: int, t: int, n: int) -> list[Partition]:
    return enumerate_partitions(PartitionConstraint(ell, t), n)


def format_partition(p: Partition) -> str:
    """``((3, 1), (1, 3))`` -> ``"(3, 1^3)"``."""
    body = ", ".join(str(part) if mult == 1 else f"{part}^{mult}" for part, mult in p)
    return f"({body})"
