"""Fuzzy membership functions over the finite universe {1..N}.

The connective family is the probabilistic one: complement ``1 - f``,
intersection ``f * g``, and the union ``f + g - f*g`` obtained from them by
De Morgan.  Crisp subsets are bitstrings with element 1 leftmost, mirroring
the register convention of :mod:`qfuzzy.statevec`.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce

import numpy as np

#: Universes above this size are refused by exhaustive enumeration.
MAX_ENUM_UNIVERSE = 20


@dataclass(frozen=True, eq=False)
class FuzzySet:
    """Membership values in [0, 1], one per universe element (element i at
    position i-1)."""

    memberships: np.ndarray

    def __post_init__(self) -> None:
        m = np.asarray(self.memberships, dtype=np.float64)
        if m.ndim != 1 or m.size == 0:
            raise ValueError("memberships must be a nonempty 1-d array")
        if not np.all(np.isfinite(m)):
            raise ValueError("memberships must be finite")
        if np.any(m < 0.0) or np.any(m > 1.0):
            raise ValueError(
                f"memberships must lie in [0, 1], got {m[(m < 0) | (m > 1)][0]}"
            )
        object.__setattr__(self, "memberships", m)

    @property
    def universe_size(self) -> int:
        return int(self.memberships.size)


@dataclass(frozen=True)
class CrispSubset:
    """Ordinary subset of {1..N} as a bitstring, element 1 leftmost."""

    bits: str

    def __post_init__(self) -> None:
        if not self.bits:
            raise ValueError("bits must be nonempty")
        if set(self.bits) - {"0", "1"}:
            raise ValueError(f"bits may contain only '0' and '1', got {self.bits!r}")

    @property
    def universe_size(self) -> int:
        return len(self.bits)

    @property
    def elements(self) -> tuple[int, ...]:
        return tuple(i for i, b in enumerate(self.bits, start=1) if b == "1")


def _check_sizes(f: FuzzySet, g: FuzzySet) -> None:
    if f.universe_size != g.universe_size:
        raise ValueError(
            f"universe size mismatch: {f.universe_size} vs {g.universe_size}"
        )


def complement(f: FuzzySet) -> FuzzySet:
    """Pointwise 1 - f(i)."""
    return FuzzySet(1.0 - f.memberships)


def intersect(f: FuzzySet, g: FuzzySet) -> FuzzySet:
    """Pointwise product f(i) * g(i)."""
    _check_sizes(f, g)
    return FuzzySet(f.memberships * g.memberships)


def union(f: FuzzySet, g: FuzzySet) -> FuzzySet:
    """Pointwise f(i) + g(i) - f(i)g(i), the De Morgan dual of intersect."""
    _check_sizes(f, g)
    return FuzzySet(f.memberships + g.memberships - f.memberships * g.memberships)


def classical_fuzzify(crisp_index: int, k: int, universe_size: int) -> FuzzySet:
    """Square-window fuzzifier: membership 1/2 within distance ``k`` of the
    crisp index, 0 elsewhere.  The window clips at the universe boundary."""
    if not 1 <= crisp_index <= universe_size:
        raise ValueError(
            f"crisp index {crisp_index} out of range 1..{universe_size}"
        )
    if k < 0:
        raise ValueError(f"window radius must be >= 0, got {k}")
    m = np.zeros(universe_size)
    lo = max(1, crisp_index - k)
    hi = min(universe_size, crisp_index + k)
    m[lo - 1 : hi] = 0.5
    return FuzzySet(m)


def _bits_of(bits: CrispSubset | str) -> str:
    return bits.bits if isinstance(bits, CrispSubset) else CrispSubset(bits).bits


def com_index(bits: CrispSubset | str) -> int:
    """Center of mass of the set bits: floor(sum of set indices / their count).

    All-zero input has no mass and maps to the sentinel index 0.
    """
    b = _bits_of(bits)
    mass = b.count("1")
    if mass == 0:
        return 0
    return sum(i for i, c in enumerate(b, start=1) if c == "1") // mass


def com_index_literal(bits: CrispSubset | str) -> int:
    """Variant that divides by the sum of all indices 1..N instead of the mass.

    Kept for comparison with :func:`com_index`; it collapses almost every
    input to index 0 or 1 and is not used by the defuzzifiers.
    """
    b = _bits_of(bits)
    n = len(b)
    weighted = sum(i for i, c in enumerate(b, start=1) if c == "1")
    return weighted // (n * (n + 1) // 2)


def crisp_subset_probability(f: FuzzySet, s: CrispSubset) -> float:
    """Probability that measuring the encoded register collapses onto ``s``:
    the product of f(i) over members and 1 - f(i) over non-members."""
    if f.universe_size != s.universe_size:
        raise ValueError(
            f"universe size mismatch: {f.universe_size} vs {s.universe_size}"
        )
    inside = np.array([c == "1" for c in s.bits])
    return float(np.prod(np.where(inside, f.memberships, 1.0 - f.memberships)))


def oracle_distribution(f: FuzzySet) -> dict[str, float]:
    """Exact collapse distribution over all 2^N crisp subsets, by enumeration."""
    n = f.universe_size
    if n > MAX_ENUM_UNIVERSE:
        raise ValueError(
            f"universe of size {n} is too large to enumerate "
            f"(limit {MAX_ENUM_UNIVERSE})"
        )
    per_qubit = [np.array([1.0 - p, p]) for p in f.memberships]
    probs = reduce(np.kron, per_qubit)
    return {format(i, f"0{n}b"): float(p) for i, p in enumerate(probs)}


def com_pushforward(f: FuzzySet) -> dict[int, float]:
    """Exact distribution of the center-of-mass index under the collapse law.

    Pushes :func:`oracle_distribution` forward through :func:`com_index`;
    only indices of positive probability appear.
    """
    out: dict[int, float] = {}
    for bits, p in oracle_distribution(f).items():
        if p > 0.0:
            idx = com_index(bits)
            out[idx] = out.get(idx, 0.0) + p
    return dict(sorted(out.items()))
