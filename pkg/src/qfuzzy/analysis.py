"""Structural diagnostics: orthogonality, entanglement, sampling checks."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

import numpy as np

from .fuzzy import FuzzySet, oracle_distribution
from .qfs import QuantumFuzzySet, encode
from .statevec import (
    StateVector,
    factor_product_state,
    sample_distribution,
    schmidt_rank,
)

#: Phases below this magnitude are reported as exactly 0.
PHASE_SNAP_TOL = 1e-10

#: Largest universe accepted by the sampling-vs-enumeration comparison.
MAX_SAMPLING_UNIVERSE = 12


@dataclass(frozen=True)
class OrthogonalityVerdict:
    """Outcome of the encoded-state orthogonality test for a pair of fuzzy
    sets: they are orthogonal exactly when some element is crisply in one
    set and crisply out of the other."""

    orthogonal: bool
    witness: int | None
    inner_product_value: complex


@dataclass(frozen=True, eq=False)
class EntanglementReport:
    """Per-qubit structure of a register state.

    ``canonical_fuzzy_set`` and ``phases`` are present exactly when the
    state is a product: each factor a|0> + b|1> contributes membership |b|^2
    and relative phase arg(b) - arg(a).
    """

    per_qubit_schmidt_ranks: tuple[int, ...]
    is_product: bool
    canonical_fuzzy_set: FuzzySet | None
    phases: tuple[float, ...] | None


def cfs_inner(f: FuzzySet, g: FuzzySet) -> float:
    """Closed-form inner product of two encoded fuzzy sets:
    the product over i of sqrt(f(i)g(i)) + sqrt((1-f(i))(1-g(i)))."""
    if f.universe_size != g.universe_size:
        raise ValueError(
            f"universe size mismatch: {f.universe_size} vs {g.universe_size}"
        )
    fm, gm = f.memberships, g.memberships
    return float(np.prod(np.sqrt(fm * gm) + np.sqrt((1.0 - fm) * (1.0 - gm))))


def check_orthogonality(f: FuzzySet, g: FuzzySet) -> OrthogonalityVerdict:
    """Decide orthogonality of the encoded states.

    The witness condition is exact: element i with (f(i), g(i)) equal to
    (0, 1) or (1, 0) as stored.  Memberships merely close to 0 or 1 do not
    produce orthogonal states and yield no witness.
    """
    if f.universe_size != g.universe_size:
        raise ValueError(
            f"universe size mismatch: {f.universe_size} vs {g.universe_size}"
        )
    witness = None
    for i, (a, b) in enumerate(zip(f.memberships, g.memberships), start=1):
        if (a == 0.0 and b == 1.0) or (a == 1.0 and b == 0.0):
            witness = i
            break
    return OrthogonalityVerdict(
        orthogonal=witness is not None,
        witness=witness,
        inner_product_value=complex(cfs_inner(f, g)),
    )


def entanglement_report(q: QuantumFuzzySet | StateVector) -> EntanglementReport:
    """Schmidt ranks of every 1-vs-rest bipartition, and, for product states,
    the fuzzy set and per-qubit phases recovered by rotating each factor back
    to the zero-phase meridian."""
    state = q.state if isinstance(q, QuantumFuzzySet) else q
    n = state.n_qubits
    if n == 1:
        ranks: tuple[int, ...] = (1,)
    else:
        ranks = tuple(schmidt_rank(state, {i}) for i in range(1, n + 1))
    is_product = all(r == 1 for r in ranks)
    if not is_product:
        return EntanglementReport(ranks, False, None, None)
    factors = factor_product_state(state)
    if factors is None:
        raise RuntimeError("rank-1 state failed to factor; tolerances disagree")
    memberships = []
    phases = []
    for factor in factors:
        a, b = factor.amplitudes
        memberships.append(min(1.0, max(0.0, float(abs(b) ** 2))))
        if abs(a) < PHASE_SNAP_TOL or abs(b) < PHASE_SNAP_TOL:
            phi = 0.0  # phase is undefined on a pole; report the convention
        else:
            phi = float(np.angle(b) - np.angle(a))
        phases.append(0.0 if abs(phi) < PHASE_SNAP_TOL else phi)
    return EntanglementReport(ranks, True, FuzzySet(memberships), tuple(phases))


def total_variation(p: Mapping, q: Mapping) -> float:
    """Total-variation distance between two discrete distributions,
    half the L1 distance over the union of their keys."""
    keys = set(p) | set(q)
    return 0.5 * sum(abs(p.get(k, 0.0) - q.get(k, 0.0)) for k in keys)


def sampling_vs_oracle(
    f: FuzzySet,
    rng: np.random.Generator,
    shots: int,
) -> float:
    """Total-variation distance between sampled measurement frequencies of
    the encoded state and the exact enumeration of collapse probabilities."""
    if f.universe_size > MAX_SAMPLING_UNIVERSE:
        raise ValueError(
            f"universe of size {f.universe_size} is too large to compare "
            f"(limit {MAX_SAMPLING_UNIVERSE})"
        )
    if shots < 1:
        raise ValueError(f"shots must be >= 1, got {shots}")
    counts = sample_distribution(encode(f).state, rng, shots)
    empirical = {bits: c / shots for bits, c in counts.items()}
    return total_variation(empirical, oracle_distribution(f))
