"""Quantum encodings of fuzzy sets and the gate-level fuzzy calculus.

A fuzzy set over {1..N} is loaded into an N-qubit register one qubit per
element; connectives act as gates.  Binary connectives grow the register
(inputs are kept, the result lands on fresh output qubits), so every
register carries a :class:`RegisterLayout` naming its segments.  The segment
named ``"value"`` always holds the current result.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache, reduce
from typing import Iterable

import numpy as np

from .fuzzy import FuzzySet, CrispSubset, com_index
from .statevec import (
    DEFAULT_QUBIT_CAP,
    NORM_TOL,
    PAULI_X,
    StateVector,
    apply_controlled,
    apply_single,
    check_register_cap,
    ground_state,
    one_probabilities,
)

VALUE_SEGMENT = "value"


@dataclass(frozen=True)
class RegisterLayout:
    """Named contiguous qubit segments tiling 1..total_qubits.

    Each segment is a ``(name, first_qubit, length)`` triple with 1-based
    qubit positions.
    """

    segments: tuple[tuple[str, int, int], ...]

    def __post_init__(self) -> None:
        if not self.segments:
            raise ValueError("layout needs at least one segment")
        names = [name for name, _, _ in self.segments]
        if len(set(names)) != len(names):
            raise ValueError(f"segment names must be unique, got {names}")
        expected_start = 1
        for name, start, length in sorted(self.segments, key=lambda s: s[1]):
            if length < 1:
                raise ValueError(f"segment {name!r} must have length >= 1")
            if start != expected_start:
                raise ValueError(
                    f"segments must tile the register contiguously; "
                    f"{name!r} starts at {start}, expected {expected_start}"
                )
            expected_start = start + length

    @staticmethod
    def single(name: str, n_qubits: int) -> "RegisterLayout":
        return RegisterLayout(((name, 1, n_qubits),))

    @property
    def total_qubits(self) -> int:
        return sum(length for _, _, length in self.segments)

    def segment(self, name: str) -> tuple[int, int]:
        """Return (first_qubit, length) of the named segment."""
        for seg_name, start, length in self.segments:
            if seg_name == name:
                return start, length
        raise KeyError(f"no segment named {name!r}")

    def qubits(self, name: str) -> range:
        start, length = self.segment(name)
        return range(start, start + length)

    def relabeled(self, prefix: str, offset: int = 0) -> tuple[tuple[str, int, int], ...]:
        """Segment rows renamed with ``prefix`` and shifted by ``offset``,
        for splicing into a larger layout."""
        return tuple(
            (prefix + name, start + offset, length)
            for name, start, length in self.segments
        )


@dataclass(frozen=True, eq=False)
class QuantumFuzzySet:
    """A register state together with the layout locating its value segment.

    ``pre_norm`` is only set by :func:`superpose`: the norm of the raw linear
    combination before renormalization (an interference diagnostic).
    """

    state: StateVector
    layout: RegisterLayout
    pre_norm: float | None = field(default=None, compare=False)

    def __post_init__(self) -> None:
        if self.layout.total_qubits != self.state.n_qubits:
            raise ValueError(
                f"layout covers {self.layout.total_qubits} qubits but the "
                f"state has {self.state.n_qubits}"
            )
        self.layout.segment(VALUE_SEGMENT)

    @property
    def universe_size(self) -> int:
        return self.layout.segment(VALUE_SEGMENT)[1]

    @property
    def value_qubits(self) -> range:
        return self.layout.qubits(VALUE_SEGMENT)


def rotation_gate(p: float) -> np.ndarray:
    """Real rotation taking |0> to sqrt(1-p)|0> + sqrt(p)|1>."""
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"membership must lie in [0, 1], got {p}")
    c = math.sqrt(1.0 - p)
    s = math.sqrt(p)
    return np.array([[c, -s], [s, c]], dtype=np.complex128)


def encode(f: FuzzySet, cap: int = DEFAULT_QUBIT_CAP) -> QuantumFuzzySet:
    """Load a fuzzy set into a fresh register, one qubit per element.

    Qubit i is rotated from |0> to sqrt(1-f(i))|0> + sqrt(f(i))|1>, so the
    register ends in the product state whose basis amplitudes are given by
    :func:`expansion_coeff`.
    """
    state = ground_state(f.universe_size, cap)
    for i, p in enumerate(f.memberships, start=1):
        state = apply_single(state, rotation_gate(float(p)), i)
    return QuantumFuzzySet(state, RegisterLayout.single(VALUE_SEGMENT, f.universe_size))


def expansion_coeff(f: FuzzySet, s: CrispSubset) -> float:
    """Standard-basis amplitude of the encoded state at crisp subset ``s``:
    the product of sqrt(f(i)) over members and sqrt(1-f(i)) over the rest."""
    if f.universe_size != s.universe_size:
        raise ValueError(
            f"universe size mismatch: {f.universe_size} vs {s.universe_size}"
        )
    inside = np.array([c == "1" for c in s.bits])
    m = f.memberships
    return float(np.prod(np.where(inside, np.sqrt(m), np.sqrt(1.0 - m))))


def qnot(q: QuantumFuzzySet) -> QuantumFuzzySet:
    """Pauli-X on every value qubit; the gate-level fuzzy complement."""
    state = q.state
    for i in q.value_qubits:
        state = apply_single(state, PAULI_X, i)
    return QuantumFuzzySet(state, q.layout)


def _common_universe(a: QuantumFuzzySet, b: QuantumFuzzySet) -> int:
    if a.universe_size != b.universe_size:
        raise ValueError(
            f"universe size mismatch: {a.universe_size} vs {b.universe_size}"
        )
    return a.universe_size


def _zero_block(n: int) -> np.ndarray:
    amps = np.zeros(1 << n, dtype=np.complex128)
    amps[0] = 1.0
    return amps


def qand(
    a: QuantumFuzzySet,
    b: QuantumFuzzySet,
    cap: int = DEFAULT_QUBIT_CAP,
) -> QuantumFuzzySet:
    """Elementwise fuzzy AND via one Toffoli per universe element.

    Builds the register a (x) b (x) |0..0> and, for each element i, applies a
    Toffoli controlled by the value qubits of ``a`` and ``b`` targeting a
    fresh output qubit.  The inputs are kept; the output segment becomes the
    value segment.  For encoded inputs the output marginal of element i is
    f(i) * g(i).
    """
    n = _common_universe(a, b)
    a_total = a.state.n_qubits
    b_total = b.state.n_qubits
    total = a_total + b_total + n
    check_register_cap(total, cap)
    amps = np.kron(np.kron(a.state.amplitudes, b.state.amplitudes), _zero_block(n))
    state = StateVector(total, amps)
    a_start = a.layout.segment(VALUE_SEGMENT)[0]
    b_start = b.layout.segment(VALUE_SEGMENT)[0]
    out_start = a_total + b_total + 1
    for i in range(n):
        state = apply_controlled(
            state,
            PAULI_X,
            [a_start + i, a_total + b_start + i],
            out_start + i,
        )
    layout = RegisterLayout(
        a.layout.relabeled("a.")
        + b.layout.relabeled("b.", offset=a_total)
        + ((VALUE_SEGMENT, out_start, n),)
    )
    return QuantumFuzzySet(state, layout)


def qor(
    a: QuantumFuzzySet,
    b: QuantumFuzzySet,
    cap: int = DEFAULT_QUBIT_CAP,
) -> QuantumFuzzySet:
    """Elementwise fuzzy OR as NOT(NOT a AND NOT b).

    X on the value qubits of both inputs, the AND construction, then X on
    the output qubits; the output marginal is f(i) + g(i) - f(i)g(i) for
    encoded inputs.
    """
    g = qand(qnot(a), qnot(b), cap)
    return qnot(g)


def _smear_mask(bits: int, k: int, n: int) -> int:
    """Positions within distance k of a set bit, as an n-bit mask."""
    full = (1 << n) - 1
    out = 0
    for s in range(k + 1):
        out |= (bits << s) & full
        out |= bits >> s
    return out


def _half_mix_image(mask: int, n: int) -> np.ndarray:
    """Product state with qubit i in (|0>+|1>)/sqrt(2) where mask bit i is
    set and |0> elsewhere, as a real amplitude vector."""
    half = np.array([math.sqrt(0.5), math.sqrt(0.5)])
    zero = np.array([1.0, 0.0])
    vecs = [half if (mask >> (n - i)) & 1 else zero for i in range(1, n + 1)]
    return reduce(np.kron, vecs)


def fuz_linear(state: StateVector, k: int, renormalize: bool = False) -> StateVector:
    """Square-window fuzzification as a linear (not unitary) map.

    Each basis state maps to the product state with qubit i in
    (|0>+|1>)/sqrt(2) whenever some set bit lies within distance ``k`` of i,
    and |0> otherwise; superpositions are mapped linearly.  Distinct basis
    states can share an image, so norm is generally not preserved; with
    ``renormalize`` the output is rescaled to unit norm and a complete
    cancellation raises.
    """
    if k < 0:
        raise ValueError(f"window radius must be >= 0, got {k}")
    n = state.n_qubits
    out = np.zeros(1 << n, dtype=np.complex128)
    images: dict[int, np.ndarray] = {}
    for idx in np.nonzero(state.amplitudes)[0]:
        mask = _smear_mask(int(idx), k, n)
        img = images.get(mask)
        if img is None:
            img = _half_mix_image(mask, n)
            images[mask] = img
        out += state.amplitudes[idx] * img
    if renormalize:
        norm = np.linalg.norm(out)
        if norm < NORM_TOL:
            raise ValueError(
                "fuzzified state cancelled to norm ~0 and cannot be renormalized"
            )
        out = out / norm
    return StateVector(n, out)


def _segment_bits(index: int, n_total: int, start: int, length: int) -> int:
    """Extract the bits of a qubit segment from a basis index."""
    shift = n_total - (start + length - 1)
    return (index >> shift) & ((1 << length) - 1)


def fuz_isometry(
    q: QuantumFuzzySet,
    k: int,
    cap: int = DEFAULT_QUBIT_CAP,
) -> QuantumFuzzySet:
    """Fuzzification made norm-preserving by remembering the input.

    Appends a fresh N-qubit segment and sends each basis component |a>|0..0>
    to |a> (x) FUZ(|a value bits>).  Because the input copy is retained,
    images of distinct basis states stay orthogonal, so the map is an
    isometry on the zero-padded subspace (its extension off that subspace is
    deliberately left unspecified).  The appended segment becomes the value
    segment.
    """
    if k < 0:
        raise ValueError(f"window radius must be >= 0, got {k}")
    n_out = q.universe_size
    n_in = q.state.n_qubits
    total = n_in + n_out
    check_register_cap(total, cap)
    v_start, v_len = q.layout.segment(VALUE_SEGMENT)
    out = np.zeros(1 << total, dtype=np.complex128)
    images: dict[int, np.ndarray] = {}
    block = 1 << n_out
    for idx in np.nonzero(q.state.amplitudes)[0]:
        vbits = _segment_bits(int(idx), n_in, v_start, v_len)
        mask = _smear_mask(vbits, k, n_out)
        img = images.get(mask)
        if img is None:
            img = _half_mix_image(mask, n_out)
            images[mask] = img
        base = int(idx) * block
        out[base : base + block] = q.state.amplitudes[idx] * img
    layout = RegisterLayout(
        q.layout.relabeled("in.") + ((VALUE_SEGMENT, n_in + 1, n_out),)
    )
    return QuantumFuzzySet(StateVector(total, out), layout)


@lru_cache(maxsize=None)
def _com_xor_masks(u_len: int) -> np.ndarray:
    """XOR mask (one-hot center-of-mass pattern) for every u-segment value."""
    masks = np.zeros(1 << u_len, dtype=np.int64)
    for u in range(1 << u_len):
        c = com_index(format(u, f"0{u_len}b"))
        if c:
            masks[u] = 1 << (u_len - c)
    return masks


def _com_xor(state: StateVector, u_start: int, u_len: int) -> StateVector:
    """XOR the one-hot center of mass of a qubit segment into the final
    ``u_len`` qubits of the register.  A basis permutation, self-inverse."""
    n = state.n_qubits
    masks = _com_xor_masks(u_len)
    idx = np.arange(1 << n, dtype=np.int64)
    shift = n - (u_start + u_len - 1)
    ubits = (idx >> shift) & ((1 << u_len) - 1)
    targets = idx ^ masks[ubits]
    return StateVector(n, state.amplitudes[targets])


def u_com(state: StateVector) -> StateVector:
    """Center-of-mass defuzzification as a unitary on a doubled register.

    On a 2n-qubit register, maps |u>|v> to |u>|v XOR c(u)> where c(u) is the
    one-hot bitstring of the center-of-mass index of u (all zeros for the
    massless input).  A basis permutation and an involution.
    """
    if state.n_qubits % 2:
        raise ValueError(
            f"u_com needs an even register, got {state.n_qubits} qubits"
        )
    n = state.n_qubits // 2
    return _com_xor(state, u_start=1, u_len=n)


def _decode_one_hot(pattern: int, n: int) -> int:
    """Index 1..n of the single set bit; 0 for the all-zero pattern."""
    if pattern == 0:
        return 0
    if pattern & (pattern - 1):
        raise ValueError(f"pattern {pattern:b} is not one-hot")
    return n - (pattern.bit_length() - 1)


def defuzzify(
    q: QuantumFuzzySet,
    rng: np.random.Generator,
    trials: int,
    cap: int = DEFAULT_QUBIT_CAP,
) -> dict[int, int]:
    """Sampled center-of-mass readout: counts over crisp indices 0..N.

    Each trial pads the register with |0..0>, routes the value segment
    through the center-of-mass XOR permutation (:func:`u_com` when the
    register is just the value segment), measures the appended qubits, and
    decodes the one-hot outcome (all zeros decodes to the sentinel 0).  The
    trials are independent, so they are drawn in one pass from the Born
    marginal of the appended segment.
    """
    if trials < 1:
        raise ValueError(f"trials must be >= 1, got {trials}")
    n = q.universe_size
    n_in = q.state.n_qubits
    total = n_in + n
    check_register_cap(total, cap)
    v_start, _ = q.layout.segment(VALUE_SEGMENT)
    padded = StateVector(total, np.kron(q.state.amplitudes, _zero_block(n)))
    routed = _com_xor(padded, u_start=v_start, u_len=n)
    probs = np.abs(routed.amplitudes) ** 2
    patterns = np.arange(1 << total, dtype=np.int64) & ((1 << n) - 1)
    pattern_probs = np.bincount(patterns, weights=probs, minlength=1 << n)
    index_probs = np.zeros(n + 1)
    for pat in np.nonzero(pattern_probs)[0]:
        index_probs[_decode_one_hot(int(pat), n)] += pattern_probs[pat]
    index_probs /= index_probs.sum()
    counts = rng.multinomial(trials, index_probs)
    return {int(i): int(c) for i, c in enumerate(counts) if c}


def superpose(
    terms: Iterable[tuple[complex, FuzzySet]],
    cap: int = DEFAULT_QUBIT_CAP,
) -> QuantumFuzzySet:
    """Linear combination of encoded fuzzy sets, renormalized.

    Encoded terms are generally non-orthogonal, so the raw combination's
    norm carries interference information; it is kept on the result as
    ``pre_norm``.  A combination that cancels completely raises.
    """
    terms = list(terms)
    if not terms:
        raise ValueError("superpose needs at least one term")
    n = terms[0][1].universe_size
    for _, f in terms:
        if f.universe_size != n:
            raise ValueError(
                f"universe size mismatch: {f.universe_size} vs {n}"
            )
    vec = np.zeros(1 << n, dtype=np.complex128)
    for c, f in terms:
        vec += complex(c) * encode(f, cap).state.amplitudes
    pre_norm = float(np.linalg.norm(vec))
    if pre_norm < NORM_TOL:
        raise ValueError(
            f"superposition cancelled completely (norm {pre_norm:.3e})"
        )
    return QuantumFuzzySet(
        StateVector(n, vec / pre_norm),
        RegisterLayout.single(VALUE_SEGMENT, n),
        pre_norm=pre_norm,
    )


def value_marginals(q: QuantumFuzzySet) -> np.ndarray:
    """Per-element probabilities of measuring 1 on the value segment."""
    probs = one_probabilities(q.state)
    return np.array([probs[i - 1] for i in q.value_qubits])
