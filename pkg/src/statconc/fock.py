"""Sparse second-quantized states over labelled single-particle modes.

A state is a complex-amplitude map over occupation configurations.  Bosons
and fermions share the representation; exchange behaviour enters only
through the creation/annihilation rules.  All fermionic signs are taken
relative to a fixed canonical mode order, lexicographic over
(party, pair, slot, location, spin) with each enum in declaration order.
A basis configuration [m1 < m2 < ... < mk] stands for the operator string
a+_{m1} a+_{m2} ... a+_{mk} |0>, so Alice's modes always precede Bob's and
bipartite splits of a string are sign-consistent.

Every operation is a pure function; states are never mutated in place.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum, IntEnum
from typing import Dict, Iterable, Mapping, NamedTuple, Optional, Sequence, Tuple

#: Amplitudes below this magnitude are dropped after linear combinations,
#: keeping exact zero branches out of the term map.  Well below every
#: tolerance asserted elsewhere.
PRUNE_THRESHOLD = 1e-14


class Statistics(Enum):
    """Exchange statistics of the particles populating a state."""

    FERMION = "fermion"
    BOSON = "boson"


class Party(IntEnum):
    ALICE = 0
    BOB = 1


class Pair(IntEnum):
    LEFT = 0
    RIGHT = 1


class Location(IntEnum):
    """Spatial stage of a mode along the concentration setup."""

    SOURCE_ARM = 0
    DETECTOR_LEFT = 1
    DETECTOR_RIGHT = 2
    ABSORBED = 3


class Spin(IntEnum):
    UP = 0
    DOWN = 1


class Mode(NamedTuple):
    """One single-particle mode label.

    NamedTuple field order is the canonical sort order.  Detector-output
    modes are conventionally labelled with pair=LEFT (the beam splitter
    erases the input-arm identity); absorbed modes reuse the pair field to
    record which detector fired.
    """

    party: Party
    pair: Pair
    slot: int
    location: Location = Location.SOURCE_ARM
    spin: Spin = Spin.UP

    def with_spin(self, spin: Spin) -> "Mode":
        return self._replace(spin=spin)

    def with_location(self, location: Location) -> "Mode":
        return self._replace(location=location)


#: Occupation configuration: modes in canonical order with counts >= 1.
Occupation = Tuple[Tuple[Mode, int], ...]


class FockError(ValueError):
    """Base error for ill-formed state operations."""


class StatisticsMismatchError(FockError):
    """Raised when states of different statistics are combined."""


class ZeroStateError(FockError):
    """Raised when an operation needs a state of nonzero norm."""


def _particle_number(occ: Occupation) -> int:
    return sum(count for _, count in occ)


@dataclass(frozen=True)
class SparseState:
    """Sparse superposition: occupation configuration -> complex amplitude.

    Construction prunes amplitudes below PRUNE_THRESHOLD and checks that
    all retained terms carry the same total particle number (fermionic
    terms additionally must have all counts equal to one).
    """

    statistics: Statistics
    terms: Dict[Occupation, complex] = field(default_factory=dict)

    def __post_init__(self) -> None:
        pruned = {
            occ: complex(amp)
            for occ, amp in self.terms.items()
            if abs(amp) >= PRUNE_THRESHOLD
        }
        object.__setattr__(self, "terms", pruned)
        number: Optional[int] = None
        for occ in pruned:
            if self.statistics is Statistics.FERMION:
                if any(count != 1 for _, count in occ):
                    raise FockError("fermionic occupation above 1: %r" % (occ,))
            n = _particle_number(occ)
            if number is None:
                number = n
            elif n != number:
                raise FockError(
                    "mixed particle numbers in one state: %d vs %d" % (number, n)
                )

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def particle_number(self) -> Optional[int]:
        """Total particle count, or None for the zero state."""
        for occ in self.terms:
            return _particle_number(occ)
        return None

    def norm_squared(self) -> float:
        return sum(abs(amp) ** 2 for amp in self.terms.values())


def vacuum(statistics: Statistics) -> SparseState:
    """The particle vacuum |0>, a single empty configuration."""
    return SparseState(statistics, {(): 1.0 + 0.0j})


def zero_state(statistics: Statistics) -> SparseState:
    """The zero vector (empty term map), e.g. a fully excluded branch."""
    return SparseState(statistics, {})


def from_modes(
    statistics: Statistics,
    modes: Iterable[Mode],
    amplitude: complex = 1.0 + 0.0j,
) -> SparseState:
    """Canonical basis term occupied by the given modes.

    The amplitude is attached to the canonically ordered operator string,
    i.e. this fixes the ket sign convention rather than tracking the order
    in which `modes` is supplied.
    """
    counts: Dict[Mode, int] = {}
    for mode in modes:
        counts[mode] = counts.get(mode, 0) + 1
    if statistics is Statistics.FERMION and any(c > 1 for c in counts.values()):
        return zero_state(statistics)
    occ = tuple(sorted(counts.items()))
    return SparseState(statistics, {occ: complex(amplitude)})


def _term_create(
    occ: Occupation, amp: complex, mode: Mode, statistics: Statistics
) -> Optional[Tuple[Occupation, complex]]:
    """Apply a+_mode to one basis term; None if it is annihilated."""
    entries = list(occ)
    idx = 0
    while idx < len(entries) and entries[idx][0] < mode:
        idx += 1
    present = idx < len(entries) and entries[idx][0] == mode
    if statistics is Statistics.FERMION:
        if present:
            return None  # Pauli exclusion
        sign = -1.0 if idx % 2 else 1.0
        entries.insert(idx, (mode, 1))
        return tuple(entries), amp * sign
    if present:
        count = entries[idx][1]
        entries[idx] = (mode, count + 1)
        return tuple(entries), amp * math.sqrt(count + 1)
    entries.insert(idx, (mode, 1))
    return tuple(entries), amp


def _term_annihilate(
    occ: Occupation, amp: complex, mode: Mode, statistics: Statistics
) -> Optional[Tuple[Occupation, complex]]:
    """Apply a_mode to one basis term; None if the mode is empty."""
    entries = list(occ)
    idx = 0
    while idx < len(entries) and entries[idx][0] < mode:
        idx += 1
    if idx >= len(entries) or entries[idx][0] != mode:
        return None
    if statistics is Statistics.FERMION:
        sign = -1.0 if idx % 2 else 1.0
        del entries[idx]
        return tuple(entries), amp * sign
    count = entries[idx][1]
    if count == 1:
        del entries[idx]
    else:
        entries[idx] = (mode, count - 1)
    return tuple(entries), amp * math.sqrt(count)


def _collect(
    statistics: Statistics,
    pieces: Iterable[Tuple[Occupation, complex]],
) -> SparseState:
    terms: Dict[Occupation, complex] = {}
    for occ, amp in pieces:
        terms[occ] = terms.get(occ, 0.0) + amp
    return SparseState(statistics, terms)


def create(state: SparseState, mode: Mode) -> SparseState:
    """a+_mode applied termwise.  Not renormalized.

    Fermions: insertion into an occupied mode kills the term, otherwise
    the amplitude picks up (-1)^k with k occupied modes preceding `mode`
    canonically.  Bosons: the count increments and the amplitude gains
    sqrt(count + 1).
    """
    out = []
    for occ, amp in state.terms.items():
        res = _term_create(occ, amp, mode, state.statistics)
        if res is not None:
            out.append(res)
    return _collect(state.statistics, out)


def annihilate(state: SparseState, mode: Mode) -> SparseState:
    """a_mode applied termwise: the adjoint of :func:`create`."""
    out = []
    for occ, amp in state.terms.items():
        res = _term_annihilate(occ, amp, mode, state.statistics)
        if res is not None:
            out.append(res)
    return _collect(state.statistics, out)


def inner_product(a: SparseState, b: SparseState) -> complex:
    """<a|b> over shared configurations."""
    if a.statistics is not b.statistics:
        raise StatisticsMismatchError(
            "cannot overlap %s with %s states"
            % (a.statistics.value, b.statistics.value)
        )
    small, big = (a.terms, b.terms) if len(a.terms) <= len(b.terms) else (b.terms, a.terms)
    total = 0.0 + 0.0j
    for occ, amp in small.items():
        other = big.get(occ)
        if other is not None:
            if small is a.terms:
                total += amp.conjugate() * other
            else:
                total += other.conjugate() * amp
    return total


def scale_add(pieces: Sequence[Tuple[complex, SparseState]]) -> SparseState:
    """Linear combination sum_i c_i |psi_i> with pruning."""
    if not pieces:
        raise FockError("scale_add needs at least one state")
    statistics = pieces[0][1].statistics
    terms: Dict[Occupation, complex] = {}
    for coeff, state in pieces:
        if state.statistics is not statistics:
            raise StatisticsMismatchError("mixed statistics in linear combination")
        if coeff == 0:
            continue
        for occ, amp in state.terms.items():
            terms[occ] = terms.get(occ, 0.0) + coeff * amp
    return SparseState(statistics, terms)


def normalize(state: SparseState) -> Tuple[SparseState, float]:
    """Unit-norm copy plus the original squared norm.

    The squared norm of an unnormalized projected state is exactly the
    post-selection probability of that branch.
    """
    if state.is_zero:
        raise ZeroStateError("cannot normalize the zero state (impossible branch)")
    nsq = state.norm_squared()
    scale = 1.0 / math.sqrt(nsq)
    return (
        SparseState(state.statistics, {occ: amp * scale for occ, amp in state.terms.items()}),
        nsq,
    )


def _permutation_sign(modes: Sequence[Mode]) -> float:
    """Parity of the permutation sorting `modes` (assumed distinct)."""
    inversions = 0
    for i in range(len(modes)):
        for j in range(i + 1, len(modes)):
            if modes[j] < modes[i]:
                inversions += 1
    return -1.0 if inversions % 2 else 1.0


def relabel_modes(state: SparseState, mapping: Mapping[Mode, Mode]) -> SparseState:
    """Bijective mode relabelling with fermionic re-canonicalization signs.

    `mapping` must be injective on each term's occupied modes; a collision
    would merge two modes and is rejected.
    """
    out = []
    for occ, amp in state.terms.items():
        mapped = [(mapping.get(mode, mode), count) for mode, count in occ]
        seen = {mode for mode, _ in mapped}
        if len(seen) != len(mapped):
            raise FockError("mode relabelling collides on one term")
        if state.statistics is Statistics.FERMION:
            amp = amp * _permutation_sign([mode for mode, _ in mapped])
        out.append((tuple(sorted(mapped)), amp))
    return _collect(state.statistics, out)


def substitute_modes(
    state: SparseState,
    mapping: Mapping[Mode, Sequence[Tuple[complex, Mode]]],
) -> SparseState:
    """Replace creation operators a+_m by linear images sum_i c_i a+_{m_i}.

    Each occupied quantum of a source mode is replaced in place inside the
    canonical operator string; statistics signs and ladder factors come out
    of the elementary create/annihilate rules.  Image modes must not appear
    among the (remaining) source modes, which holds for beam splitters
    since inputs and outputs live at different locations.
    """
    statistics = state.statistics
    out = []
    for occ, amp in state.terms.items():
        partials: list[Tuple[Occupation, complex]] = [(occ, amp)]
        for mode, images in mapping.items():
            count = dict(occ).get(mode, 0)
            if count == 0:
                continue
            # Remove all `count` quanta of the source mode first, then apply
            # the image sum `count` times.  The 1/count! undoes the ladder
            # factors sqrt(count!) picked up on each side, so the result is
            # the exact operator substitution (a+_m)^count -> (sum c_i a+_i)^count.
            emptied: list[Tuple[Occupation, complex]] = []
            for part_occ, part_amp in partials:
                part_amp /= math.factorial(count)
                stripped: Optional[Tuple[Occupation, complex]] = (part_occ, part_amp)
                for _ in range(count):
                    stripped = _term_annihilate(stripped[0], stripped[1], mode, statistics)
                    if stripped is None:
                        break
                if stripped is not None:
                    emptied.append(stripped)
            partials = emptied
            for _ in range(count):
                grown: list[Tuple[Occupation, complex]] = []
                for part_occ, part_amp in partials:
                    for coeff, image in images:
                        res = _term_create(part_occ, part_amp * coeff, image, statistics)
                        if res is not None:
                            grown.append(res)
                partials = grown
        out.extend(partials)
    return _collect(statistics, out)
