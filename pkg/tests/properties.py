"""Randomized property checks shared by the unit and acceptance suites.

Each checker draws `cases` random instances from a seeded generator and
asserts the property on every one, so runs are reproducible.
"""

from __future__ import annotations

import cmath
import math

import numpy as np

from statconc.fock import (
    Location,
    Mode,
    Pair,
    Party,
    SparseState,
    Spin,
    Statistics,
    create,
    from_modes,
    inner_product,
    normalize,
    scale_add,
)
from statconc.optics import beam_splitter, flip_spins, measure_path
from statconc.protocol import ProtocolConfig, run_protocol

ATOL = 1e-12

#: Bob's two input arms of slot 1, both spins: the beam-splitter playground.
SOURCE_POOL = [
    Mode(Party.BOB, pair, 1, Location.SOURCE_ARM, spin)
    for pair in Pair
    for spin in Spin
]

#: Mixed pool over both parties and two slots, for pure algebra checks.
ALGEBRA_POOL = [
    Mode(party, pair, slot, Location.SOURCE_ARM, spin)
    for party in Party
    for pair in Pair
    for slot in (1, 2)
    for spin in Spin
]


def random_amplitude(rng: np.random.Generator) -> complex:
    return complex(rng.normal(), rng.normal())


def random_state(
    rng: np.random.Generator,
    statistics: Statistics,
    pool,
    particles: int,
    max_terms: int = 4,
) -> SparseState:
    """Normalized random superposition with a fixed particle number."""
    while True:
        pieces = []
        for _ in range(int(rng.integers(1, max_terms + 1))):
            replace = statistics is Statistics.BOSON
            idx = rng.choice(len(pool), size=particles, replace=replace)
            term = from_modes(statistics, [pool[i] for i in idx], random_amplitude(rng))
            if not term.is_zero:
                pieces.append((1.0 + 0.0j, term))
        if not pieces:
            continue
        combined = scale_add(pieces)
        if combined.is_zero:
            continue
        state, _ = normalize(combined)
        return state


def states_allclose(a: SparseState, b: SparseState, atol: float = ATOL) -> bool:
    keys = set(a.terms) | set(b.terms)
    return all(abs(a.terms.get(k, 0.0) - b.terms.get(k, 0.0)) <= atol for k in keys)


def check_fermionic_antisymmetry(rng: np.random.Generator, cases: int) -> None:
    for _ in range(cases):
        psi = random_state(rng, Statistics.FERMION, ALGEBRA_POOL, particles=2)
        i, j = rng.choice(len(ALGEBRA_POOL), size=2, replace=False)
        m1, m2 = ALGEBRA_POOL[i], ALGEBRA_POOL[j]
        forward = create(create(psi, m1), m2)
        backward = create(create(psi, m2), m1)
        flipped = scale_add([(-1.0 + 0.0j, backward)])
        assert states_allclose(forward, flipped)


def check_bosonic_symmetry(rng: np.random.Generator, cases: int) -> None:
    for _ in range(cases):
        psi = random_state(rng, Statistics.BOSON, ALGEBRA_POOL, particles=2)
        i, j = rng.choice(len(ALGEBRA_POOL), size=2, replace=False)
        m1, m2 = ALGEBRA_POOL[i], ALGEBRA_POOL[j]
        assert states_allclose(create(create(psi, m1), m2), create(create(psi, m2), m1))


def check_pauli_exclusion(rng: np.random.Generator, cases: int) -> None:
    for _ in range(cases):
        psi = random_state(rng, Statistics.FERMION, ALGEBRA_POOL, particles=2)
        mode = ALGEBRA_POOL[int(rng.integers(len(ALGEBRA_POOL)))]
        assert create(create(psi, mode), mode).is_zero


def check_boson_ladder_factors(rng: np.random.Generator, cases: int) -> None:
    from statconc.fock import vacuum

    for _ in range(cases):
        mode = ALGEBRA_POOL[int(rng.integers(len(ALGEBRA_POOL)))]
        k = int(rng.integers(1, 5))
        state = vacuum(Statistics.BOSON)
        for _ in range(k):
            state = create(state, mode)
        (occ, amp), = state.terms.items()
        assert occ == ((mode, k),)
        assert abs(amp - math.sqrt(math.factorial(k))) <= ATOL


def check_flip_unitarity(rng: np.random.Generator, cases: int) -> None:
    for _ in range(cases):
        stats = Statistics.FERMION if rng.integers(2) else Statistics.BOSON
        a = random_state(rng, stats, SOURCE_POOL, particles=2)
        b = random_state(rng, stats, SOURCE_POOL, particles=2)
        before = inner_product(a, b)
        after = inner_product(flip_spins(a, {1}), flip_spins(b, {1}))
        assert abs(before - after) <= ATOL


def check_beam_splitter_unitarity(rng: np.random.Generator, cases: int) -> None:
    for _ in range(cases):
        stats = Statistics.FERMION if rng.integers(2) else Statistics.BOSON
        a = random_state(rng, stats, SOURCE_POOL, particles=2)
        b = random_state(rng, stats, SOURCE_POOL, particles=2)
        before = inner_product(a, b)
        after = inner_product(beam_splitter(a, 1), beam_splitter(b, 1))
        assert abs(before - after) <= ATOL


def check_outcome_completeness(rng: np.random.Generator, cases: int) -> None:
    for _ in range(cases):
        stats = Statistics.FERMION if rng.integers(2) else Statistics.BOSON
        state = beam_splitter(random_state(rng, stats, SOURCE_POOL, particles=2), 1)
        probabilities = [res.probability for res in measure_path(state, 1)]
        assert abs(sum(probabilities) - 1.0) <= ATOL


def random_one_per_arm_state(
    rng: np.random.Generator, statistics: Statistics
) -> SparseState:
    """Random superposition with exactly one particle in each input arm.

    This is the class of states the protocol feeds into the beam splitter.
    The two conventions differ by arm-local phase rotations, so outcome
    probabilities agree on this class (but not for states mixing arm
    occupancies, where the input phases are no longer global).
    """
    pieces = []
    for left_spin in Spin:
        for right_spin in Spin:
            modes = [
                Mode(Party.BOB, Pair.LEFT, 1, Location.SOURCE_ARM, left_spin),
                Mode(Party.BOB, Pair.RIGHT, 1, Location.SOURCE_ARM, right_spin),
            ]
            pieces.append((1.0 + 0.0j, from_modes(statistics, modes, random_amplitude(rng))))
    state, _ = normalize(scale_add(pieces))
    return state


def check_phase_convention_independence(rng: np.random.Generator, cases: int) -> None:
    for _ in range(cases):
        stats = Statistics.FERMION if rng.integers(2) else Statistics.BOSON
        state = random_one_per_arm_state(rng, stats)
        real = {
            res.outcome.kind: res.probability
            for res in measure_path(beam_splitter(state, 1, "real"), 1)
        }
        symmetric = {
            res.outcome.kind: res.probability
            for res in measure_path(beam_splitter(state, 1, "symmetric"), 1)
        }
        for kind in set(real) | set(symmetric):
            assert abs(real.get(kind, 0.0) - symmetric.get(kind, 0.0)) <= ATOL


def _random_config(rng: np.random.Generator, **overrides) -> ProtocolConfig:
    a2 = float(rng.uniform(0.05, 0.95))
    phase = float(rng.uniform(0.0, 2.0 * math.pi))
    defaults = dict(
        alpha=math.sqrt(a2) * cmath.exp(1j * phase),
        beta=complex(math.sqrt(1.0 - a2)),
        n=int(rng.integers(1, 4)),
        statistics=Statistics.FERMION if rng.integers(2) else Statistics.BOSON,
    )
    defaults.update(overrides)
    return ProtocolConfig(**defaults)


def check_global_phase_invariance(rng: np.random.Generator, cases: int) -> None:
    for _ in range(cases):
        config = _random_config(rng)
        rotated = ProtocolConfig(
            alpha=config.alpha * cmath.exp(1j * float(rng.uniform(0, 2 * math.pi))),
            beta=config.beta * cmath.exp(1j * float(rng.uniform(0, 2 * math.pi))),
            n=config.n,
            statistics=config.statistics,
        )
        base = run_protocol(config)
        spun = run_protocol(rotated)
        assert abs(base.cumulative_probability - spun.cumulative_probability) <= ATOL
        assert abs(base.final_entropy_ebits - spun.final_entropy_ebits) <= 1e-9


def check_slot_permutation_invariance(rng: np.random.Generator, cases: int) -> None:
    for _ in range(cases):
        config = _random_config(rng, n=3)
        order = [int(s) for s in rng.permutation([1, 2, 3])]
        base = run_protocol(config)
        shuffled = run_protocol(config, slot_order=order)
        assert abs(base.cumulative_probability - shuffled.cumulative_probability) <= ATOL
        assert abs(base.final_entropy_ebits - shuffled.final_entropy_ebits) <= 1e-9
