"""Generic initial ideals by random coordinate changes.

A gin is accepted only when two independently sampled coordinate changes
give the same initial ideal and that ideal is strongly stable; the
certificate keeps the seeds so any result can be recomputed.
"""

from __future__ import annotations

import hashlib
import logging
import random
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from . import _linalg
from .groebner import buchberger, initial_ideal
from .poly import CoordinateChange, Polynomial, RingSpec, apply_change, ideal_power
from .staircase import MonomialIdeal, contains_ideal, is_strongly_stable

log = logging.getLogger(__name__)

DEFAULT_HEIGHT = 1000
DEFAULT_ROUNDS = 3

__all__ = [
    "GinCertificate",
    "GinSequence",
    "GinError",
    "sample_change",
    "gin",
    "gin_sequence",
    "initial_ideal_of",
    "derive_seed",
]


class GinError(RuntimeError):
    """Sampled coordinate changes never agreed on a strongly stable initial ideal."""


@dataclass(frozen=True)
class GinCertificate:
    seeds_used: Tuple[int, ...]
    samples_agreed: bool
    borel_verified: bool
    field_used: str
    height: int = DEFAULT_HEIGHT

    @property
    def accepted(self) -> bool:
        return self.samples_agreed and self.borel_verified

    def to_json(self) -> dict:
        return {
            "seeds_used": list(self.seeds_used),
            "samples_agreed": self.samples_agreed,
            "borel_verified": self.borel_verified,
            "field": self.field_used,
            "height": self.height,
        }

    @classmethod
    def from_json(cls, data: dict) -> "GinCertificate":
        return cls(
            tuple(data["seeds_used"]),
            data["samples_agreed"],
            data["borel_verified"],
            data["field"],
            data.get("height", DEFAULT_HEIGHT),
        )


@dataclass
class GinSequence:
    """The computed part n = 1..n_max of the generic initial system of an ideal."""

    ideal_spec: List[Polynomial]
    entries: Dict[int, Tuple[MonomialIdeal, GinCertificate]] = field(default_factory=dict)
    containment: Dict[Tuple[int, int], bool] = field(default_factory=dict)

    def __getitem__(self, n: int) -> MonomialIdeal:
        return self.entries[n][0]

    def __contains__(self, n: int) -> bool:
        return n in self.entries

    @property
    def n_max(self) -> int:
        return max(self.entries, default=0)

    def is_graded_system(self) -> bool:
        return all(self.containment.values())

    def check_containment(self) -> Dict[Tuple[int, int], bool]:
        """Record gin(I^i) * gin(I^j) inside gin(I^(i+j)) for every available pair."""
        ns = sorted(self.entries)
        for i in ns:
            for j in ns:
                if j < i or i + j not in self.entries:
                    continue
                self.containment[(i, j)] = contains_ideal(self[i] * self[j], self[i + j])
        return self.containment


def derive_seed(seed: int, *tags) -> int:
    """Stable 63-bit seed derived from an integer seed and tags."""
    text = ":".join(str(t) for t in (seed,) + tags)
    return int.from_bytes(hashlib.sha256(text.encode()).digest()[:8], "big") >> 1


def sample_change(ring: RingSpec, seed: int, height: int = DEFAULT_HEIGHT) -> CoordinateChange:
    """Dense random matrix with entries in [-height, height], invertible over the ring's field."""
    rng = random.Random(seed)
    m = ring.nvars
    p = ring.field.characteristic
    for _ in range(100):
        rows = [[rng.randint(-height, height) for _ in range(m)] for _ in range(m)]
        reduced = [[ring.field(x) for x in r] for r in rows]
        if _linalg.det(reduced, p) != 0:
            return CoordinateChange(ring, tuple(tuple(r) for r in rows))
    raise GinError(f"no invertible matrix after 100 draws (seed {seed})")


def _check_input(gens: Sequence[Polynomial]) -> RingSpec:
    gens = list(gens)
    if not gens:
        raise ValueError("no generators")
    ring = gens[0].ring
    for g in gens:
        if g.ring != ring:
            raise ValueError("generators live in different rings")
        if g.is_zero():
            raise ValueError("generators must be nonzero")
        if not g.is_homogeneous():
            raise ValueError(f"generator {g} is not homogeneous")
    return ring


def initial_ideal_of(gens: Sequence[Polynomial], power: int = 1,
                     change: Optional[CoordinateChange] = None) -> MonomialIdeal:
    """In(g(I^power)); the identity change when ``change`` is None."""
    ring = _check_input(gens)
    if change is not None:
        gens = [apply_change(change, f) for f in gens]
    # g is a ring map, so g(I^n) is generated by products of the g(f_i)
    if power > 1:
        gens = ideal_power(gens, power)
    return initial_ideal(buchberger(gens))


def gin(gens: Sequence[Polynomial], seed: int, *, power: int = 1,
        height: int = DEFAULT_HEIGHT, rounds: int = DEFAULT_ROUNDS) -> Tuple[MonomialIdeal, GinCertificate]:
    """gin(I^power) for I = (gens), certified by two agreeing samples."""
    ring = _check_input(gens)
    if power < 1:
        raise ValueError("power must be at least 1")
    rng = random.Random(seed)
    seeds: List[int] = []
    history = []
    for _ in range(rounds):
        s1, s2 = rng.getrandbits(63), rng.getrandbits(63)
        seeds += [s1, s2]
        J1 = initial_ideal_of(gens, power, sample_change(ring, s1, height))
        J2 = initial_ideal_of(gens, power, sample_change(ring, s2, height))
        agreed = J1 == J2
        stable = agreed and is_strongly_stable(J1)
        if agreed and stable:
            return J1, GinCertificate(tuple(seeds), True, True, ring.field.name, height)
        log.warning("gin sample disagreement (seeds %d, %d); resampling", s1, s2)
        history.append((J1, J2))
    details = []
    for J1, J2 in history:
        diff = sorted(set(J1.gens) ^ set(J2.gens))
        details.append(f"{J1} vs {J2}; differing generators {diff}" if diff else f"{J1} not strongly stable")
    raise GinError(f"no certified gin after {rounds} rounds: " + " | ".join(details))


def gin_sequence(gens: Sequence[Polynomial], n_max: int, seed: int, *,
                 height: int = DEFAULT_HEIGHT, cache=None) -> GinSequence:
    """gin(I^n) for n = 1..n_max with graded-system containment recorded.

    ``cache`` may be any object with ``get(gens, n, seed, height)`` and
    ``put(gens, n, seed, height, ideal, certificate)``.
    """
    if n_max < 1:
        raise ValueError("n_max must be at least 1")
    gens = list(gens)
    _check_input(gens)
    seq = GinSequence(gens)
    for n in range(1, n_max + 1):
        s = derive_seed(seed, n)
        hit = cache.get(gens, n, s, height) if cache is not None else None
        if hit is None:
            hit = gin(gens, s, power=n, height=height)
            if cache is not None:
                cache.put(gens, n, s, height, *hit)
        seq.entries[n] = hit
    seq.check_containment()
    return seq
