"""Combinatorics of monomial ideals given by exponent vectors.

Everything here works on plain tuples of nonnegative ints; a monomial ideal
is stored through its minimal generators, sorted by degree and, within a
degree, from the revlex-greatest down: (x1^2, x1*x2, x2^3).
"""

from __future__ import annotations

import itertools
from functools import lru_cache
from math import comb
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .poly import Monomial, revlex_key

__all__ = [
    "MonomialIdeal",
    "minimalize",
    "contains",
    "contains_ideal",
    "is_strongly_stable",
    "pure_powers",
    "length_artinian",
    "hilbert_function",
    "hilbert_function_recursive",
    "dim_depth",
    "ek_betti",
    "NotStronglyStable",
]


class NotStronglyStable(ValueError):
    pass


def divides(a: Sequence[int], b: Sequence[int]) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _lcm(a: Sequence[int], b: Sequence[int]) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


def _canonical(gens: Iterable[Monomial]) -> Tuple[Monomial, ...]:
    return tuple(sorted(gens, key=lambda e: (sum(e), revlex_key(e))))


class MonomialIdeal:
    """Monomial ideal in ``nvars`` variables, stored by its minimal generators."""

    __slots__ = ("nvars", "gens")

    def __init__(self, gens: Iterable[Sequence[int]], nvars: int):
        vecs = []
        for g in gens:
            g = tuple(int(x) for x in g)
            if len(g) != nvars:
                raise ValueError(f"exponent vector {g} has length {len(g)}, expected {nvars}")
            if any(x < 0 for x in g):
                raise ValueError(f"negative exponent in {g}")
            vecs.append(g)
        # sorting by degree first lets one pass drop every non-minimal vector
        vecs = sorted(set(vecs), key=lambda e: (sum(e), e))
        kept: List[Monomial] = []
        for e in vecs:
            if not any(divides(k, e) for k in kept):
                kept.append(e)
        object.__setattr__(self, "nvars", nvars)
        object.__setattr__(self, "gens", _canonical(kept))

    def __setattr__(self, *args):
        raise AttributeError("MonomialIdeal is immutable")

    @classmethod
    def zero(cls, nvars: int) -> "MonomialIdeal":
        return cls((), nvars)

    @classmethod
    def maximal(cls, nvars: int) -> "MonomialIdeal":
        return cls([tuple(int(i == j) for j in range(nvars)) for i in range(nvars)], nvars)

    @classmethod
    def power_of_maximal(cls, nvars: int, d: int) -> "MonomialIdeal":
        return cls(_monomials_of_degree(nvars, d), nvars)

    def __contains__(self, e) -> bool:
        return contains(self, e)

    def __eq__(self, other):
        if not isinstance(other, MonomialIdeal):
            return NotImplemented
        return self.nvars == other.nvars and self.gens == other.gens

    def __hash__(self):
        return hash((self.nvars, self.gens))

    def __len__(self):
        return len(self.gens)

    def __iter__(self):
        return iter(self.gens)

    def __mul__(self, other: "MonomialIdeal") -> "MonomialIdeal":
        if other.nvars != self.nvars:
            raise ValueError("variable count mismatch")
        return MonomialIdeal(
            (tuple(a + b for a, b in zip(u, v)) for u in self.gens for v in other.gens), self.nvars
        )

    def is_zero(self) -> bool:
        return not self.gens

    def max_degree(self) -> int:
        return max((sum(g) for g in self.gens), default=0)

    def restrict(self, k: int) -> "MonomialIdeal":
        """Drop the trailing variables; only valid if no generator uses them."""
        if any(any(g[k:]) for g in self.gens):
            raise ValueError(f"generators involve variables beyond x{k}")
        return MonomialIdeal((g[:k] for g in self.gens), k)

    def pad(self, m: int) -> "MonomialIdeal":
        return MonomialIdeal((g + (0,) * (m - self.nvars) for g in self.gens), m)

    def to_json(self) -> dict:
        return {"nvars": self.nvars, "generators": [list(g) for g in self.gens]}

    @classmethod
    def from_json(cls, data: dict) -> "MonomialIdeal":
        return cls((tuple(g) for g in data["generators"]), data["nvars"])

    def to_string(self, names: Optional[Sequence[str]] = None) -> str:
        names = names or [f"x{i + 1}" for i in range(self.nvars)]
        if not self.gens:
            return "(0)"
        parts = []
        for g in self.gens:
            fs = [n if k == 1 else f"{n}^{k}" for n, k in zip(names, g) if k]
            parts.append("*".join(fs) or "1")
        return "(" + ", ".join(parts) + ")"

    def __repr__(self):
        return f"MonomialIdeal{self.to_string()}"


def minimalize(gens: Iterable[Sequence[int]], m: int) -> MonomialIdeal:
    return MonomialIdeal(gens, m)


def contains(J: MonomialIdeal, e: Sequence[int]) -> bool:
    if len(e) != J.nvars:
        raise ValueError(f"exponent vector of length {len(e)} in {J.nvars} variables")
    return any(divides(g, e) for g in J.gens)


def contains_ideal(A: MonomialIdeal, B: MonomialIdeal) -> bool:
    """True iff A is a subset of B."""
    if A.nvars != B.nvars:
        raise ValueError("variable count mismatch")
    return all(contains(B, g) for g in A.gens)


def is_strongly_stable(J: MonomialIdeal) -> bool:
    """Check x_j * u / x_i in J for all generators u, x_i | u and j < i."""
    for e in J.gens:
        for i, ei in enumerate(e):
            if not ei:
                continue
            for j in range(i):
                f = list(e)
                f[i] -= 1
                f[j] += 1
                if not contains(J, f):
                    return False
    return True


def pure_powers(J: MonomialIdeal) -> Tuple[Optional[int], ...]:
    """Least t with x_i^t in J for each variable, None where there is none."""
    out: List[Optional[int]] = [None] * J.nvars
    for g in J.gens:
        support = [i for i, x in enumerate(g) if x]
        if len(support) == 1:
            i = support[0]
            out[i] = g[i]
        elif not support:
            return (0,) * J.nvars
    return tuple(out)


def length_artinian(J: MonomialIdeal) -> int:
    """Number of standard monomials of a zero-dimensional monomial ideal."""
    pp = pure_powers(J)
    missing = [i for i, p in enumerate(pp) if p is None]
    if missing:
        raise ValueError(f"ideal is not zero-dimensional: no pure power of x{missing[0] + 1}")
    count = 0
    for e in itertools.product(*(range(p) for p in pp)):
        if not contains(J, e):
            count += 1
    return count


def _monomials_of_degree(m: int, d: int) -> List[Monomial]:
    out = []
    for bars in itertools.combinations(range(d + m - 1), m - 1):
        prev = -1
        e = []
        for b in bars:
            e.append(b - prev - 1)
            prev = b
        e.append(d + m - 2 - prev)
        out.append(tuple(e))
    return out


def _free_count(d: int, m: int) -> int:
    """Number of monomials of degree d in m variables."""
    if d < 0:
        return 0
    if m == 0:
        return int(d == 0)
    return comb(d + m - 1, m - 1)


def _lcm_signs(gens: Sequence[Monomial]) -> Dict[Monomial, int]:
    """Inclusion-exclusion coefficients: sum over subsets S of (-1)^|S| at lcm(S), merged."""
    acc: Dict[Monomial, int] = {tuple(0 for _ in gens[0]) if gens else (): 1}
    for g in gens:
        new = dict(acc)
        for e, c in acc.items():
            l = _lcm(e, g)
            new[l] = new.get(l, 0) - c
        acc = {e: c for e, c in new.items() if c}
    return acc


IE_GENERATOR_CAP = 20


def hilbert_function(J: MonomialIdeal, d_max: int) -> List[int]:
    """HF(R/J, d) for d = 0..d_max.

    Inclusion-exclusion over lcms of generator subsets for up to
    ``IE_GENERATOR_CAP`` generators, the last-variable recursion beyond.
    """
    m = J.nvars
    if len(J.gens) > IE_GENERATOR_CAP:
        return hilbert_function_recursive(J, d_max)
    if not J.gens:
        return [_free_count(d, m) for d in range(d_max + 1)]
    signs = _lcm_signs(J.gens)
    return [sum(c * _free_count(d - sum(e), m) for e, c in signs.items()) for d in range(d_max + 1)]


def hilbert_function_recursive(J: MonomialIdeal, d_max: int) -> List[int]:
    """HF(R/J, d) by splitting on the last variable.

    Standard monomials free of x_m are those of J|_{x_m=0}; the others are
    x_m times a standard monomial of (J : x_m) one degree lower.
    """

    @lru_cache(maxsize=None)
    def hf(gens: Tuple[Monomial, ...], m: int, d: int) -> int:
        if d < 0:
            return 0
        if any(not any(g) for g in gens):
            return 0
        if m == 0:
            return int(d == 0)
        if not gens:
            return _free_count(d, m)
        without = tuple(g[:-1] for g in gens if g[-1] == 0)
        colon = MonomialIdeal((g[:-1] + (max(g[-1] - 1, 0),) for g in gens), m).gens
        return hf(MonomialIdeal(without, m - 1).gens, m - 1, d) + hf(colon, m, d - 1)

    return [hf(J.gens, J.nvars, d) for d in range(d_max + 1)]


def _require_stable(J: MonomialIdeal):
    if not is_strongly_stable(J):
        raise NotStronglyStable(f"{J} is not strongly stable")


def dim_depth(J: MonomialIdeal) -> Tuple[int, int]:
    """(dim R/J, depth R/J) for a strongly stable J via the D/M invariants."""
    _require_stable(J)
    m = J.nvars
    pp = pure_powers(J)
    D = max((i + 1 for i, p in enumerate(pp) if p is not None), default=0)
    M = max((max(i + 1 for i, x in enumerate(g) if x) for g in J.gens if any(g)), default=0)
    if any(not any(g) for g in J.gens):
        # unit ideal: R/J = 0
        D = M = m
    return m - D, m - M


def ek_betti(J: MonomialIdeal) -> Dict[Tuple[int, int], int]:
    """Graded Betti numbers of a strongly stable ideal (Eliahou-Kervaire).

    Each minimal generator u with largest variable index k contributes
    C(k-1, i) to beta_{i, i+deg u}.
    """
    _require_stable(J)
    table: Dict[Tuple[int, int], int] = {}
    for u in J.gens:
        k = max((i + 1 for i, x in enumerate(u) if x), default=1)
        d = sum(u)
        for i in range(k):
            b = comb(k - 1, i)
            if b:
                table[(i, i + d)] = table.get((i, i + d), 0) + b
    return dict(sorted(table.items()))
