"""Buchberger's algorithm for reduced Groebner bases under graded revlex."""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from typing import Dict, List, Sequence, Tuple

from .poly import Monomial, Polynomial, RingSpec, revlex_key
from .staircase import MonomialIdeal, divides

__all__ = ["GroebnerBasis", "reduce", "s_polynomial", "buchberger", "initial_ideal", "is_groebner"]


@dataclass(frozen=True)
class GroebnerBasis:
    ring: RingSpec
    elements: Tuple[Polynomial, ...]

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)

    def leading_monomials(self) -> List[Monomial]:
        return [g.lm for g in self.elements]


def reduce(p: Polynomial, basis: Sequence[Polynomial]) -> Polynomial:
    """Full normal form of p modulo basis.

    Always rewrites the greatest reducible term, using the first basis
    element (in list order) whose leading monomial divides it.
    """
    ring = p.ring
    for g in basis:
        if g.ring != ring:
            raise ValueError(f"ring mismatch: {g.ring} vs {ring}")
        if g.is_zero():
            raise ValueError("basis contains the zero polynomial")
    F = ring.field
    mod = F.characteristic
    leads = [(g.lm, F.inv(g.lc), g.terms[1:]) for g in basis]

    work: Dict[Monomial, object] = dict(p.terms)
    heap = [(revlex_key(e), e) for e in work]
    heapq.heapify(heap)
    remainder: Dict[Monomial, object] = {}
    while heap:
        _, e = heapq.heappop(heap)
        c = work.pop(e, None)
        if c is None or (c % mod if mod else c) == 0:
            continue
        for lm, inv_lc, tail in leads:
            if divides(lm, e):
                q = c * inv_lc
                shift = tuple(a - b for a, b in zip(e, lm))
                for f, d in tail:
                    t = tuple(a + b for a, b in zip(f, shift))
                    old = work.get(t)
                    if old is None:
                        heapq.heappush(heap, (revlex_key(t), t))
                        old = 0
                    v = old - q * d
                    work[t] = v % mod if mod else v
                break
        else:
            remainder[e] = c
    return Polynomial._from_dict(ring, remainder)


def _lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


def s_polynomial(f: Polynomial, g: Polynomial) -> Polynomial:
    F = f.ring.field
    l = _lcm(f.lm, g.lm)
    a = f.mul_term(tuple(x - y for x, y in zip(l, f.lm)), F.inv(f.lc))
    b = g.mul_term(tuple(x - y for x, y in zip(l, g.lm)), F.inv(g.lc))
    return a - b


def _coprime(a: Monomial, b: Monomial) -> bool:
    return all(x == 0 or y == 0 for x, y in zip(a, b))


def buchberger(gens: Sequence[Polynomial]) -> GroebnerBasis:
    """Reduced Groebner basis of the ideal generated by ``gens``.

    Pairs are taken by smallest lcm degree (ties: revlex of the lcm, then
    indices); the coprime and chain criteria discard useless pairs.
    """
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        raise ValueError("all generators are zero")
    ring = gens[0].ring
    for g in gens:
        if g.ring != ring:
            raise ValueError(f"ring mismatch: {g.ring} vs {ring}")

    G: List[Polynomial] = []
    for g in gens:
        g = g.monic()
        if g not in G:
            G.append(g)

    pending = set()
    queue: list = []

    def add_pair(i: int, j: int):
        l = _lcm(G[i].lm, G[j].lm)
        pending.add((i, j))
        heapq.heappush(queue, (sum(l), revlex_key(l)[1], i, j))

    for j in range(len(G)):
        for i in range(j):
            add_pair(i, j)

    while queue:
        _, _, i, j = heapq.heappop(queue)
        pending.discard((i, j))
        a, b = G[i].lm, G[j].lm
        if _coprime(a, b):
            continue
        l = _lcm(a, b)
        if any(
            k != i and k != j
            and divides(G[k].lm, l)
            and (min(i, k), max(i, k)) not in pending
            and (min(j, k), max(j, k)) not in pending
            for k in range(len(G))
        ):
            continue
        h = reduce(s_polynomial(G[i], G[j]), G)
        if not h.is_zero():
            G.append(h.monic())
            n = len(G) - 1
            for k in range(n):
                add_pair(k, n)

    return _reduced(ring, G)


def _reduced(ring: RingSpec, G: List[Polynomial]) -> GroebnerBasis:
    minimal: List[Polynomial] = []
    for idx, g in enumerate(G):
        redundant = False
        for jdx, h in enumerate(G):
            if jdx == idx or not divides(h.lm, g.lm):
                continue
            # among equal leading monomials keep the first occurrence
            if h.lm != g.lm or jdx < idx:
                redundant = True
                break
        if not redundant:
            minimal.append(g)
    out = []
    for idx, g in enumerate(minimal):
        others = minimal[:idx] + minimal[idx + 1:]
        lead = Polynomial._from_dict(ring, {g.lm: g.lc})
        tail = Polynomial._from_dict(ring, dict(g.terms[1:]))
        out.append((lead + reduce(tail, others)).monic())
    out.sort(key=lambda f: revlex_key(f.lm), reverse=True)
    return GroebnerBasis(ring, tuple(out))


def is_groebner(basis: Sequence[Polynomial]) -> bool:
    """Every S-polynomial reduces to zero against ``basis``."""
    basis = list(basis)
    for j in range(len(basis)):
        for i in range(j):
            if not reduce(s_polynomial(basis[i], basis[j]), basis).is_zero():
                return False
    return True


def initial_ideal(gb: GroebnerBasis) -> MonomialIdeal:
    return MonomialIdeal(gb.leading_monomials(), gb.ring.nvars)
