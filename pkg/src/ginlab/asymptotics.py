"""Asymptotic invariants of generic initial systems.

Volume quotients, the predicted limiting polytope of a complete
intersection, convergence reports, and multiplier ideals of
monomial ideals (finite p and closed form).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial
from typing import Dict, List, NamedTuple, Optional, Sequence, Tuple

from .gin import GinSequence
from .polytope import (
    Facet,
    NewtonPolyhedron,
    _primitive,
    contains_polyhedron,
    newton_polyhedron,
    scale,
)
from .staircase import (
    MonomialIdeal,
    contains_ideal,
    hilbert_function,
    length_artinian,
    pure_powers,
)

__all__ = [
    "CIType",
    "ConvergenceReport",
    "MultiplierResult",
    "predicted_length",
    "predicted_pure_powers",
    "predicted_limiting_polytope",
    "system_volume_estimate",
    "verify_limiting_polytope",
    "multiplier_ideal",
    "asymptotic_multiplier_ideal_empirical",
    "ci_asymptotic_multiplier_ideal",
    "default_degree_bound",
]

PASS, FAIL, SKIP = "pass", "fail", "skip"


@dataclass(frozen=True)
class CIType:
    """Degrees d_1 <= ... <= d_r of a complete intersection in ``ambient`` variables."""

    degrees: Tuple[int, ...]
    ambient: Optional[int] = None

    def __post_init__(self):
        degs = tuple(int(d) for d in self.degrees)
        if not degs:
            raise ValueError("a complete intersection type needs at least one degree")
        if any(d < 1 for d in degs):
            raise ValueError("degrees must be positive")
        if list(degs) != sorted(degs):
            raise ValueError("degrees must be sorted ascending")
        object.__setattr__(self, "degrees", degs)
        amb = len(degs) if self.ambient is None else int(self.ambient)
        if amb < len(degs):
            raise ValueError("ambient variable count must be at least r")
        object.__setattr__(self, "ambient", amb)

    @classmethod
    def parse(cls, text: str, ambient: Optional[int] = None) -> "CIType":
        return cls(tuple(int(x) for x in text.replace(" ", "").split(",") if x), ambient)

    @property
    def r(self) -> int:
        return len(self.degrees)

    @property
    def m(self) -> int:
        return self.ambient

    @property
    def product(self) -> int:
        return math.prod(self.degrees)

    def __str__(self):
        return "(" + ",".join(map(str, self.degrees)) + ")"


def predicted_length(t: CIType, n: int) -> int:
    """length(R/I^n) = C(n+r-1, r) * d_1...d_r for a CI in exactly r variables."""
    if t.m != t.r:
        raise ValueError("length is finite only when the ambient dimension equals r")
    if n < 1:
        raise ValueError("n must be at least 1")
    return comb(n + t.r - 1, t.r) * t.product


def predicted_pure_powers(t: CIType, n: int) -> Tuple[int, int]:
    """(p_1(n), p_r(n)) = (n d_1, d_1 + ... + d_{r-1} + n d_r - r + 1)."""
    d = t.degrees
    return n * d[0], sum(d[:-1]) + n * d[-1] - t.r + 1


def predicted_limiting_polytope(t: CIType) -> List[Facet]:
    """x_i >= 0 and sum_{i<=r} x_i / d_i >= 1; coordinates past r are unconstrained."""
    m, r = t.m, t.r
    main = _primitive([Fraction(1, d) for d in t.degrees] + [Fraction(0)] * (m - r), Fraction(1))
    coords = [
        Facet(tuple(int(i == j) for j in range(m)), Fraction(0))
        for i in range(m)
        if not (r == 1 and i == 0)  # x_1 >= 0 is implied by x_1 >= d_1
    ]
    return coords + [main]


def predicted_polyhedron(t: CIType) -> NewtonPolyhedron:
    """The limiting polytope in the first r coordinates as a Newton polyhedron."""
    r = t.r
    verts = [tuple(d if i == j else 0 for j in range(r)) for i, d in enumerate(t.degrees)]
    return NewtonPolyhedron(verts, r)


def system_volume_estimate(lengths: Sequence[int], r: int) -> List[Fraction]:
    """r! * length(n) / n^r for n = 1, 2, ..."""
    if not lengths:
        raise ValueError("no lengths given")
    return [Fraction(factorial(r) * L, n ** r) for n, L in enumerate(lengths, start=1)]


@dataclass
class ConvergenceRow:
    n: int
    pure_powers: Tuple[Optional[int], ...]
    ratios: Tuple[Optional[Fraction], ...]
    length: Optional[int]
    volume_quotient: Optional[Fraction]
    contained: bool
    checks: Dict[str, Tuple[str, str]] = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "p": list(self.pure_powers),
            "p_over_n": [None if q is None else _fmt(q) for q in self.ratios],
            "length": None if self.length is None else str(self.length),
            "volume_quotient": None if self.volume_quotient is None else _fmt(self.volume_quotient),
            "contained": self.contained,
            "checks": {k: {"status": s, "detail": d} for k, (s, d) in self.checks.items()},
        }


@dataclass
class ConvergenceReport:
    ci_type: CIType
    rows: List[ConvergenceRow]

    @property
    def targets(self) -> dict:
        return {"d": list(self.ci_type.degrees), "volume": self.ci_type.product}

    def failures(self) -> List[Tuple[int, str, str]]:
        return [(row.n, k, d) for row in self.rows for k, (s, d) in row.checks.items() if s == FAIL]

    @property
    def passed(self) -> bool:
        return not self.failures()

    def to_json(self) -> dict:
        return {"targets": self.targets, "rows": [r.to_json() for r in self.rows]}


def _fmt(q: Fraction) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _status(ok: bool) -> str:
    return PASS if ok else FAIL


def verify_limiting_polytope(seq: GinSequence, t: CIType) -> ConvergenceReport:
    """Compare every computed gin(I^n) with the exact predictions for a CI of type t."""
    r = t.r
    rows: List[ConvergenceRow] = []
    scaled: Dict[int, NewtonPolyhedron] = {}
    for n in sorted(seq.entries):
        J, cert = seq.entries[n]
        checks: Dict[str, Tuple[str, str]] = {}
        checks["certified"] = (_status(cert.accepted), f"seeds {list(cert.seeds_used)}")
        pp = pure_powers(J)
        exp1, expr = predicted_pure_powers(t, n)
        first = pp[:r]
        checks["p1"] = (_status(pp[0] == exp1), f"p_1={pp[0]}, expected {exp1}")
        checks["pr"] = (_status(pp[r - 1] == expr), f"p_r={pp[r - 1]}, expected {expr}")
        mono = all(p is not None for p in first) and all(a <= b for a, b in zip(first, first[1:]))
        checks["monotone"] = (_status(mono), f"p={list(first)}")
        support_ok = all(not any(g[r:]) for g in J.gens)
        checks["support"] = (_status(support_ok), f"generators confined to x1..x{r}")

        length = vq = None
        if support_ok and all(p is not None for p in first):
            Jr = J.restrict(r)
            length = length_artinian(Jr)
            vq = Fraction(factorial(r) * length, n ** r)
            exp_len = predicted_length(CIType(t.degrees), n)
            checks["length"] = (_status(length == exp_len), f"length={length}, expected {exp_len}")
        else:
            checks["length"] = (FAIL, "not zero-dimensional in the first r variables")

        # sum_i J_i / d_i >= n for every generator
        bad = [g for g in J.gens if sum(Fraction(g[i], t.degrees[i]) for i in range(r)) < n]
        contained = not bad and support_ok
        checks["in_limit_polytope"] = (_status(contained), f"violating generators {bad}" if bad else "")
        ratios = tuple(None if p is None else Fraction(p, n) for p in first)
        if support_ok:
            scaled[n] = scale(newton_polyhedron(J.restrict(r)), Fraction(1, n))
        rows.append(ConvergenceRow(n, pp, ratios, length, vq, contained, checks))

    for row in rows:
        n = row.n
        if n in scaled and n + 1 in scaled:
            ok = contains_polyhedron(scaled[n], scaled[n + 1])
            row.checks["nested"] = (_status(ok), f"(1/{n})P_{n} in (1/{n + 1})P_{n + 1}")
        else:
            row.checks["nested"] = (SKIP, "no successor entry")
    return ConvergenceReport(t, rows)


# -- multiplier ideals ---------------------------------------------------------

class MultiplierResult(NamedTuple):
    ideal: MonomialIdeal
    complete: bool


def default_degree_bound(t: CIType) -> int:
    return 2 * max(t.degrees) * (t.r + 1)


def _lattice(m: int, bound: int):
    if m == 0:
        yield ()
        return
    for d in range(bound + 1):
        for bars in itertools.combinations(range(d + m - 1), m - 1):
            prev, e = -1, []
            for b in bars:
                e.append(b - prev - 1)
                prev = b
            e.append(d + m - 2 - prev)
            yield tuple(e)


def _enumerate(m: int, bound: int, member, relevant: Sequence[int], degree_cap: int) -> MultiplierResult:
    """Minimal generators of {lambda : member(lambda)} up to total degree ``bound``.

    ``degree_cap`` is an a priori bound on the degree of any minimal
    generator. The result is also complete when the found ideal, restricted
    to the relevant variables, already contains every monomial of degree
    bound + 1.
    """
    found = []
    rel = list(relevant)
    k = len(rel)
    for lam in _lattice(k, bound):
        full = [0] * m
        for i, x in zip(rel, lam):
            full[i] = x
        if member(tuple(full)):
            found.append(tuple(full))
    if not found:
        raise ValueError(f"degree bound {bound} too small: no monomial of the multiplier ideal found")
    J = MonomialIdeal(found, m)
    restricted = MonomialIdeal((tuple(g[i] for i in rel) for g in J.gens), k)
    complete = bound >= degree_cap or k == 0 or hilbert_function(restricted, bound + 1)[-1] == 0
    return MultiplierResult(J, complete)


def multiplier_ideal(J: MonomialIdeal, c, degree_bound: int) -> MultiplierResult:
    """Monomials x^lambda with lambda + 1 in the interior of c * P_J."""
    c = Fraction(c)
    if c <= 0:
        raise ValueError("c must be positive")
    P = scale(newton_polyhedron(J), c)
    m = J.nvars
    noncoord = [f for f in P.facets if not f.is_coordinate]
    relevant = [i for i in range(m) if any(f.normal[i] for f in noncoord)]
    # lambda + 1 >= 1 makes the coordinate facets strict automatically
    member = lambda lam: all(f.satisfied([x + 1 for x in lam], strict=True) for f in noncoord)
    # lowering lambda_i in a minimal generator breaks a facet with a_i > 0, so a_i lambda_i <= rhs
    cap = sum(math.floor(max(f.rhs / f.normal[i] for f in noncoord if f.normal[i])) for i in relevant)
    return _enumerate(m, degree_bound, member, relevant, cap)


def asymptotic_multiplier_ideal_empirical(seq: GinSequence, c, p: int, degree_bound: int):
    """J((c/p) * gin(I^p)), plus whether p and 2p agree (None if 2p is missing)."""
    if p not in seq.entries:
        raise KeyError(f"gin sequence has no entry for p={p}")
    c = Fraction(c)
    res = multiplier_ideal(seq[p], c / p, degree_bound)
    stabilized = None
    if 2 * p in seq.entries:
        stabilized = res.ideal == multiplier_ideal(seq[2 * p], c / (2 * p), degree_bound).ideal
    return res, stabilized


def ci_asymptotic_multiplier_ideal(t: CIType, c, degree_bound: Optional[int] = None) -> MultiplierResult:
    """Closed form: x^lambda with sum_{i<=r} (lambda_i + 1) / d_i > c."""
    c = Fraction(c)
    if degree_bound is None:
        degree_bound = default_degree_bound(t)
    d = t.degrees
    member = lambda lam: sum(Fraction(lam[i] + 1, d[i]) for i in range(t.r)) > c
    cap = sum(math.floor(c * di) for di in d)
    return _enumerate(t.m, degree_bound, member, range(t.r), cap)
