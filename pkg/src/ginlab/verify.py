"""End-to-end checks of the limiting-polytope theory on concrete complete intersections."""

from __future__ import annotations

import itertools
import logging
import random
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from .asymptotics import (
    FAIL,
    PASS,
    SKIP,
    CIType,
    ConvergenceReport,
    asymptotic_multiplier_ideal_empirical,
    ci_asymptotic_multiplier_ideal,
    default_degree_bound,
    verify_limiting_polytope,
)
from .gin import DEFAULT_HEIGHT, GinSequence, derive_seed, gin, gin_sequence, initial_ideal_of
from .poly import QQ, Field, Polynomial, RingSpec
from .staircase import (
    MonomialIdeal,
    contains_ideal,
    dim_depth,
    ek_betti,
    hilbert_function,
    is_strongly_stable,
    pure_powers,
)

log = logging.getLogger(__name__)

DEFAULT_FIELD = Field(32003)
DEFAULT_NMAX = 4
DEFAULT_REPLICATE = 2

__all__ = [
    "IdealSpec",
    "VerificationReport",
    "make_ci",
    "verify_ci",
    "verify_embedding_reduction",
    "DEFAULT_FIELD",
]


@dataclass(frozen=True)
class IdealSpec:
    ring: RingSpec
    generators: Tuple[Polynomial, ...]
    declared_type: Optional[CIType] = None

    def __post_init__(self):
        gens = tuple(self.generators)
        object.__setattr__(self, "generators", gens)
        if not gens:
            raise ValueError("an ideal spec needs generators")
        for g in gens:
            if g.ring != self.ring:
                raise ValueError(f"generator {g} is not in {self.ring}")
            if g.is_zero():
                raise ValueError("zero generator")
            if not g.is_homogeneous():
                raise ValueError(f"generator {g} is not homogeneous")

    def degrees(self) -> List[int]:
        return sorted(g.degree() for g in self.generators)

    def over(self, F: Field) -> "IdealSpec":
        """Same generators over another field (symmetric lift from F_p to Q)."""
        ring = self.ring.with_field(F)
        src = self.ring.field
        gens = tuple(Polynomial(ring, [(e, src.lift(c)) for e, c in g.terms]) for g in self.generators)
        return IdealSpec(ring, gens, self.declared_type)

    def to_json(self) -> dict:
        return {
            "ring": str(self.ring),
            "generators": [str(g) for g in self.generators],
            "type": None if self.declared_type is None else list(self.declared_type.degrees),
        }


def _random_form(ring: RingSpec, degree: int, rng: random.Random, height: int) -> Polynomial:
    m = ring.nvars
    terms = []
    for bars in itertools.combinations(range(degree + m - 1), m - 1):
        prev, e = -1, []
        for b in bars:
            e.append(b - prev - 1)
            prev = b
        e.append(degree + m - 2 - prev)
        terms.append((tuple(e), rng.randint(-height, height)))
    return Polynomial(ring, terms)


def make_ci(t: CIType, style: str = "generic", seed: int = 0, field: Field = QQ,
            height: int = DEFAULT_HEIGHT, attempts: int = 3) -> IdealSpec:
    """A complete intersection of type t in t.m variables.

    ``diagonal`` gives (x_1^d_1, ..., x_r^d_r); ``generic`` gives dense
    random forms with coefficients in [-height, height]. Regularity is
    certified by dim R/gin(I) = m - r.
    """
    ring = RingSpec.standard(t.m, field)
    for attempt in range(attempts):
        if style == "diagonal":
            gens = [
                Polynomial.monomial(ring, tuple(d if j == i else 0 for j in range(t.m)))
                for i, d in enumerate(t.degrees)
            ]
        elif style == "generic":
            rng = random.Random(derive_seed(seed, "form", attempt))
            gens = [_random_form(ring, d, rng, height) for d in t.degrees]
        else:
            raise ValueError(f"unknown style {style!r}")
        spec = IdealSpec(ring, tuple(gens), t)
        J, _ = gin(spec.generators, derive_seed(seed, "certify", attempt))
        if dim_depth(J)[0] == t.m - t.r:
            return spec
        log.warning("type %s sample %d is not a regular sequence; resampling", t, attempt)
        if style == "diagonal":
            break
    raise RuntimeError(f"could not certify a complete intersection of type {t}")


@dataclass
class VerificationReport:
    spec: IdealSpec
    field: str
    convergence: ConvergenceReport
    entries_extra: Dict[int, Dict[str, Tuple[str, str]]]
    betti: Dict[int, Dict[str, object]]
    multiplier: Dict[str, object]
    replication: Dict[int, Tuple[str, str]]
    checks: Dict[str, Tuple[str, str]] = field(default_factory=dict)

    def all_checks(self):
        for row in self.convergence.rows:
            yield from ((row.n, k, s) for k, (s, _) in row.checks.items())
            yield from ((row.n, k, s) for k, (s, _) in self.entries_extra.get(row.n, {}).items())
        for n, (s, _) in self.replication.items():
            yield (n, "field_replication", s)
        for k, (s, _) in self.checks.items():
            yield (None, k, s)
        yield (None, "multiplier_contained", self.multiplier["contained"])

    @property
    def overall(self) -> bool:
        return all(s != FAIL for _, _, s in self.all_checks())

    def failures(self) -> List[Tuple[Optional[int], str]]:
        return [(n, k) for n, k, s in self.all_checks() if s == FAIL]

    def to_json(self) -> dict:
        entries = []
        for row in self.convergence.rows:
            checks = dict(row.checks)
            checks.update(self.entries_extra.get(row.n, {}))
            if row.n in self.replication:
                checks["field_replication"] = self.replication[row.n]
            entries.append({
                "n": row.n,
                "p": list(row.pure_powers),
                "length": None if row.length is None else str(row.length),
                "volume_quotient": row.to_json()["volume_quotient"],
                "field": self.field,
                "checks": {k: {"status": s, "detail": d} for k, (s, d) in checks.items()},
            })
        return {
            "spec": self.spec.to_json(),
            "field": self.field,
            "targets": self.convergence.targets,
            "entries": entries,
            "betti": {str(n): b for n, b in self.betti.items()},
            "multiplier": self.multiplier,
            "checks": {k: {"status": s, "detail": d} for k, (s, d) in self.checks.items()},
            "overall": PASS if self.overall else FAIL,
        }


def _status(ok: bool) -> str:
    return PASS if ok else FAIL


def entry_checks(J: MonomialIdeal, t: CIType, identity_hf: Sequence[int]) -> Dict[str, Tuple[str, str]]:
    """Checks on a single gin(I^n) that do not depend on neighbouring entries."""
    r, m = t.r, t.m
    out: Dict[str, Tuple[str, str]] = {}
    stable = is_strongly_stable(J)
    out["strongly_stable"] = (_status(stable), "")
    hf = hilbert_function(J, len(identity_hf) - 1)
    out["hilbert"] = (_status(hf == list(identity_hf)), f"HF(gin)={hf}, HF(In)={list(identity_hf)}")
    if stable:
        dim, depth = dim_depth(J)
        ok = dim == depth == m - r
        out["dim_depth"] = (_status(ok), f"D={m - dim}, M={m - depth}, r={r}")
        pr = pure_powers(J)[r - 1]
        betti = ek_betti(J)
        if pr is None:
            out["betti"] = (FAIL, f"no pure power of x{r}")
        else:
            b = betti.get((r - 1, pr + r - 1), 0)
            out["betti"] = (_status(b >= 1), f"beta_{{{r - 1},{pr + r - 1}}} = {b}")
    else:
        out["dim_depth"] = (FAIL, "not strongly stable")
        out["betti"] = (FAIL, "not strongly stable")
    return out


def verify_ci(spec: IdealSpec, n_max: int = DEFAULT_NMAX, seed: int = 0, *,
              replicate: int = DEFAULT_REPLICATE, cache=None, multiplier_c=1) -> VerificationReport:
    """Run every prediction check on gin(I^n), n = 1..n_max.

    When the spec lives over F_p, entries n <= ``replicate`` are recomputed
    over Q and must agree.
    """
    t = spec.declared_type
    if t is None:
        raise ValueError("verify_ci needs a declared complete-intersection type")
    if t.m != spec.ring.nvars:
        t = CIType(t.degrees, spec.ring.nvars)
    seq = gin_sequence(spec.generators, n_max, seed, cache=cache)
    conv = verify_limiting_polytope(seq, t)

    extra: Dict[int, Dict[str, Tuple[str, str]]] = {}
    betti: Dict[int, Dict[str, object]] = {}
    for n in sorted(seq.entries):
        J = seq[n]
        pr = pure_powers(J)[t.r - 1]
        dmax = (pr if pr is not None else J.max_degree()) + 2
        identity = hilbert_function(initial_ideal_of(spec.generators, n), dmax)
        extra[n] = entry_checks(J, t, identity)
        pairs = {k: v for k, v in seq.containment.items() if sum(k) == n}
        if pairs:
            extra[n]["graded_containment"] = (
                _status(all(pairs.values())),
                ", ".join(f"J{i}*J{j}" for i, j in sorted(pairs)),
            )
        if is_strongly_stable(J):
            betti[n] = {f"{i},{j}": v for (i, j), v in ek_betti(J).items()}

    replication: Dict[int, Tuple[str, str]] = {}
    if spec.ring.field.characteristic and replicate > 0:
        over_q = spec.over(QQ)
        for n in range(1, min(replicate, n_max) + 1):
            Jq, _ = gin(over_q.generators, derive_seed(seed, n), power=n)
            replication[n] = (_status(Jq == seq[n]), "Q vs " + spec.ring.field.name)

    checks: Dict[str, Tuple[str, str]] = {}
    degs = spec.degrees()
    checks["declared_type"] = (
        _status(degs == list(t.degrees)),
        f"generator degrees {degs}, declared {list(t.degrees)}",
    )
    checks["graded_system"] = (_status(seq.is_graded_system()), f"{len(seq.containment)} pairs")

    bound = default_degree_bound(t)
    p = n_max
    emp, stabilized = asymptotic_multiplier_ideal_empirical(seq, multiplier_c, p, bound)
    closed = ci_asymptotic_multiplier_ideal(t, multiplier_c, bound)
    contained = contains_ideal(emp.ideal, closed.ideal)
    if p % 2 == 0 and p // 2 in seq.entries:
        half, _ = asymptotic_multiplier_ideal_empirical(seq, multiplier_c, p // 2, bound)
        stabilized = half.ideal == emp.ideal
    multiplier = {
        "c": str(multiplier_c),
        "p": p,
        "degree_bound": bound,
        "empirical": [list(g) for g in emp.ideal.gens],
        "closed_form": [list(g) for g in closed.ideal.gens],
        "complete": emp.complete and closed.complete,
        "contained": _status(contained),
        "equal": PASS if emp.ideal == closed.ideal else SKIP,
        "stabilized": stabilized,
    }
    return VerificationReport(spec, spec.ring.field.name, conv, extra, betti, multiplier, replication, checks)


def verify_embedding_reduction(t: CIType, n_max: int = 2, seed: int = 0, field: Field = DEFAULT_FIELD) -> dict:
    """gin(I^n) for a generic CI in m > r variables vs one in r variables."""
    if t.m <= t.r:
        raise ValueError("needs more ambient variables than generators")
    big = make_ci(t, "generic", seed, field)
    small = make_ci(CIType(t.degrees), "generic", derive_seed(seed, "small"), field)
    seq_big = gin_sequence(big.generators, n_max, seed)
    seq_small = gin_sequence(small.generators, n_max, seed)
    rows = []
    ok = True
    for n in range(1, n_max + 1):
        Jb, Js = seq_big[n], seq_small[n]
        support = all(not any(g[t.r:]) for g in Jb.gens)
        same = Js.pad(t.m) == Jb
        ok = ok and support and same
        rows.append({
            "n": n,
            "support": _status(support),
            "identical": _status(same),
            "generators": [list(g) for g in Jb.gens],
        })
    return {"type": list(t.degrees), "m": t.m, "field": field.name, "entries": rows, "overall": _status(ok)}
