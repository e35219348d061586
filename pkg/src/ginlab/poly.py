"""Exact multivariate polynomials under the graded reverse lexicographic order.

Coefficients live either in Q (``fractions.Fraction``) or in a prime field
F_p (plain ``int`` in ``[0, p)``). Polynomials are immutable and keep their
terms sorted from the greatest monomial down.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Sequence, Tuple

from . import _linalg

Monomial = Tuple[int, ...]

__all__ = [
    "Field",
    "QQ",
    "RingSpec",
    "Polynomial",
    "CoordinateChange",
    "ParseError",
    "parse_polynomial",
    "compare_revlex",
    "revlex_key",
    "multiply",
    "apply_change",
    "ideal_power",
]


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class Field:
    """Coefficient field: Q when ``characteristic == 0``, otherwise F_p."""

    characteristic: int = 0

    def __post_init__(self):
        p = self.characteristic
        if p != 0 and not _is_prime(p):
            raise ValueError(f"characteristic {p} is not a prime")

    @classmethod
    def parse(cls, text: str) -> "Field":
        """Accepts ``Q``/``q``, ``F32003``, ``fp:32003``."""
        t = text.strip()
        if t in ("Q", "q", "QQ"):
            return cls(0)
        m = re.fullmatch(r"(?:F|fp:|Fp:|GF)(\d+)", t)
        if not m:
            raise ValueError(f"unknown field {text!r}")
        return cls(int(m.group(1)))

    @property
    def name(self) -> str:
        return "Q" if self.characteristic == 0 else f"F{self.characteristic}"

    def __call__(self, x):
        p = self.characteristic
        if not p:
            return Fraction(x)
        if isinstance(x, Fraction):
            if x.denominator % p == 0:
                raise ValueError(f"{x} is not representable in F_{p}")
            return x.numerator * pow(x.denominator, -1, p) % p
        return int(x) % p

    def inv(self, a):
        p = self.characteristic
        if (a % p if p else a) == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, -1, p) if p else 1 / a

    def lift(self, a) -> Fraction:
        """Rational lift; symmetric representative for F_p."""
        p = self.characteristic
        if not p:
            return a
        return Fraction(a - p if a > p // 2 else a)


QQ = Field(0)


@dataclass(frozen=True)
class RingSpec:
    """Polynomial ring K[x_1, ..., x_m]; the order of ``variables`` fixes x_1 > ... > x_m."""

    variables: Tuple[str, ...]
    field: Field = QQ

    def __post_init__(self):
        object.__setattr__(self, "variables", tuple(self.variables))
        if len(set(self.variables)) != len(self.variables):
            raise ValueError("variable names must be distinct")
        for v in self.variables:
            if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", v):
                raise ValueError(f"bad variable name {v!r}")

    @classmethod
    def standard(cls, m: int, field: Field = QQ) -> "RingSpec":
        return cls(tuple(f"x{i + 1}" for i in range(m)), field)

    @property
    def nvars(self) -> int:
        return len(self.variables)

    def with_field(self, field: Field) -> "RingSpec":
        return RingSpec(self.variables, field)

    def __str__(self):
        return f"{self.field.name}[{','.join(self.variables)}]"


def revlex_key(e: Sequence[int]) -> tuple:
    """Sort key: a *smaller* key means a *greater* monomial in graded revlex."""
    return (-sum(e), tuple(reversed(e)))


def compare_revlex(a: Sequence[int], b: Sequence[int]) -> int:
    """Return 1, 0 or -1 as x^a is greater than, equal to or less than x^b.

    Total degree decides first; on a tie the last coordinate where the
    vectors differ decides, and the smaller entry there wins.
    """
    if len(a) != len(b):
        raise ValueError("exponent vectors of different length")
    ka, kb = revlex_key(a), revlex_key(b)
    if ka == kb:
        return 0
    return 1 if ka < kb else -1


class Polynomial:
    """Immutable sparse polynomial; ``terms`` is a tuple of (monomial, coefficient)."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: RingSpec, terms: Iterable[Tuple[Sequence[int], object]] = ()):
        F = ring.field
        acc: Dict[Monomial, object] = {}
        m = ring.nvars
        for mono, c in terms:
            mono = tuple(int(x) for x in mono)
            if len(mono) != m or any(x < 0 for x in mono):
                raise ValueError(f"bad exponent vector {mono} for {m} variables")
            acc[mono] = F(acc.get(mono, 0) + F(c))
        self._set(ring, acc)

    def _set(self, ring, acc):
        object.__setattr__(self, "ring", ring)
        p = ring.field.characteristic
        items = [(e, c) for e, c in acc.items() if (c % p if p else c) != 0]
        items.sort(key=lambda t: revlex_key(t[0]))
        object.__setattr__(self, "terms", tuple(items))

    def __setattr__(self, *args):
        raise AttributeError("Polynomial is immutable")

    @classmethod
    def _from_dict(cls, ring: RingSpec, acc: Dict[Monomial, object]) -> "Polynomial":
        """Trusted constructor: coefficients already reduced in the field."""
        obj = cls.__new__(cls)
        obj._set(ring, acc)
        return obj

    @classmethod
    def monomial(cls, ring: RingSpec, e: Sequence[int], c=1) -> "Polynomial":
        return cls(ring, [(e, c)])

    @classmethod
    def constant(cls, ring: RingSpec, c) -> "Polynomial":
        return cls(ring, [((0,) * ring.nvars, c)])

    @classmethod
    def variable(cls, ring: RingSpec, i: int) -> "Polynomial":
        e = [0] * ring.nvars
        e[i] = 1
        return cls(ring, [(e, 1)])

    # -- inspection ---------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    @property
    def lm(self) -> Monomial:
        if not self.terms:
            raise ValueError("zero polynomial has no leading monomial")
        return self.terms[0][0]

    @property
    def lc(self):
        if not self.terms:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.terms[0][1]

    def degree(self) -> int:
        if not self.terms:
            return -1
        return sum(self.terms[0][0])

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e, _ in self.terms}) <= 1

    def as_dict(self) -> Dict[Monomial, object]:
        return dict(self.terms)

    def monic(self) -> "Polynomial":
        if not self.terms:
            return self
        F = self.ring.field
        p = F.characteristic
        inv = F.inv(self.lc)
        return Polynomial._from_dict(
            self.ring, {e: (c * inv % p if p else c * inv) for e, c in self.terms}
        )

    # -- arithmetic ---------------------------------------------------------
    def _check(self, other: "Polynomial"):
        if self.ring != other.ring:
            raise ValueError(f"ring mismatch: {self.ring} vs {other.ring}")

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)):
            return Polynomial.constant(self.ring, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = self.ring.field.characteristic
        acc = dict(self.terms)
        for e, c in other.terms:
            v = acc.get(e, 0) + c
            acc[e] = v % p if p else v
        return Polynomial._from_dict(self.ring, acc)

    __radd__ = __add__

    def __neg__(self):
        p = self.ring.field.characteristic
        return Polynomial._from_dict(self.ring, {e: (-c % p if p else -c) for e, c in self.terms})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            F = self.ring.field
            p = F.characteristic
            k = F(other)
            return Polynomial._from_dict(self.ring, {e: (c * k % p if p else c * k) for e, c in self.terms})
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return multiply(self, other)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        result = Polynomial.constant(self.ring, 1)
        base = self
        while n:
            if n & 1:
                result = multiply(result, base)
            n >>= 1
            if n:
                base = multiply(base, base)
        return result

    def mul_term(self, e: Monomial, c) -> "Polynomial":
        """Multiply by the single term c * x^e."""
        p = self.ring.field.characteristic
        acc = {}
        for f, d in self.terms:
            acc[tuple(a + b for a, b in zip(e, f))] = d * c % p if p else d * c
        return Polynomial._from_dict(self.ring, acc)

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        return hash((self.ring, self.terms))

    # -- printing -----------------------------------------------------------
    def __str__(self):
        if not self.terms:
            return "0"
        names = self.ring.variables
        out = []
        for k, (e, c) in enumerate(self.terms):
            neg = not self.ring.field.characteristic and c < 0
            a = -c if neg else c
            factors = []
            for name, x in zip(names, e):
                if x == 1:
                    factors.append(name)
                elif x > 1:
                    factors.append(f"{name}^{x}")
            if a != 1 or not factors:
                factors.insert(0, str(a))
            body = "*".join(factors)
            if k == 0:
                out.append(f"-{body}" if neg else body)
            else:
                out.append(f" - {body}" if neg else f" + {body}")
        return "".join(out)

    def __repr__(self):
        return f"Polynomial({self.ring}, {self})"


def multiply(p: Polynomial, q: Polynomial) -> Polynomial:
    """Exact product of two polynomials over the same ring."""
    p._check(q)
    mod = p.ring.field.characteristic
    acc: Dict[Monomial, object] = {}
    get = acc.get
    for e1, c1 in p.terms:
        for e2, c2 in q.terms:
            e = tuple(a + b for a, b in zip(e1, e2))
            acc[e] = get(e, 0) + c1 * c2
    if mod:
        acc = {e: c % mod for e, c in acc.items()}
    return Polynomial._from_dict(p.ring, acc)


@dataclass(frozen=True)
class CoordinateChange:
    """Linear change of coordinates x_i -> sum_j entries[i][j] * x_j."""

    ring: RingSpec
    entries: Tuple[Tuple[object, ...], ...]

    def __post_init__(self):
        F = self.ring.field
        rows = tuple(tuple(F(x) for x in row) for row in self.entries)
        m = self.ring.nvars
        if len(rows) != m or any(len(r) != m for r in rows):
            raise ValueError(f"coordinate change must be {m}x{m}")
        object.__setattr__(self, "entries", rows)
        if _linalg.det(rows, F.characteristic) == 0:
            raise ValueError("coordinate change is singular")

    @classmethod
    def identity(cls, ring: RingSpec) -> "CoordinateChange":
        m = ring.nvars
        return cls(ring, tuple(tuple(int(i == j) for j in range(m)) for i in range(m)))

    def inverse(self) -> "CoordinateChange":
        inv = _linalg.inverse(self.entries, self.ring.field.characteristic)
        return CoordinateChange(self.ring, tuple(tuple(r) for r in inv))

    def images(self) -> List[Polynomial]:
        m = self.ring.nvars
        return [
            Polynomial(self.ring, [(tuple(int(k == j) for k in range(m)), row[j]) for j in range(m)])
            for row in self.entries
        ]


def apply_change(g: CoordinateChange, p: Polynomial) -> Polynomial:
    """Substitute x_i -> g(x_i) in p and expand."""
    if g.ring != p.ring:
        raise ValueError(f"ring mismatch: {g.ring} vs {p.ring}")
    images = g.images()
    powers: List[List[Polynomial]] = [[Polynomial.constant(p.ring, 1), im] for im in images]

    def power(i: int, k: int) -> Polynomial:
        cache = powers[i]
        while len(cache) <= k:
            cache.append(multiply(cache[-1], images[i]))
        return cache[k]

    mod = p.ring.field.characteristic
    acc: Dict[Monomial, object] = {}
    for e, c in p.terms:
        term = None
        for i, k in enumerate(e):
            if k:
                term = power(i, k) if term is None else multiply(term, power(i, k))
        if term is None:
            term = powers[0][0]
        for f, d in term.terms:
            acc[f] = acc.get(f, 0) + c * d
    if mod:
        acc = {e: c % mod for e, c in acc.items()}
    return Polynomial._from_dict(p.ring, acc)


def ideal_power(gens: Sequence[Polynomial], n: int) -> List[Polynomial]:
    """All products of n generators (with repetition): a generating set of I^n."""
    if n < 1:
        raise ValueError("power must be at least 1")
    gens = list(gens)
    if not gens:
        raise ValueError("no generators")
    if any(g.is_zero() for g in gens):
        raise ValueError("generators must be nonzero")
    cache: Dict[Tuple[int, ...], Polynomial] = {}

    def prod(combo: Tuple[int, ...]) -> Polynomial:
        if len(combo) == 1:
            return gens[combo[0]]
        if combo not in cache:
            cache[combo] = multiply(prod(combo[:-1]), gens[combo[-1]])
        return cache[combo]

    return [prod(c) for c in itertools.combinations_with_replacement(range(len(gens)), n)]


# -- parser ------------------------------------------------------------------

class ParseError(ValueError):
    """Syntax or semantic error in a polynomial expression; ``pos`` is a 0-based offset."""

    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} at position {pos}")
        self.pos = pos


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|([-+*/^()−]))")


def _tokenize(text: str):
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            start = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise ParseError(f"unexpected character {text[start]!r}", start)
        start = m.start(m.lastindex)
        if m.group(1) is not None:
            tokens.append(("int", int(m.group(1)), start))
        elif m.group(2) is not None:
            tokens.append(("name", m.group(2), start))
        else:
            op = m.group(3)
            tokens.append(("op", "-" if op == "−" else op, start))
        pos = m.end()
    tokens.append(("end", None, len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, ring: RingSpec):
        self.tokens = _tokenize(text)
        self.i = 0
        self.ring = ring
        self.index = {v: k for k, v in enumerate(ring.variables)}

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def parse(self) -> Polynomial:
        result = self.expr()
        kind, val, pos = self.peek()
        if kind != "end":
            raise ParseError(f"unexpected token {val!r}", pos)
        return result

    def expr(self):
        left = self.term()
        while self.peek()[0] == "op" and self.peek()[1] in "+-":
            op = self.take()[1]
            right = self.term()
            left = left + right if op == "+" else left - right
        return left

    def term(self):
        left = self.unary()
        while self.peek()[0] == "op" and self.peek()[1] in "*/":
            _, op, pos = self.take()
            right = self.unary()
            if op == "*":
                left = left * right
            else:
                F = self.ring.field
                if right.is_zero():
                    where = f" in {F.name}" if F.characteristic else ""
                    raise ParseError(f"divisor is zero{where}", pos)
                if any(sum(e) for e, _ in right.terms):
                    raise ParseError("divisor must be a nonzero constant", pos)
                c = right.terms[0][1]
                left = left * F.inv(c)
        kind, val, pos = self.peek()
        if kind in ("int", "name") or (kind == "op" and val == "("):
            raise ParseError("implicit multiplication is not allowed", pos)
        return left

    def unary(self):
        kind, val, _ = self.peek()
        if kind == "op" and val in "+-":
            self.take()
            operand = self.unary()
            return -operand if val == "-" else operand
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek()[0] == "op" and self.peek()[1] == "^":
            self.take()
            kind, val, pos = self.take()
            if kind != "int":
                raise ParseError("exponent must be a nonnegative integer literal", pos)
            return base ** val
        return base

    def atom(self):
        kind, val, pos = self.take()
        if kind == "int":
            return Polynomial.constant(self.ring, val)
        if kind == "name":
            if val not in self.index:
                raise ParseError(f"unknown variable {val!r}", pos)
            return Polynomial.variable(self.ring, self.index[val])
        if kind == "op" and val == "(":
            inner = self.expr()
            k2, v2, p2 = self.take()
            if not (k2 == "op" and v2 == ")"):
                raise ParseError("expected ')'", p2)
            return inner
        raise ParseError("unexpected end of input" if kind == "end" else f"unexpected token {val!r}", pos)


def parse_polynomial(text: str, ring: RingSpec) -> Polynomial:
    """Parse an expression such as ``"x1^2 + 3*x2*x3 - 1/2*x3^2"``."""
    return _Parser(text, ring).parse()
