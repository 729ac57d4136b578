"""Sparse multivariate polynomials over Q with lexicographic orders.

Monomials are dense exponent tuples indexed by the variables of a
:class:`Ring`.  A :class:`MonomialOrder` is a priority permutation of the
ring's variables; comparing two monomials lexicographically in priority
sequence is the same as comparing the permuted exponent tuples, which is
what every hot loop in this package does.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple

Monomial = Tuple[int, ...]


class ZeroPolynomialError(ValueError):
    """Raised when an operation needs a nonzero polynomial."""


@dataclass(frozen=True)
class Var:
    """An indeterminate ``x[i,j]``, ``y[k]`` or the auxiliary ``t``."""

    kind: str
    i: int = 0
    j: int = 0

    def __str__(self) -> str:
        if self.kind == "x":
            return f"x[{self.i},{self.j}]"
        if self.kind == "y":
            return f"y[{self.i}]"
        return self.kind


def x(i: int, j: int) -> Var:
    return Var("x", i, j)


def y(k: int) -> Var:
    return Var("y", k)


T = Var("t")


class Ring:
    """Polynomial ring over Q on a fixed, ordered set of variables."""

    def __init__(self, variables: Sequence[Var], n: int = 0, symmetric: bool = False):
        self.variables: Tuple[Var, ...] = tuple(variables)
        if len(set(self.variables)) != len(self.variables):
            raise ValueError("duplicate variables")
        self.index: Dict[Var, int] = {v: k for k, v in enumerate(self.variables)}
        self.n = n
        self.symmetric = symmetric
        self.nvars = len(self.variables)
        self.one_monomial: Monomial = (0,) * self.nvars

    @staticmethod
    @lru_cache(maxsize=None)
    def instance(n: int, kind: str = "generic") -> "Ring":
        """The ring K[x_ij, y_j] for an n x n generic or symmetric matrix."""
        if n < 1:
            raise ValueError("n must be positive")
        if kind not in ("generic", "symmetric"):
            raise ValueError(f"unknown kind {kind!r}")
        sym = kind == "symmetric"
        xs = [x(i, j) for i in range(1, n + 1) for j in range(1, n + 1) if not sym or i <= j]
        ys = [y(k) for k in range(1, n + 1)]
        return Ring(xs + ys, n=n, symmetric=sym)

    @property
    def kind(self) -> str:
        return "symmetric" if self.symmetric else "generic"

    def __eq__(self, other) -> bool:
        return isinstance(other, Ring) and self.variables == other.variables

    def __hash__(self) -> int:
        return hash(self.variables)

    def __repr__(self) -> str:
        return f"Ring({self.nvars} vars, n={self.n}, {self.kind})"

    def canon(self, v: Var) -> Var:
        """Canonical name of ``v``; symmetric rings store x[i,j] with i <= j."""
        if v.kind == "x" and self.symmetric and v.i > v.j:
            v = Var("x", v.j, v.i)
        if v not in self.index:
            raise ValueError(f"variable {v} not in ring")
        return v

    def adjoin(self, v: Var) -> "Ring":
        return Ring(self.variables + (v,), n=self.n, symmetric=self.symmetric)

    def monomial(self, exps: Mapping[Var, int]) -> Monomial:
        m = [0] * self.nvars
        for v, e in exps.items():
            if e < 0:
                raise ValueError("negative exponent")
            m[self.index[self.canon(v)]] += e
        return tuple(m)

    def monomial_dict(self, m: Monomial) -> Dict[Var, int]:
        return {self.variables[k]: e for k, e in enumerate(m) if e}

    def var(self, v: Var) -> "Polynomial":
        return Polynomial(self, {self.monomial({v: 1}): Fraction(1)})

    def x(self, i: int, j: int) -> "Polynomial":
        return self.var(Var("x", i, j))

    def y(self, k: int) -> "Polynomial":
        return self.var(Var("y", k))

    def const(self, c) -> "Polynomial":
        c = Fraction(c)
        return Polynomial(self, {self.one_monomial: c} if c else {})

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return self.const(1)

    def embed(self, p: "Polynomial") -> "Polynomial":
        """Map ``p`` into this ring by variable name."""
        if p.ring == self:
            return p
        perm = [self.index[v] for v in p.ring.variables]
        out = {}
        for m, c in p.terms.items():
            nm = [0] * self.nvars
            for k, e in enumerate(m):
                if e:
                    nm[perm[k]] = e
            out[tuple(nm)] = c
        return Polynomial(self, out)

    def restrict(self, p: "Polynomial", sub: "Ring") -> "Polynomial":
        """Map ``p`` into the subring ``sub``; fails if ``p`` uses other variables."""
        pos = [self.index[v] for v in sub.variables]
        out = {}
        for m, c in p.terms.items():
            nm = tuple(m[k] for k in pos)
            if sum(nm) != sum(m):
                raise ValueError("polynomial involves variables outside the subring")
            out[nm] = c
        return Polynomial(sub, out)


# ---------- monomial arithmetic ----------

def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(p + q for p, q in zip(a, b))


def mono_div(a: Monomial, b: Monomial) -> Monomial:
    """a / b, assuming b divides a."""
    return tuple(p - q for p, q in zip(a, b))


def mono_divides(b: Monomial, a: Monomial) -> bool:
    return all(q <= p for p, q in zip(a, b))


def mono_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(p if p > q else q for p, q in zip(a, b))


def mono_coprime(a: Monomial, b: Monomial) -> bool:
    return not any(p and q for p, q in zip(a, b))


def mono_degree(a: Monomial) -> int:
    return sum(a)


class Polynomial:
    """Immutable polynomial: a map from exponent tuples to nonzero Fractions."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: Ring, terms: Mapping[Monomial, Fraction]):
        self.ring = ring
        self.terms: Dict[Monomial, Fraction] = {m: c for m, c in terms.items() if c}
        self._hash: Optional[int] = None

    # -- basic protocol
    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = self.ring.const(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise ValueError("polynomials from different rings")
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.const(other)
        raise TypeError(f"cannot combine Polynomial with {type(other).__name__}")

    def __add__(self, other) -> "Polynomial":
        other = self._coerce(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + c
        return Polynomial(self.ring, out)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial(self.ring, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other) -> "Polynomial":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "Polynomial":
        return self._coerce(other) - self

    def __mul__(self, other) -> "Polynomial":
        if isinstance(other, (int, Fraction)):
            c = Fraction(other)
            if not c:
                return self.ring.zero()
            return Polynomial(self.ring, {m: c * a for m, a in self.terms.items()})
        other = self._coerce(other)
        out: Dict[Monomial, Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(p + q for p, q in zip(m1, m2))
                out[m] = out.get(m, 0) + c1 * c2
        return Polynomial(self.ring, out)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "Polynomial":
        out = self.ring.one()
        for _ in range(e):
            out = out * self
        return out

    def mul_term(self, c: Fraction, m: Monomial) -> "Polynomial":
        return Polynomial(self.ring, {mono_mul(m, k): c * a for k, a in self.terms.items()})

    # -- queries
    def is_constant(self) -> bool:
        return all(not any(m) for m in self.terms)

    def constant_term(self) -> Fraction:
        return self.terms.get(self.ring.one_monomial, Fraction(0))

    def variables(self) -> set:
        out = set()
        for m in self.terms:
            out.update(self.ring.variables[k] for k, e in enumerate(m) if e)
        return out

    def total_degree(self) -> int:
        return max((sum(m) for m in self.terms), default=-1)

    def sorted_terms(self, order: "MonomialOrder") -> List[Tuple[Fraction, Monomial]]:
        key = order.key(self.ring)
        return [(self.terms[m], m) for m in sorted(self.terms, key=key, reverse=True)]

    def evaluate(self, point: Mapping[Var, int]) -> Fraction:
        vals = [point[v] for v in self.ring.variables]
        total = Fraction(0)
        for m, c in self.terms.items():
            t = c
            for k, e in enumerate(m):
                if e:
                    t *= vals[k] ** e
            total += t
        return total

    def to_str(self, order: Optional["MonomialOrder"] = None) -> str:
        return format_polynomial(self, order)

    def __str__(self) -> str:
        return format_polynomial(self)

    def __repr__(self) -> str:
        return f"Polynomial({format_polynomial(self)!r})"


# ---------- orders ----------

class Cmp(enum.IntEnum):
    LT = -1
    EQ = 0
    GT = 1


@dataclass(frozen=True)
class MonomialOrder:
    """Lexicographic order read along ``priority`` (first entry is largest)."""

    name: str
    priority: Tuple[Var, ...]

    def __post_init__(self):
        if len(set(self.priority)) != len(self.priority):
            raise ValueError(f"order {self.name}: repeated variable in priority")

    def permutation(self, ring: Ring) -> Tuple[int, ...]:
        return _permutation(self, ring)

    def key(self, ring: Ring):
        perm = self.permutation(ring)
        return lambda m: tuple(m[k] for k in perm)

    def with_top(self, *vs: Var, name: Optional[str] = None) -> "MonomialOrder":
        return MonomialOrder(name or f"{'>'.join(map(str, vs))}>{self.name}", tuple(vs) + self.priority)

    def __str__(self) -> str:
        return self.name


@lru_cache(maxsize=None)
def _permutation(order: MonomialOrder, ring: Ring) -> Tuple[int, ...]:
    if set(order.priority) != set(ring.variables):
        missing = [str(v) for v in ring.variables if v not in set(order.priority)]
        extra = [str(v) for v in order.priority if v not in ring.index]
        raise ValueError(
            f"order {order.name} is not a permutation of the ring variables "
            f"(missing {missing}, unknown {extra})"
        )
    return tuple(ring.index[v] for v in order.priority)


def compare_monomials(a: Monomial, b: Monomial, order: MonomialOrder, ring: Ring) -> Cmp:
    key = order.key(ring)
    ka, kb = key(a), key(b)
    if ka == kb:
        return Cmp.EQ
    return Cmp.GT if ka > kb else Cmp.LT


def leading_term(f: Polynomial, order: MonomialOrder) -> Tuple[Fraction, Monomial]:
    if not f:
        raise ZeroPolynomialError("no leading term: zero polynomial")
    m = max(f.terms, key=order.key(f.ring))
    return f.terms[m], m


def leading_monomial(f: Polynomial, order: MonomialOrder) -> Monomial:
    return leading_term(f, order)[1]


# ---------- text grammar ----------

_TOKEN = re.compile(
    r"\s*(?:(?P<var>x\[\s*(?P<xi>\d+)\s*,\s*(?P<xj>\d+)\s*\]|y\[\s*(?P<yk>\d+)\s*\]|t\b)"
    r"|(?P<num>\d+(?:/\d+)?)|(?P<op>[+\-*^]))"
)


def parse_polynomial(text: str, ring: Ring) -> Polynomial:
    """Parse ``2*x[1,1]y[2] - 1/3*x[1,2]`` style input.

    Variables in a term are juxtaposed (``x[1,1]x[1,1]`` is a square);
    ``*`` between variables and ``^k`` exponents are also accepted.
    A bare rational is a constant term and ``0`` is the zero polynomial.
    """
    s = text.strip()
    if not s:
        raise ValueError("empty polynomial")
    pos = 0
    tokens = []
    while pos < len(s):
        mt = _TOKEN.match(s, pos)
        if not mt or mt.end() == pos:
            raise ValueError(f"cannot parse polynomial at {s[pos:pos + 12]!r}")
        pos = mt.end()
        if mt.group("var"):
            if mt.group("xi") is not None:
                v = Var("x", int(mt.group("xi")), int(mt.group("xj")))
            elif mt.group("yk") is not None:
                v = Var("y", int(mt.group("yk")))
            else:
                v = T
            tokens.append(("var", ring.canon(v)))
        elif mt.group("num"):
            tokens.append(("num", Fraction(mt.group("num"))))
        else:
            tokens.append(("op", mt.group("op")))
        # trailing whitespace
        while pos < len(s) and s[pos].isspace():
            pos += 1

    out: Dict[Monomial, Fraction] = {}
    k = 0
    first = True
    while k < len(tokens):
        sign = 1
        if tokens[k] == ("op", "+") or tokens[k] == ("op", "-"):
            sign = -1 if tokens[k][1] == "-" else 1
            k += 1
        elif not first:
            raise ValueError(f"expected '+' or '-' in {text!r}")
        first = False
        coef = Fraction(1)
        exps: Dict[Var, int] = {}
        seen = False
        if k < len(tokens) and tokens[k][0] == "num":
            coef = tokens[k][1]
            k += 1
            seen = True
            if k < len(tokens) and tokens[k] == ("op", "*"):
                k += 1
                if k >= len(tokens) or tokens[k][0] != "var":
                    raise ValueError(f"expected variable after '*' in {text!r}")
        while k < len(tokens) and tokens[k][0] == "var":
            v = tokens[k][1]
            k += 1
            e = 1
            if k + 1 < len(tokens) and tokens[k] == ("op", "^") and tokens[k + 1][0] == "num":
                e = int(tokens[k + 1][1])
                k += 2
            exps[v] = exps.get(v, 0) + e
            seen = True
            if k < len(tokens) and tokens[k] == ("op", "*"):
                k += 1
                if k >= len(tokens) or tokens[k][0] != "var":
                    raise ValueError(f"expected variable after '*' in {text!r}")
        if not seen:
            raise ValueError(f"empty term in {text!r}")
        m = ring.monomial(exps)
        out[m] = out.get(m, 0) + sign * coef
    return Polynomial(ring, out)


def _format_monomial(ring: Ring, m: Monomial, order_perm: Sequence[int]) -> str:
    return "".join(str(ring.variables[k]) * m[k] for k in order_perm if m[k])


def format_polynomial(f: Polynomial, order: Optional[MonomialOrder] = None) -> str:
    """Print ``f`` with terms descending under ``order`` (default: the ring's default order)."""
    if not f:
        return "0"
    if order is None:
        order = default_order(f.ring)
    perm = order.permutation(f.ring)
    parts = []
    for c, m in f.sorted_terms(order):
        mono = _format_monomial(f.ring, m, perm)
        a = abs(c)
        if not mono:
            body = str(a)
        elif a == 1:
            body = mono
        else:
            body = f"{a}*{mono}"
        if not parts:
            parts.append(("-" if c < 0 else "") + body)
        else:
            parts.append((" - " if c < 0 else " + ") + body)
    return "".join(parts)


def default_order(ring: Ring) -> MonomialOrder:
    """y_n > ... > y_1 > x row-major, followed by any auxiliary variables."""
    return _default_order(ring)


@lru_cache(maxsize=None)
def _default_order(ring: Ring) -> MonomialOrder:
    ys = sorted((v for v in ring.variables if v.kind == "y"), key=lambda v: -v.i)
    xs = sorted((v for v in ring.variables if v.kind == "x"), key=lambda v: (v.i, v.j))
    rest = [v for v in ring.variables if v.kind not in ("x", "y")]
    return MonomialOrder("default", tuple(rest + ys + xs))


def iter_terms(f: Polynomial) -> Iterator[Tuple[Monomial, Fraction]]:
    return iter(f.terms.items())


def polynomials(ring: Ring, texts: Iterable[str]) -> List[Polynomial]:
    return [parse_polynomial(s, ring) for s in texts]
