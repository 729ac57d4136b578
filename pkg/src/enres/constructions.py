"""The matrices X, Y, the entries g_j of XY, the 2 x n matrix X~_ij and its minors.

Also the two sufficient criteria behind the transversality and height checks: disjoint
supports of minimal leading-ideal generators (transversal intersection)
and pairwise coprime leading terms (regular sequence).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

from . import orders
from .groebner import Ideal, min_gens_leading_ideal
from .ring import Monomial, MonomialOrder, Polynomial, Ring, leading_term, mono_coprime


@dataclass(frozen=True)
class InstanceSpec:
    n: int
    kind: str = "generic"
    pivot: Tuple[int, int] = (1, 2)

    def __post_init__(self):
        if self.n < 2:
            raise ValueError("n must be at least 2")
        if self.kind not in ("generic", "symmetric"):
            raise ValueError(f"kind must be 'generic' or 'symmetric', not {self.kind!r}")
        i, j = self.pivot
        if not 1 <= i < j <= self.n:
            raise ValueError(f"pivot must satisfy 1 <= i < j <= n, got {self.pivot}")

    @classmethod
    def parse(cls, n: int, kind: str = "generic", ij: str = "1,2") -> "InstanceSpec":
        try:
            i, j = (int(s) for s in ij.split(","))
        except ValueError:
            raise ValueError(f"--ij expects 'i,j', got {ij!r}") from None
        return cls(n, kind, (i, j))

    @property
    def i(self) -> int:
        return self.pivot[0]

    @property
    def j(self) -> int:
        return self.pivot[1]

    def label(self) -> str:
        return f"n={self.n} {self.kind} (i,j)=({self.i},{self.j})"


class Instance:
    """All objects attached to one :class:`InstanceSpec`."""

    def __init__(self, spec: InstanceSpec):
        self.spec = spec
        self.n = n = spec.n
        self.ring = ring = Ring.instance(n, spec.kind)
        self.X: List[List[Polynomial]] = [
            [ring.x(r, c) for c in range(1, n + 1)] for r in range(1, n + 1)
        ]
        self.Y: List[Polynomial] = [ring.y(k) for k in range(1, n + 1)]
        # g[k-1] = sum_t x_kt y_t
        self.g: List[Polynomial] = []
        for r in range(n):
            acc = ring.zero()
            for t in range(n):
                acc = acc + self.X[r][t] * self.Y[t]
            self.g.append(acc)
        i, j = spec.pivot
        # symmetric X~_ij uses column i and j of X, which equals rows i and j
        self.Xt: Tuple[List[Polynomial], List[Polynomial]] = (self.X[i - 1], self.X[j - 1])
        self.minor_index: List[Tuple[int, int]] = list(combinations(range(1, n + 1), 2))
        self.minors: List[Polynomial] = [self.minor(s, t) for s, t in self.minor_index]

    def minor(self, s: int, t: int) -> Polynomial:
        """[ij|st]: determinant of columns s, t of X~_ij."""
        a, b = self.Xt
        return a[s - 1] * b[t - 1] - a[t - 1] * b[s - 1]

    def gi(self, k: int) -> Polynomial:
        return self.g[k - 1]

    @property
    def row_i(self) -> List[Polynomial]:
        return list(self.Xt[0])

    @property
    def row_j(self) -> List[Polynomial]:
        return list(self.Xt[1])

    # -- the generator sequence i, j, l_1, l_2, ...
    @cached_property
    def g_sequence(self) -> List[int]:
        return orders.g_sequence(self.n, *self.spec.pivot)

    def extra_index(self, k: int) -> int:
        """l_k: the k-th smallest index outside {i, j}."""
        return self.g_sequence[k + 1]

    # -- ideals
    def minors_ideal(self) -> Ideal:
        return Ideal.of(self.minors, self.ring)

    def stage_generators(self, stage: int) -> List[Polynomial]:
        """Minors plus g_i, g_j, g_{l_1}, ..., g_{l_stage} (stage -1: only g_i; -2: none)."""
        count = stage + 2
        if not -2 <= stage <= self.n - 2:
            raise ValueError(f"stage must lie in -2..{self.n - 2}")
        return self.minors + [self.gi(t) for t in self.g_sequence[:count]]

    def stage_ideal(self, stage: int) -> Ideal:
        return Ideal.of(self.stage_generators(stage), self.ring)

    def row_ideal(self) -> Ideal:
        """<row i of X~_ij>, the expected colon ideal."""
        return Ideal.of(self.row_i, self.ring)

    def regular_sequence_family(self) -> List[Polynomial]:
        """n-1 adjacent-column minors.

        Generic: f_k = [ij | k, k+1].  Symmetric: adjacent columns along
        i, l_1, ..., l_{n-2}, j, since the shared entry x_ij forces a
        common factor among the natural f_k's under every lex order
        unless i = 1, j = n or j = i + 1.
        """
        if self.spec.kind == "symmetric":
            cols = orders.pivot_columns(self.n, *self.spec.pivot)
        else:
            cols = list(range(1, self.n + 1))
        return [self.minor(a, b) for a, b in zip(cols, cols[1:])]

    # -- orders
    def order(self, name: str) -> MonomialOrder:
        return orders.named_order(name, self.ring, *self.spec.pivot)

    @property
    def order_a(self) -> MonomialOrder:
        return orders.order_a(self.ring, *self.spec.pivot)

    @property
    def order_b(self) -> MonomialOrder:
        return orders.order_b(self.ring, *self.spec.pivot)

    @property
    def order_c(self) -> MonomialOrder:
        return orders.order_c(self.ring, *self.spec.pivot)


def build_instance(spec: InstanceSpec) -> Instance:
    return Instance(spec)


# ---------- support and the two criteria ----------

SupportTriple = Tuple[int, int, int]


def supp(monomials: Iterable[Monomial], ring: Ring) -> FrozenSet[SupportTriple]:
    """(i, j, 0) for each x_ij and (0, 0, k) for each y_k dividing some monomial."""
    out = set()
    for m in monomials:
        for v in ring.monomial_dict(m):
            if v.kind == "x":
                out.add((v.i, v.j, 0))
            elif v.kind == "y":
                out.add((0, 0, v.i))
            else:
                raise ValueError(f"support undefined for variable {v}")
    return frozenset(out)


class Verdict(enum.Enum):
    TRANSVERSAL = "Transversal"
    INCONCLUSIVE = "CriterionInconclusive"

    def __str__(self) -> str:
        return self.value


def transversal_by_support(I: Ideal, J: Ideal, order: MonomialOrder) -> Verdict:
    """Sufficient test for I ∩ J = IJ; INCONCLUSIVE says nothing either way."""
    si = supp(min_gens_leading_ideal(I, order), I.ring)
    sj = supp(min_gens_leading_ideal(J, order), J.ring)
    return Verdict.INCONCLUSIVE if si & sj else Verdict.TRANSVERSAL


def regular_sequence_by_coprime_lt(polys: Sequence[Polynomial], order: MonomialOrder) -> bool:
    lts = [leading_term(p, order)[1] for p in polys]
    return all(mono_coprime(a, b) for a, b in combinations(lts, 2))
