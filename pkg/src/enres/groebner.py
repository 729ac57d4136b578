"""Buchberger's algorithm and ideal-level oracles over Q.

The kernel works on polynomials whose exponent tuples have been permuted
into the order's priority sequence, so that lex comparison is plain tuple
comparison.  Public functions take and return :class:`Polynomial` objects.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Set, Tuple

from .ring import (
    T,
    Monomial,
    MonomialOrder,
    Polynomial,
    Ring,
    ZeroPolynomialError,
    default_order,
    leading_term,
    mono_coprime,
    mono_divides,
    mono_lcm,
)

Internal = Dict[Monomial, Fraction]


# ---------- kernel ----------

def _mask(m: Monomial) -> int:
    b = 0
    for k, e in enumerate(m):
        if e:
            b |= 1 << k
    return b


class _Elem:
    __slots__ = ("lm", "lc", "poly", "mask")

    def __init__(self, poly: Internal):
        self.lm = max(poly)
        self.lc = poly[self.lm]
        self.poly = poly
        self.mask = _mask(self.lm)


def _to_internal(f: Polynomial, perm: Sequence[int]) -> Internal:
    return {tuple(m[k] for k in perm): c for m, c in f.terms.items()}


def _from_internal(p: Internal, ring: Ring, perm: Sequence[int]) -> Polynomial:
    out = {}
    for m, c in p.items():
        full = [0] * ring.nvars
        for k, e in zip(perm, m):
            full[k] = e
        out[tuple(full)] = c
    return Polynomial(ring, out)


def _monic(p: Internal) -> Internal:
    lc = p[max(p)]
    if lc == 1:
        return p
    return {m: c / lc for m, c in p.items()}


def _spoly(a: _Elem, b: _Elem) -> Internal:
    lcm = mono_lcm(a.lm, b.lm)
    qa = tuple(p - q for p, q in zip(lcm, a.lm))
    qb = tuple(p - q for p, q in zip(lcm, b.lm))
    out: Internal = {}
    for m, c in a.poly.items():
        out[tuple(p + q for p, q in zip(m, qa))] = c / a.lc
    for m, c in b.poly.items():
        k = tuple(p + q for p, q in zip(m, qb))
        v = out.get(k, 0) - c / b.lc
        if v:
            out[k] = v
        else:
            out.pop(k, None)
    return out


def _reduce(p: Internal, basis: Sequence[_Elem], quotients: Optional[List[Internal]] = None) -> Internal:
    """Full normal form of ``p`` by ``basis``; fills ``quotients`` if given."""
    p = dict(p)
    rem: Internal = {}
    while p:
        m = max(p)
        c = p[m]
        mm = _mask(m)
        for idx, g in enumerate(basis):
            if g.mask & ~mm:
                continue
            lm = g.lm
            if not all(a >= b for a, b in zip(m, lm)):
                continue
            f = c / g.lc
            q = tuple(a - b for a, b in zip(m, lm))
            for gm, gc in g.poly.items():
                k = tuple(a + b for a, b in zip(gm, q))
                v = p.get(k, 0) - f * gc
                if v:
                    p[k] = v
                else:
                    del p[k]
            if quotients is not None:
                qd = quotients[idx]
                v = qd.get(q, 0) + f
                if v:
                    qd[q] = v
                else:
                    del qd[q]
            break
        else:
            rem[m] = c
            del p[m]
    return rem


def _update(elems: List[_Elem], G: List[int], B: List[Tuple[Monomial, int, int]], h: int):
    """Gebauer-Moeller pair update after inserting ``elems[h]``."""
    hlm = elems[h].lm
    lcms = {g: mono_lcm(hlm, elems[g].lm) for g in G}
    C = list(G)
    D: List[int] = []
    while C:
        g1 = C.pop()
        l1 = lcms[g1]
        if mono_coprime(hlm, elems[g1].lm) or not (
            any(mono_divides(lcms[g2], l1) for g2 in C)
            or any(mono_divides(lcms[g2], l1) for g2 in D)
        ):
            D.append(g1)
    new_pairs = [(lcms[g], g, h) for g in D if not mono_coprime(hlm, elems[g].lm)]
    kept = []
    for l, a, b in B:
        if (
            mono_divides(hlm, l)
            and mono_lcm(elems[a].lm, hlm) != l
            and mono_lcm(hlm, elems[b].lm) != l
        ):
            continue
        kept.append((l, a, b))
    B[:] = kept + new_pairs
    G[:] = [g for g in G if not mono_divides(hlm, elems[g].lm)] + [h]


def _interreduce(polys: List[Internal]) -> List[Internal]:
    """Reduced basis from a Groebner basis (monic, minimal, tails reduced)."""
    elems = [_Elem(_monic(p)) for p in polys if p]
    elems.sort(key=lambda e: e.lm)
    minimal: List[_Elem] = []
    for e in elems:
        if not any(mono_divides(f.lm, e.lm) for f in minimal):
            minimal.append(e)
    out = []
    for k, e in enumerate(minimal):
        others = minimal[:k] + minimal[k + 1:]
        out.append(_monic(_reduce(e.poly, others)))
    out.sort(key=max, reverse=True)
    return out


def _groebner(F: Iterable[Internal]) -> List[Internal]:
    elems: List[_Elem] = []
    G: List[int] = []
    B: List[Tuple[Monomial, int, int]] = []
    for f in F:
        h = _reduce(f, [elems[g] for g in G])
        if h:
            elems.append(_Elem(_monic(h)))
            _update(elems, G, B, len(elems) - 1)
    while B:
        k = min(range(len(B)), key=lambda t: B[t][0])
        _, a, b = B.pop(k)
        h = _reduce(_spoly(elems[a], elems[b]), [elems[g] for g in G])
        if h:
            elems.append(_Elem(_monic(h)))
            _update(elems, G, B, len(elems) - 1)
    return _interreduce([elems[g].poly for g in G])


def _failing_pairs(polys: Sequence[Internal], skip_coprime: bool) -> List[Tuple[int, int]]:
    elems = [_Elem(p) for p in polys]
    bad = []
    for a in range(len(elems)):
        for b in range(a + 1, len(elems)):
            if skip_coprime and mono_coprime(elems[a].lm, elems[b].lm):
                continue
            if _reduce(_spoly(elems[a], elems[b]), elems):
                bad.append((a, b))
    return bad


# ---------- polynomial-level operations ----------

def _nonzero(polys: Iterable[Polynomial]) -> List[Polynomial]:
    return [p for p in polys if p]


def s_polynomial(f: Polynomial, g: Polynomial, order: MonomialOrder) -> Polynomial:
    if not f or not g:
        raise ZeroPolynomialError("S-polynomial of a zero polynomial")
    perm = order.permutation(f.ring)
    out = _spoly(_Elem(_to_internal(f, perm)), _Elem(_to_internal(g, perm)))
    return _from_internal(out, f.ring, perm)


def reduce(f: Polynomial, G: Sequence[Polynomial], order: MonomialOrder):
    """Multivariate division: returns ``(remainder, quotients)``.

    ``f == sum(q * g for q, g in zip(quotients, G)) + remainder`` and no
    term of the remainder is divisible by a leading term of ``G``.
    """
    ring = f.ring
    if any(not g for g in G):
        raise ZeroPolynomialError("cannot divide by the zero polynomial")
    perm = order.permutation(ring)
    basis = [_Elem(_to_internal(g, perm)) for g in G]
    quots: List[Internal] = [{} for _ in G]
    rem = _reduce(_to_internal(f, perm), basis, quots)
    return _from_internal(rem, ring, perm), [_from_internal(q, ring, perm) for q in quots]


def normal_form(f: Polynomial, G: Sequence[Polynomial], order: MonomialOrder) -> Polynomial:
    perm = order.permutation(f.ring)
    basis = [_Elem(_to_internal(g, perm)) for g in G if g]
    return _from_internal(_reduce(_to_internal(f, perm), basis), f.ring, perm)


def buchberger(gens: Sequence[Polynomial], order: MonomialOrder, check: bool = True) -> List[Polynomial]:
    """Reduced Groebner basis of ``<gens>``.

    Pairs are taken smallest-lcm first; coprime and chain criteria prune
    pairs.  With ``check`` the result is re-verified by reducing every
    non-coprime S-pair to zero.
    """
    gens = _nonzero(gens)
    if not gens:
        return []
    ring = gens[0].ring
    perm = order.permutation(ring)
    gb = _groebner(_to_internal(g, perm) for g in gens)
    if check:
        bad = _failing_pairs(gb, skip_coprime=True)
        if bad:
            raise AssertionError(f"Buchberger postcondition violated on pairs {bad}")
    return [_from_internal(p, ring, perm) for p in gb]


def reduced_basis(gb: Sequence[Polynomial], order: MonomialOrder) -> List[Polynomial]:
    """Canonical reduced form of a Groebner basis."""
    gb = _nonzero(gb)
    if not gb:
        return []
    ring = gb[0].ring
    perm = order.permutation(ring)
    return [_from_internal(p, ring, perm) for p in _interreduce([_to_internal(g, perm) for g in gb])]


def failing_s_pairs(G: Sequence[Polynomial], order: MonomialOrder, skip_coprime: bool = False):
    """Index pairs of ``G`` whose S-polynomial does not reduce to zero by ``G``."""
    G = list(G)
    if any(not g for g in G):
        raise ZeroPolynomialError("zero polynomial in basis")
    if not G:
        return []
    perm = order.permutation(G[0].ring)
    return _failing_pairs([_to_internal(g, perm) for g in G], skip_coprime)


def is_groebner_basis(G: Sequence[Polynomial], order: MonomialOrder) -> bool:
    return not failing_s_pairs(G, order, skip_coprime=True)


# ---------- ideals ----------

_CACHE: Dict[tuple, Tuple[Polynomial, ...]] = {}
_CACHE_LOCK = threading.Lock()
CACHE_ENABLED = True


@dataclass(frozen=True)
class Ideal:
    ring: Ring
    generators: Tuple[Polynomial, ...] = field(default=())

    @classmethod
    def of(cls, gens: Iterable[Polynomial], ring: Optional[Ring] = None) -> "Ideal":
        gens = tuple(gens)
        if ring is None:
            if not gens:
                raise ValueError("ring required for an ideal without generators")
            ring = gens[0].ring
        for g in gens:
            if g.ring != ring:
                raise ValueError("generator from a different ring")
        return cls(ring, gens)

    @classmethod
    def unit(cls, ring: Ring) -> "Ideal":
        return cls(ring, (ring.one(),))

    def fingerprint(self) -> frozenset:
        return frozenset(g for g in self.generators if g)

    def groebner(self, order: MonomialOrder) -> Tuple[Polynomial, ...]:
        """Reduced Groebner basis, cached per (generator set, order)."""
        key = (self.ring, self.fingerprint(), order)
        if CACHE_ENABLED:
            with _CACHE_LOCK:
                hit = _CACHE.get(key)
            if hit is not None:
                return hit
        gb = tuple(buchberger(self.generators, order))
        if CACHE_ENABLED:
            with _CACHE_LOCK:
                _CACHE[key] = gb
        return gb

    def __add__(self, other: "Ideal") -> "Ideal":
        return Ideal.of(self.generators + other.generators, self.ring)

    def __len__(self) -> int:
        return len(self.generators)

    def __iter__(self):
        return iter(self.generators)

    def to_strs(self, order: Optional[MonomialOrder] = None) -> List[str]:
        return [g.to_str(order) for g in self.generators]


def clear_cache() -> None:
    with _CACHE_LOCK:
        _CACHE.clear()


def ideal_member(f: Polynomial, I: Ideal, order: Optional[MonomialOrder] = None) -> bool:
    if not f:
        return True
    order = order or default_order(I.ring)
    return not normal_form(f, I.groebner(order), order)


def contains(I: Ideal, J: Ideal, order: Optional[MonomialOrder] = None) -> bool:
    """J ⊆ I."""
    return all(ideal_member(g, I, order) for g in J.generators)


def min_gens_leading_ideal(I: Ideal, order: Optional[MonomialOrder] = None) -> Set[Monomial]:
    order = order or default_order(I.ring)
    return {leading_term(g, order)[1] for g in I.groebner(order)}


def ideal_equal(I: Ideal, J: Ideal, order: Optional[MonomialOrder] = None) -> bool:
    if I.ring != J.ring:
        raise ValueError("ideals in different rings")
    order = order or default_order(I.ring)
    return I.groebner(order) == J.groebner(order)


def product(I: Ideal, J: Ideal) -> Ideal:
    return Ideal.of([f * g for f in I.generators for g in J.generators], I.ring)


def intersect(I: Ideal, J: Ideal, order: Optional[MonomialOrder] = None) -> Ideal:
    """I ∩ J by eliminating t from <t*I, (1-t)*J> under a lex order with t on top."""
    ring = I.ring
    if J.ring != ring:
        raise ValueError("ideals in different rings")
    order = order or default_order(ring)
    big = ring.adjoin(T)
    elim = order.with_top(T, name=f"t>{order.name}")
    t = big.var(T)
    one_minus_t = big.one() - t
    gens = [t * big.embed(f) for f in I.generators if f]
    gens += [one_minus_t * big.embed(g) for g in J.generators if g]
    if not gens:
        return Ideal(ring, ())
    gb = buchberger(gens, elim)
    tpos = big.index[T]
    kept = [ring_restrict(big, g, ring) for g in gb if all(m[tpos] == 0 for m in g.terms)]
    return Ideal.of(kept, ring)


def ring_restrict(big: Ring, p: Polynomial, ring: Ring) -> Polynomial:
    return big.restrict(p, ring)


def divide_exact(f: Polynomial, g: Polynomial, order: Optional[MonomialOrder] = None) -> Polynomial:
    order = order or default_order(f.ring)
    rem, (q,) = reduce(f, [g], order)
    if rem:
        raise ArithmeticError("division is not exact")
    return q


def colon(I: Ideal, f: Polynomial, order: Optional[MonomialOrder] = None) -> Ideal:
    """(I : f), computed as (I ∩ <f>) / f."""
    if not f:
        raise ZeroPolynomialError("colon by the zero polynomial")
    order = order or default_order(I.ring)
    inter = intersect(I, Ideal.of([f]), order)
    return Ideal.of([divide_exact(h, f, order) for h in inter.generators], I.ring)


def transversal_oracle(I: Ideal, J: Ideal, order: Optional[MonomialOrder] = None) -> bool:
    """I ∩ J == I·J, decided by reduced Groebner bases."""
    order = order or default_order(I.ring)
    return ideal_equal(intersect(I, J, order), product(I, J), order)
