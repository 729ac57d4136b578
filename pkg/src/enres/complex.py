"""Free complexes over the instance ring with sparse polynomial differentials.

Homological convention: ``d[k]`` maps degree k to degree k-1 and is stored
as a :class:`SparseMatrix` whose rows index the degree k-1 basis and whose
columns index the degree k basis.  Degree 0 is the free module R, so the
entries of ``d[1]`` generate the ideal presented by the complex.

Builders cover exactly what the resolution pipeline needs: Koszul and
Eagon-Northcott complexes, tensoring with a length-one complex R --g--> R,
the connecting chain map from the Koszul complex on row i of X~_ij into
EN (x) [g_i], and the mapping cone.  :func:`minimalize` removes unit
entries by Gaussian elimination on the complex.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Dict, Hashable, Iterable, List, Mapping, Optional, Sequence, Tuple

from .linalg import bareiss_rank
from .ring import Polynomial, Ring, Var, default_order, format_polynomial, parse_polynomial

Label = Hashable


# ---------- basis labels ----------

@dataclass(frozen=True, order=True)
class Wedge:
    """e_{i1} ^ ... ^ e_{ik} in a Koszul complex."""

    idx: Tuple[int, ...]

    def __str__(self) -> str:
        return "e" + ("".join(map(str, self.idx)) if self.idx else "0")


@dataclass(frozen=True, order=True)
class ENLabel:
    """(e_{i1} ^ ... ^ e_{i(k+1)}) (x) v1^p v2^q in the Eagon-Northcott complex."""

    idx: Tuple[int, ...]
    p: int = 0
    q: int = 0

    def __str__(self) -> str:
        return f"e{''.join(map(str, self.idx)) or '0'}v1^{self.p}v2^{self.q}"


@dataclass(frozen=True)
class Shifted:
    """A basis element of a shifted copy (tensor factor or cone summand)."""

    inner: Label
    tag: str

    def __str__(self) -> str:
        return f"{self.tag}[{self.inner}]"


@dataclass(frozen=True)
class Plain:
    """Positional label used for complexes read back from text."""

    degree: int
    pos: int

    def __str__(self) -> str:
        return f"b{self.degree}.{self.pos}"


# ---------- sparse matrices ----------

class SparseMatrix:
    """Polynomial matrix stored as {(row, col): nonzero entry}."""

    __slots__ = ("ring", "nrows", "ncols", "entries")

    def __init__(self, ring: Ring, nrows: int, ncols: int,
                 entries: Optional[Mapping[Tuple[int, int], Polynomial]] = None):
        self.ring = ring
        self.nrows = nrows
        self.ncols = ncols
        self.entries: Dict[Tuple[int, int], Polynomial] = {}
        for (r, c), v in (entries or {}).items():
            if not (0 <= r < nrows and 0 <= c < ncols):
                raise IndexError(f"entry ({r},{c}) outside a {nrows}x{ncols} matrix")
            if v:
                self.entries[(r, c)] = v

    @property
    def shape(self) -> Tuple[int, int]:
        return self.nrows, self.ncols

    def __getitem__(self, rc: Tuple[int, int]) -> Polynomial:
        return self.entries.get(rc) or self.ring.zero()

    def __eq__(self, other) -> bool:
        return (isinstance(other, SparseMatrix) and self.shape == other.shape
                and self.entries == other.entries)

    def add_to(self, r: int, c: int, v: Polynomial) -> None:
        s = self.entries.get((r, c))
        s = v if s is None else s + v
        if s:
            self.entries[(r, c)] = s
        else:
            self.entries.pop((r, c), None)

    def __matmul__(self, other: "SparseMatrix") -> "SparseMatrix":
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        by_row: Dict[int, List[Tuple[int, Polynomial]]] = {}
        for (r, c), v in other.entries.items():
            by_row.setdefault(r, []).append((c, v))
        out = SparseMatrix(self.ring, self.nrows, other.ncols)
        for (r, k), a in self.entries.items():
            for c, b in by_row.get(k, ()):
                out.add_to(r, c, a * b)
        return out

    def is_zero(self) -> bool:
        return not self.entries

    def constant_entries(self) -> List[Tuple[int, int]]:
        """Positions whose entry has a nonzero constant term."""
        return sorted(rc for rc, v in self.entries.items() if v.constant_term())

    def evaluate(self, point: Mapping[Var, int]) -> List[List[Fraction]]:
        dense = [[Fraction(0)] * self.ncols for _ in range(self.nrows)]
        for (r, c), v in self.entries.items():
            dense[r][c] = v.evaluate(point)
        return dense


def _column_map(ring: Ring, rows: Sequence[Label], cols: Sequence[Label], image) -> SparseMatrix:
    """Matrix whose column c lists ``image(cols[c])`` as (row label, coefficient) pairs."""
    pos = {lbl: k for k, lbl in enumerate(rows)}
    out = SparseMatrix(ring, len(rows), len(cols))
    for c, lbl in enumerate(cols):
        for target, coeff in image(lbl):
            out.add_to(pos[target], c, coeff)
    return out


# ---------- complexes ----------

class ComplexError(ArithmeticError):
    """A structural identity (d^2 = 0, commutation) failed."""


class FreeComplex:
    """0 -> F_L -> ... -> F_1 -> F_0 with labelled bases.

    ``bases[k]`` lists the basis labels of F_k and ``d[k]`` (k = 1..L) is the
    differential F_k -> F_{k-1}.  With ``check=True`` the construction fails
    unless every composite d[k] d[k+1] vanishes.
    """

    def __init__(self, ring: Ring, bases: Sequence[Sequence[Label]],
                 d: Mapping[int, SparseMatrix], name: str = "", check: bool = True):
        self.ring = ring
        self.bases: List[List[Label]] = [list(b) for b in bases]
        self.d: Dict[int, SparseMatrix] = dict(d)
        self.name = name
        for k in range(1, len(self.bases)):
            m = self.d.get(k)
            if m is None:
                m = self.d[k] = SparseMatrix(ring, len(self.bases[k - 1]), len(self.bases[k]))
            if m.shape != (len(self.bases[k - 1]), len(self.bases[k])):
                raise ValueError(f"d[{k}] has shape {m.shape}, expected "
                                 f"{(len(self.bases[k - 1]), len(self.bases[k]))}")
        if set(self.d) - set(range(1, len(self.bases))):
            raise ValueError("differential outside the degree range")
        if check:
            bad = self.square_failures()
            if bad:
                k, rc = bad[0]
                raise ComplexError(f"{name or 'complex'}: d[{k}] d[{k + 1}] != 0 at {rc}")

    @property
    def length(self) -> int:
        return len(self.bases) - 1

    @property
    def ranks(self) -> List[int]:
        return [len(b) for b in self.bases]

    def square_failures(self) -> List[Tuple[int, Tuple[int, int]]]:
        """(k, first nonzero position of d[k] d[k+1]) for every failing degree."""
        out = []
        for k in range(1, self.length):
            prod = self.d[k] @ self.d[k + 1]
            if not prod.is_zero():
                out.append((k, min(prod.entries)))
        return out

    def is_minimal(self) -> bool:
        return all(not m.constant_entries() for m in self.d.values())

    def euler_characteristic(self) -> int:
        return sum((-1) ** k * r for k, r in enumerate(self.ranks))

    def h0_generators(self) -> List[Polynomial]:
        """Entries of d[1]: the ideal I with H_0 = R/I (needs rank F_0 = 1)."""
        if self.ranks[0] != 1:
            raise ValueError("H_0 presentation ideal needs a cyclic F_0")
        if self.length == 0:
            return []
        return [v for (_, _c), v in sorted(self.d[1].entries.items())]

    def copy(self) -> "FreeComplex":
        return FreeComplex(self.ring, self.bases,
                           {k: SparseMatrix(m.ring, m.nrows, m.ncols, m.entries) for k, m in self.d.items()},
                           self.name, check=False)

    def __repr__(self) -> str:
        return f"FreeComplex({self.name!r}, ranks={self.ranks})"


@dataclass
class ChainMap:
    """Degree-preserving map source -> target; ``components[k]`` is F_k -> G_k."""

    source: FreeComplex
    target: FreeComplex
    components: Dict[int, SparseMatrix]
    check: bool = True

    def __post_init__(self):
        top = min(self.source.length, self.target.length)
        for k in range(self.source.length + 1):
            m = self.components.get(k)
            rows = len(self.target.bases[k]) if k <= self.target.length else 0
            if m is None:
                m = self.components[k] = SparseMatrix(self.source.ring, rows, len(self.source.bases[k]))
            if m.shape != (rows, len(self.source.bases[k])):
                raise ValueError(f"component {k} has shape {m.shape}")
        if self.check:
            for k in range(1, top + 1):
                lhs = self.target.d[k] @ self.components[k]
                rhs = self.components[k - 1] @ self.source.d[k]
                if lhs.entries != rhs.entries:
                    raise ComplexError(f"chain map does not commute in degree {k}")


# ---------- builders ----------

def _wedge_insert(idx: Tuple[int, ...], t: int) -> Tuple[int, Optional[Tuple[int, ...]]]:
    """e_idx ^ e_t = sign * e_sorted; sign 0 when t is already present."""
    if t in idx:
        return 0, None
    after = sum(1 for s in idx if s > t)
    return (-1) ** after, tuple(sorted(idx + (t,)))


def koszul(gens: Sequence[Polynomial], name: str = "Koszul") -> FreeComplex:
    """Koszul complex on ``gens``: ranks C(r, k), d(e_I) = sum_s (-1)^(s+1) f_{I_s} e_{I minus I_s}."""
    if not gens:
        raise ValueError("koszul needs at least one generator")
    if any(not g for g in gens):
        raise ValueError("koszul generators must be nonzero")
    ring = gens[0].ring
    r = len(gens)
    bases = [[Wedge(c) for c in combinations(range(1, r + 1), k)] for k in range(r + 1)]

    def image(lbl: Wedge):
        for s, i in enumerate(lbl.idx):
            sign = 1 if s % 2 == 0 else -1
            rest = lbl.idx[:s] + lbl.idx[s + 1:]
            yield Wedge(rest), gens[i - 1] * sign

    d = {k: _column_map(ring, bases[k - 1], bases[k], image) for k in range(1, r + 1)}
    return FreeComplex(ring, bases, d, name)


def _en_basis(n: int, k: int) -> List[ENLabel]:
    if k == 0:
        return [ENLabel(())]
    out = [ENLabel(c, p, k - 1 - p) for c in combinations(range(1, n + 1), k + 1) for p in range(k)]
    out.sort(key=lambda lbl: (lbl.idx, lbl.q))
    return out


def eagon_northcott_rows(a: Sequence[Polynomial], b: Sequence[Polynomial],
                         name: str = "EN") -> FreeComplex:
    """Eagon-Northcott complex of the 2 x n matrix with rows ``a`` and ``b``.

    E_0 = R, E_1 = wedge^2 with d(e_s ^ e_t) = a_s b_t - a_t b_s, and for
    k >= 2 the basis e_I (x) v1^p v2^q (|I| = k+1, p + q = k-1) maps to
    sum_s (-1)^(s+1) (a_{I_s} e_{I minus I_s} v1^(p-1) v2^q + b_{I_s} e_{I minus I_s} v1^p v2^(q-1)).
    """
    n = len(a)
    if len(b) != n or n < 2:
        raise ValueError("eagon_northcott needs two rows of equal length >= 2")
    ring = a[0].ring
    bases = [_en_basis(n, k) for k in range(n)]

    def image(lbl: ENLabel):
        if len(lbl.idx) == 2:
            s, t = lbl.idx
            yield ENLabel(()), a[s - 1] * b[t - 1] - a[t - 1] * b[s - 1]
            return
        for pos, i in enumerate(lbl.idx):
            sign = 1 if pos % 2 == 0 else -1
            rest = lbl.idx[:pos] + lbl.idx[pos + 1:]
            if lbl.p > 0:
                yield ENLabel(rest, lbl.p - 1, lbl.q), a[i - 1] * sign
            if lbl.q > 0:
                yield ENLabel(rest, lbl.p, lbl.q - 1), b[i - 1] * sign

    d = {k: _column_map(ring, bases[k - 1], bases[k], image) for k in range(1, n)}
    return FreeComplex(ring, bases, d, name)


def eagon_northcott(spec) -> FreeComplex:
    """EN complex resolving I_2(X~_ij) for an :class:`InstanceSpec` or :class:`Instance`."""
    inst = _as_instance(spec)
    a, b = inst.Xt
    return eagon_northcott_rows(a, b, name=f"EN({inst.spec.label()})")


def tensor_principal(C: FreeComplex, g: Polynomial, tag: str = "g",
                     transversal_certificate=None) -> FreeComplex:
    """C (x) [R --g--> R].

    Degree k is C_k + C_{k-1}[shift]; on the shifted copy the differential
    is (-1)^(k-1) g into C_{k-1} plus the shifted d.  The construction never
    depends on ``transversal_certificate``; it is carried only so callers
    record why the result is a resolution.
    """
    ring = C.ring
    L = C.length
    bases: List[List[Label]] = []
    for k in range(L + 2):
        own = C.bases[k] if k <= L else []
        shifted = [Shifted(lbl, tag) for lbl in C.bases[k - 1]] if k >= 1 else []
        bases.append(list(own) + shifted)
    d: Dict[int, SparseMatrix] = {}
    for k in range(1, L + 2):
        m = SparseMatrix(ring, len(bases[k - 1]), len(bases[k]))
        n_own_k = len(C.bases[k]) if k <= L else 0
        n_own_km1 = len(C.bases[k - 1])
        if k <= L:
            for (r, c), v in C.d[k].entries.items():
                m.add_to(r, c, v)
        sign = 1 if (k - 1) % 2 == 0 else -1
        for c in range(len(C.bases[k - 1])):
            m.add_to(c, n_own_k + c, g * sign)
        if k >= 2:
            for (r, c), v in C.d[k - 1].entries.items():
                m.add_to(n_own_km1 + r, n_own_k + c, v)
        d[k] = m
    out = FreeComplex(ring, bases, d, f"{C.name}(x)[{tag}]")
    out.certificate = transversal_certificate
    return out


def tau_chain_map(spec) -> ChainMap:
    """Connecting map from the Koszul complex on row i into EN (x) [g_i].

    tau_0 = -g_j.  tau_1(e_s) = -sum_t y_t (e_s ^ e_t) - b_s [shifted 1], and
    for k >= 2 tau_k(e_I) = -sum_t y_t (e_I ^ e_t) v1^(k-1) - e_I v1^(k-2)[shifted],
    so each tau_k with k >= 2 carries a -I block of size C(n, k).
    """
    inst = _as_instance(spec)
    ring, n = inst.ring, inst.n
    i, j = inst.spec.pivot
    a, b = inst.Xt
    tag = f"g{i}"
    F = koszul(a, name=f"Koszul(row {i})")
    en = eagon_northcott(inst)
    C = tensor_principal(en, inst.gi(i), tag=tag)
    Y = inst.Y
    comps: Dict[int, SparseMatrix] = {}
    comps[0] = SparseMatrix(ring, 1, 1, {(0, 0): -inst.gi(j)})

    def image(k):
        def img(lbl: Wedge):
            I = lbl.idx
            for t in range(1, n + 1):
                sign, J = _wedge_insert(I, t)
                if not sign:
                    continue
                target = ENLabel(J, k - 1, 0) if k >= 2 else ENLabel(J)
                yield target, Y[t - 1] * (-sign)
            if k == 1:
                yield Shifted(ENLabel(()), tag), -b[I[0] - 1]
            else:
                yield Shifted(ENLabel(I, k - 2, 0) if k >= 3 else ENLabel(I), tag), ring.const(-1)
        return img

    for k in range(1, F.length + 1):
        if k > C.length:
            break
        comps[k] = _column_map(ring, C.bases[k], F.bases[k], image(k))
    return ChainMap(F, C, comps)


def mapping_cone(phi: ChainMap, tag: str = "F") -> FreeComplex:
    """Cone of phi: F -> C.  W_k = F_{k-1} + C_k, d_k = [[-dF, 0], [phi_{k-1}, dC]]."""
    F, C = phi.source, phi.target
    ring = C.ring
    L = max(F.length + 1, C.length)
    bases: List[List[Label]] = []
    for k in range(L + 1):
        fpart = [Shifted(lbl, tag) for lbl in F.bases[k - 1]] if 1 <= k <= F.length + 1 else []
        cpart = list(C.bases[k]) if k <= C.length else []
        bases.append(fpart + cpart)
    d: Dict[int, SparseMatrix] = {}
    for k in range(1, L + 1):
        m = SparseMatrix(ring, len(bases[k - 1]), len(bases[k]))
        nf_k = len(F.bases[k - 1]) if k - 1 <= F.length else 0
        nf_km1 = len(F.bases[k - 2]) if 2 <= k <= F.length + 2 else 0
        if k >= 2 and k - 1 <= F.length:
            for (r, c), v in F.d[k - 1].entries.items():
                m.add_to(r, c, -v)
        if k - 1 <= F.length and k - 1 in phi.components:
            for (r, c), v in phi.components[k - 1].entries.items():
                m.add_to(nf_km1 + r, c, v)
        if k <= C.length:
            for (r, c), v in C.d[k].entries.items():
                m.add_to(nf_km1 + r, nf_k + c, v)
        d[k] = m
    return FreeComplex(ring, bases, d, f"cone({C.name})")


# ---------- minimalization ----------

@dataclass
class Cancellation:
    """One unit pivot removed between degrees k-1 and k."""

    degree: int
    row: Label
    col: Label
    unit: Fraction


def _find_unit(m: SparseMatrix, rng: Optional[random.Random]) -> Optional[Tuple[int, int]]:
    units = [rc for rc, v in m.entries.items() if v.is_constant()]
    if not units:
        return None
    if rng is None:
        return min(units)
    return rng.choice(sorted(units))


def minimalize(C: FreeComplex, rng: Optional[random.Random] = None,
               log: Optional[List[Cancellation]] = None) -> FreeComplex:
    """Cancel unit entries until every entry lies in the maximal ideal.

    For a unit u at (r, c) of d[k]: d[k] <- d[k] - (column c)(row r)/u,
    then drop row r and column c, column r of d[k-1] and row c of d[k+1].
    This is a change of basis splitting off 0 -> R --u--> R -> 0, so
    homology is unchanged.  Without ``rng`` the scan is deterministic
    (lowest degree, then lowest (row, col)); with ``rng`` the pivot is
    drawn at random, which must not change the final ranks.
    """
    W = C.copy()
    bases = W.bases
    d = W.d
    while True:
        degrees = list(range(1, W.length + 1))
        if rng is not None:
            rng.shuffle(degrees)
        hit = None
        for k in degrees:
            rc = _find_unit(d[k], rng)
            if rc is not None:
                hit = (k, rc)
                break
        if hit is None:
            break
        k, (r, c) = hit
        m = d[k]
        u = m[(r, c)].constant_term()
        if log is not None:
            log.append(Cancellation(k, bases[k - 1][r], bases[k][c], u))
        col = {rr: v for (rr, cc), v in m.entries.items() if cc == c and rr != r}
        row = {cc: v for (rr, cc), v in m.entries.items() if rr == r and cc != c}
        inv = Fraction(1) / u
        for rr, a in col.items():
            for cc, b in row.items():
                m.add_to(rr, cc, -(a * b) * inv)
        d[k] = _delete(m, rows={r}, cols={c})
        if k - 1 >= 1:
            d[k - 1] = _delete(d[k - 1], rows=set(), cols={r})
        if k + 1 <= W.length:
            d[k + 1] = _delete(d[k + 1], rows={c}, cols=set())
        del bases[k - 1][r]
        del bases[k][c]
    while len(bases) > 1 and not bases[-1]:
        d.pop(len(bases) - 1, None)
        bases.pop()
    return FreeComplex(W.ring, bases, d, f"min({C.name})")


def _delete(m: SparseMatrix, rows: set, cols: set) -> SparseMatrix:
    def shift(x, gone):
        return x - sum(1 for g in gone if g < x)

    out = SparseMatrix(m.ring, m.nrows - len(rows), m.ncols - len(cols))
    for (r, c), v in m.entries.items():
        if r in rows or c in cols:
            continue
        out.entries[(shift(r, rows), shift(c, cols))] = v
    return out


def cancellation_counts(log: Iterable[Cancellation]) -> Dict[int, int]:
    """Number of pivots per degree k (pivot between degrees k-1 and k)."""
    out: Dict[int, int] = {}
    for ev in log:
        out[ev.degree] = out.get(ev.degree, 0) + 1
    return out


# ---------- verification ----------

@dataclass
class ComplexReport:
    ranks: List[int]
    square_zero: Dict[int, bool]
    square_failures: List[Tuple[int, Tuple[int, int]]]
    minimal: bool
    non_minimal_entries: List[Tuple[int, Tuple[int, int]]]
    euler: int
    h0_basis: List[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.square_failures

    def to_dict(self) -> dict:
        return {
            "ranks": self.ranks,
            "square_zero": {str(k): v for k, v in self.square_zero.items()},
            "square_failures": [{"degree": k, "position": list(rc)} for k, rc in self.square_failures],
            "minimal": self.minimal,
            "non_minimal_entries": [{"degree": k, "position": list(rc)} for k, rc in self.non_minimal_entries],
            "euler": self.euler,
            "h0_basis": self.h0_basis,
        }


def verify_complex(C: FreeComplex, order=None) -> ComplexReport:
    """d^2 per degree, minimality, Euler characteristic, reduced GB of the H_0 ideal."""
    from .groebner import Ideal

    fails = C.square_failures()
    failing = {k for k, _ in fails}
    sq = {k: k not in failing for k in range(1, C.length)}
    nonmin = [(k, rc) for k in range(1, C.length + 1) for rc in C.d[k].constant_entries()]
    h0: List[str] = []
    if C.ranks[0] == 1 and C.length >= 1:
        order = order or default_order(C.ring)
        gens = C.h0_generators()
        if gens:
            h0 = [format_polynomial(p, order) for p in Ideal.of(gens, C.ring).groebner(order)]
    return ComplexReport(C.ranks, sq, fails, not nonmin, nonmin, C.euler_characteristic(), h0)


# ---------- exactness probe ----------

@dataclass
class ProbeTrial:
    ranks: List[int]
    passed: bool
    attempts: int


@dataclass
class ProbeReport:
    trials: List[ProbeTrial]

    @property
    def passed(self) -> int:
        return sum(t.passed for t in self.trials)

    @property
    def ok(self) -> bool:
        return all(t.passed for t in self.trials)

    def to_dict(self) -> dict:
        return {"passed": self.passed, "trials": len(self.trials),
                "detail": [{"ranks": t.ranks, "passed": t.passed, "attempts": t.attempts}
                           for t in self.trials]}


def specialized_ranks(C: FreeComplex, point: Mapping[Var, int]) -> List[int]:
    """r_k = rank d[k](point) for k = 1..L."""
    return [bareiss_rank(C.d[k].evaluate(point)) for k in range(1, C.length + 1)]


def _rank_condition(b: Sequence[int], r: Sequence[int]) -> bool:
    # r[k-1] is rank d_k; exactness of 0 -> F_L -> ... -> F_0 -> R/I with I != 0
    # over the fraction field means r_1 = b_0 and r_k + r_{k+1} = b_k.
    L = len(b) - 1
    rk = list(r) + [0]
    if L == 0:
        return False
    if rk[0] != b[0]:
        return False
    return all(rk[k - 1] + rk[k] == b[k] for k in range(1, L + 1))


def exactness_probe(C: FreeComplex, trials: int = 3, seed: int = 0,
                    resample: int = 2, bound: int = 999) -> ProbeReport:
    """Rank test of the specialized differentials at random integer points.

    Ranks at a point never exceed the generic ranks, and d^2 = 0 gives
    r_k + r_{k+1} <= b_k, so a point that satisfies the rank conditions
    proves the generic ones hold.  A failing point is retried up to
    ``resample`` times to rule out an unlucky specialization.
    Passing is evidence of exactness, not a proof.
    """
    rng = random.Random(seed)
    b = C.ranks
    out = []
    for _ in range(trials):
        attempts = 0
        while True:
            attempts += 1
            point = {v: rng.randint(-bound, bound) for v in C.ring.variables}
            r = specialized_ranks(C, point)
            ok = _rank_condition(b, r)
            if ok or attempts > resample:
                break
        out.append(ProbeTrial(r, ok, attempts))
    return ProbeReport(out)


# ---------- text format ----------

def dumps(C: FreeComplex) -> str:
    """Header (ring, length, ranks) plus one ``d[k] (r,c) = poly`` line per nonzero entry."""
    ring = C.ring
    lines = [f"ring n={ring.n} kind={ring.kind}", f"length {C.length}",
             "ranks " + " ".join(map(str, C.ranks))]
    order = default_order(ring)
    for k in range(1, C.length + 1):
        for (r, c), v in sorted(C.d[k].entries.items()):
            lines.append(f"d[{k}] ({r},{c}) = {format_polynomial(v, order)}")
    return "\n".join(lines) + "\n"


def loads(text: str, check: bool = True) -> FreeComplex:
    """Inverse of :func:`dumps`; labels come back as :class:`Plain` positions."""
    import re

    ring = None
    length = None
    ranks = None
    entries: Dict[int, Dict[Tuple[int, int], Polynomial]] = {}
    entry_re = re.compile(r"d\[(\d+)\]\s*\(\s*(\d+)\s*,\s*(\d+)\s*\)\s*=\s*(.+)$")
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("ring"):
            fields = dict(tok.split("=", 1) for tok in line.split()[1:])
            ring = Ring.instance(int(fields["n"]), fields.get("kind", "generic"))
        elif line.startswith("length"):
            length = int(line.split()[1])
        elif line.startswith("ranks"):
            ranks = [int(t) for t in line.split()[1:]]
        else:
            mt = entry_re.match(line)
            if not mt:
                raise ValueError(f"line {lineno}: cannot parse {raw!r}")
            if ring is None:
                raise ValueError(f"line {lineno}: entry before the ring header")
            k, r, c = int(mt.group(1)), int(mt.group(2)), int(mt.group(3))
            entries.setdefault(k, {})[(r, c)] = parse_polynomial(mt.group(4), ring)
    if ring is None or ranks is None:
        raise ValueError("missing ring or ranks header")
    if length is not None and length != len(ranks) - 1:
        raise ValueError(f"length {length} disagrees with {len(ranks)} ranks")
    bases = [[Plain(k, p) for p in range(r)] for k, r in enumerate(ranks)]
    d = {k: SparseMatrix(ring, ranks[k - 1], ranks[k], entries.get(k, {}))
         for k in range(1, len(ranks))}
    if set(entries) - set(d):
        raise ValueError("entry for a differential outside the length")
    return FreeComplex(ring, bases, d, "loaded", check=check)


def _as_instance(spec):
    from .constructions import Instance, InstanceSpec

    if isinstance(spec, Instance):
        return spec
    if isinstance(spec, InstanceSpec):
        return Instance(spec)
    raise TypeError("expected an InstanceSpec or Instance")
