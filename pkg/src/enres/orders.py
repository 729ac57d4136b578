"""Named lexicographic orders used by the Groebner and transversality checks.

Every preset is a full priority list over the instance ring.  Variables a
preset does not single out are appended row-major (x), followed by the y's
where the preset says so, so each preset is a permutation of exactly the
ring's variables.

Three families, each with a generic and a symmetric variant:

* ``A``: the 2 x 2 minors of X~_ij are a Groebner basis and the leading
  term of g_i avoids every leading term of the minors.
* ``B``: the adjacent-column minors have pairwise coprime leading terms.
* ``C``: minors plus g_i, g_j, g_l1, ... form a Groebner basis at every
  stage, and the next g has a leading term x_ll y_l coprime to all of it.
"""

from __future__ import annotations

from typing import Callable, Dict, List, Sequence

from .ring import MonomialOrder, Ring, Var, default_order, x, y


def _complete(ring: Ring, head: Sequence[Var], tail: Sequence[Var] = ()) -> List[Var]:
    """``head`` (canonicalized, deduplicated), remaining x row-major, ``tail``, then the rest."""
    out: List[Var] = []
    seen = set()

    def push(v):
        if v not in seen:
            seen.add(v)
            out.append(v)

    for v in head:
        push(ring.canon(v))
    tail = [ring.canon(v) for v in tail]
    tail_set = set(tail)
    for v in ring.variables:
        if v.kind == "x" and v not in tail_set:
            push(v)
    for v in tail:
        push(v)
    for v in ring.variables:
        push(v)
    return out


def pivot_columns(n: int, i: int, j: int) -> List[int]:
    """Columns i, then the remaining indices ascending, then j."""
    return [i] + [t for t in range(1, n + 1) if t not in (i, j)] + [j]


def g_sequence(n: int, i: int, j: int) -> List[int]:
    """i, j, then l_1 < l_2 < ... (the order in which the g's are added)."""
    return [i, j] + [t for t in range(1, n + 1) if t not in (i, j)]


def _sym_row_i(ring: Ring, i: int, j: int) -> List[Var]:
    """x_ii > x_ij > x_1i > ... > x_in (row i of a symmetric X~_ij, pivot entries first)."""
    n = ring.n
    return [x(i, i), x(i, j)] + [x(i, t) for t in range(1, n + 1) if t not in (i, j)]


def _sym_row_j(ring: Ring, i: int, j: int) -> List[Var]:
    """x_jj > x_1j > ... > x_jn, skipping the shared x_ij."""
    n = ring.n
    return [x(j, j)] + [x(j, t) for t in range(1, n + 1) if t not in (i, j)]


# ---- A family

def order_a(ring: Ring, i: int = 1, j: int = 2) -> MonomialOrder:
    """Generic: y_n > ... > y_1 > x_11 > x_12 > ... (row-major), for every pivot."""
    if ring.symmetric:
        return order_a_sym(ring, i, j)
    n = ring.n
    return MonomialOrder("ORDER_A", tuple(_complete(ring, [y(k) for k in range(n, 0, -1)])))


def order_a_sym(ring: Ring, i: int, j: int) -> MonomialOrder:
    """y_c > (other y descending) > x_ii > x_ij > row i > x_jj > row j > rest.

    ``c`` is the last column in the row-i ordering, so Lt(g_i) = y_c x_ic and
    x_ic never occurs in a leading term of the minors.  For j < n this is
    y_n first; for (i, j) = (n-1, n) it is y_{n-2}.
    """
    n = ring.n
    c = max((t for t in range(1, n + 1) if t not in (i, j)), default=n)
    ys = [y(c)] + [y(k) for k in range(n, 0, -1) if k != c]
    head = ys + _sym_row_i(ring, i, j) + _sym_row_j(ring, i, j)
    return MonomialOrder(f"ORDER_A_SYM[{i},{j}]", tuple(_complete(ring, head)))


def order_trans_sym(ring: Ring, i: int, j: int) -> MonomialOrder:
    """Symmetric transversality order for (i, j) != (n-1, n)."""
    if (i, j) == (ring.n - 1, ring.n):
        raise ValueError("use order_trans_sym_last for the pivot (n-1, n)")
    return order_a_sym(ring, i, j)


def order_trans_sym_last(ring: Ring) -> MonomialOrder:
    """Symmetric transversality order for the pivot (n-1, n)."""
    return order_a_sym(ring, ring.n - 1, ring.n)


# ---- B family

def order_b(ring: Ring, i: int, j: int) -> MonomialOrder:
    """x_i1 > ... > x_in > x_j2 > ... > x_jn > x_j1 > other x > y_n > ... > y_1."""
    if ring.symmetric:
        return order_b_sym(ring, i, j)
    n = ring.n
    head = [x(i, t) for t in range(1, n + 1)] + [x(j, t) for t in range(2, n + 1)] + [x(j, 1)]
    ys = [y(k) for k in range(n, 0, -1)]
    return MonomialOrder(f"ORDER_B[{i},{j}]", tuple(_complete(ring, head, ys)))


def order_b_sym(ring: Ring, i: int, j: int) -> MonomialOrder:
    """Row i, then row j, both read along :func:`pivot_columns`; y's last."""
    n = ring.n
    cols = pivot_columns(n, i, j)
    head = [x(i, t) for t in cols] + [x(j, t) for t in cols]
    ys = [y(k) for k in range(n, 0, -1)]
    return MonomialOrder(f"ORDER_B_SYM[{i},{j}]", tuple(_complete(ring, head, ys)))


# ---- C family

def order_c(ring: Ring, i: int, j: int) -> MonomialOrder:
    """Other diagonal entries > y_i > y_j > y_l1 > ... > row i > row j > rest.

    Rows are read in the column sequence i, j, l_1, ...; for (i, j) = (1, 2)
    this is x_nn > ... > x_33 > y_1 > ... > y_n > x_11 > ... > x_1n > x_21 > ... > x_2n.
    """
    if ring.symmetric:
        return order_c_sym(ring, i, j)
    n = ring.n
    seq = g_sequence(n, i, j)
    head = (
        [x(t, t) for t in reversed(seq[2:])]
        + [y(t) for t in seq]
        + [x(i, t) for t in seq]
        + [x(j, t) for t in seq]
    )
    return MonomialOrder(f"ORDER_C[{i},{j}]", tuple(_complete(ring, head)))


def order_c_sym(ring: Ring, i: int, j: int) -> MonomialOrder:
    """As :func:`order_c`, but rows are read along :func:`pivot_columns`.

    The shared entry x_ij then comes last in row i, which keeps it out of
    the leading terms of the minors.
    """
    n = ring.n
    seq = g_sequence(n, i, j)
    cols = pivot_columns(n, i, j)
    head = (
        [x(t, t) for t in reversed(seq[2:])]
        + [y(t) for t in seq]
        + [x(i, t) for t in cols]
        + [x(j, t) for t in cols]
    )
    return MonomialOrder(f"ORDER_C_SYM[{i},{j}]", tuple(_complete(ring, head)))


PRESETS: Dict[str, Callable[[Ring, int, int], MonomialOrder]] = {
    "A": order_a,
    "B": order_b,
    "C": order_c,
}


def named_order(name: str, ring: Ring, i: int, j: int) -> MonomialOrder:
    """Resolve ``A``/``B``/``C`` (or ``ORDER_A``, ``ORDER_A_SYM``, ...) or ``default``."""
    if name.lower() == "default":
        return default_order(ring)
    key = name.upper()
    if key.startswith("ORDER_"):
        key = key[len("ORDER_"):]
    if key.endswith("_SYM"):
        key = key[: -len("_SYM")]
    if key not in PRESETS:
        raise ValueError(f"unknown order {name!r}; expected A, B, C or default")
    return PRESETS[key](ring, i, j)
