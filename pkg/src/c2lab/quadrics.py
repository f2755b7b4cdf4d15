"""Position-space counting: the union of propagator quadrics.

Every vertex v <= n carries a 4-vector x_v over F_q (the last vertex is
pinned to zero); an edge (s, t) contributes the quadric
|x_s - x_t|^2 = y^1 y^2 + y^3 y^4 in the difference y.  The main count is
the number of points of F_q^{4n} where the product of all edge quadrics
vanishes.  Enumeration is blocked and vectorized like the parametric
kernel; a naive per-point evaluator is kept as an independent oracle.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from .counting import CountReport, count_zeros, sing_count, _check_budget, _inner_columns
from .errors import PreconditionUnmet
from .fields import FqField
from .graphs import Graph, delete, is_connected
from .matform import eval_rank, p_matrix
from .multipoly import phi

_BLOCK_TARGET = 1 << 16


def _coord_index(v: int, j: int) -> int:
    """Flat coordinate index for vertex v (1-based), component j in 0..3."""
    return 4 * (v - 1) + j


def _edge_quadrics(G: Graph):
    """(s, t) vertex pairs per edge, with the pinned vertex mapped to None."""
    pinned = G.vertex_count
    out = []
    for u, v in G.edges:
        out.append((u if u != pinned else None, v if v != pinned else None))
    return out


def quadric_union_count(
    G: Graph, F: FqField, *, budget: int | None = None, threads: int = 1
) -> CountReport:
    """Points of F_q^{4n} where q_1 * ... * q_N vanishes."""
    n = G.n
    if n < 1:
        raise PreconditionUnmet("position space needs at least one free vertex")
    m = 4 * n
    _check_budget(F.q, m, budget)
    q = F.q
    pairs = _edge_quadrics(G)
    if any(s == t for s, t in pairs):
        # a self-loop's quadric is identically zero: the union is everything
        return CountReport.from_raw(q**m, q, m)

    values = np.arange(q, dtype=np.int64)
    b = 0
    while b < m and q ** (b + 1) <= _BLOCK_TARGET:
        b += 1
    n_outer = m - b
    if F.is_prime:
        cols = _inner_columns(values, b)
    else:
        cols = [c.astype(np.uint8) for c in _inner_columns(values, b)]
    block = len(cols[0]) if cols else 1

    def coord(outer, v, j):
        """Scalar (outer) or column (inner) for one coordinate; None if pinned."""
        if v is None:
            return 0
        t = _coord_index(v, j)
        return outer[t] if t < n_outer else cols[t - n_outer]

    def eval_quadric_prime(outer, s, t):
        p = F.p
        acc = np.zeros(block, dtype=np.int64)
        for j in (0, 2):
            d1 = coord(outer, s, j) - coord(outer, t, j)
            d2 = coord(outer, s, j + 1) - coord(outer, t, j + 1)
            acc = acc + d1 * d2
        return acc % p

    def eval_quadric_tables(outer, s, t):
        add, mul, neg = F.add_table, F.mul_table, F.neg_table

        def diff(a, b):
            if isinstance(a, int) and isinstance(b, int):
                return F.sub(a, b)
            a_arr = np.full(block, a, dtype=np.uint8) if isinstance(a, int) else a
            b_arr = np.full(block, b, dtype=np.uint8) if isinstance(b, int) else b
            return add[a_arr, neg[b_arr]]

        acc = np.zeros(block, dtype=np.uint8)
        for j in (0, 2):
            d1 = diff(coord(outer, s, j), coord(outer, t, j))
            d2 = diff(coord(outer, s, j + 1), coord(outer, t, j + 1))
            prod = mul[d1, d2] if not isinstance(d1, int) else np.full(block, F.mul(d1, d2), dtype=np.uint8)
            acc = add[acc, prod]
        return acc

    def run(chunk) -> int:
        total = 0
        for outer in chunk:
            mask = np.zeros(block, dtype=bool)
            for s, t in pairs:
                if F.is_prime:
                    vals = eval_quadric_prime(outer, s, t)
                else:
                    vals = eval_quadric_tables(outer, s, t)
                mask |= np.asarray(vals) == 0
                if mask.all():
                    break
            total += int(mask.sum())
        return total

    outer_space = itertools.product(range(q), repeat=n_outer)
    if threads <= 1:
        raw = run(outer_space)
    else:
        outer_list = list(outer_space)
        size = max(1, (len(outer_list) + threads - 1) // threads)
        chunks = [outer_list[i : i + size] for i in range(0, len(outer_list), size)]
        with ThreadPoolExecutor(max_workers=threads) as pool:
            raw = sum(pool.map(run, chunks))
    return CountReport.from_raw(raw, q, m)


def quadric_union_count_direct(G: Graph, F: FqField, limit: int = 1 << 20) -> int:
    """Independent oracle: one plain Python loop over every lattice point."""
    n = G.n
    m = 4 * n
    if F.q**m > limit:
        raise PreconditionUnmet("direct quadric oracle is for tiny inputs only")
    pairs = _edge_quadrics(G)
    count = 0
    for point in itertools.product(F.elements(), repeat=m):

        def comp(v, j):
            return 0 if v is None else point[_coord_index(v, j)]

        for s, t in pairs:
            acc = 0
            for j in (0, 2):
                d1 = F.sub(comp(s, j), comp(t, j))
                d2 = F.sub(comp(s, j + 1), comp(t, j + 1))
                acc = F.add(acc, F.mul(d1, d2))
            if acc == 0:
                count += 1
                break
    return count


def quadric_system_count(
    G: Graph, F: FqField, edge_subset, *, budget: int | None = None, threads: int = 1
) -> int:
    """Common zeros of the quadrics of ``edge_subset`` in F_q^{4n}."""
    n = G.n
    m = 4 * n
    _check_budget(F.q, m, budget)
    pairs = [p for lab, p in zip(G.labels, _edge_quadrics(G)) if lab in set(edge_subset)]
    if not pairs:
        return F.q**m
    # reuse the union kernel's evaluation by De Morgan on per-point masks
    q = F.q
    values = np.arange(q, dtype=np.int64)
    b = 0
    while b < m and q ** (b + 1) <= _BLOCK_TARGET:
        b += 1
    n_outer = m - b
    cols = _inner_columns(values, b)
    if not F.is_prime:
        cols = [c.astype(np.uint8) for c in cols]
    block = len(cols[0]) if cols else 1

    def coord(outer, v, j):
        if v is None:
            return 0
        t = _coord_index(v, j)
        return outer[t] if t < n_outer else cols[t - n_outer]

    def run(chunk) -> int:
        total = 0
        for outer in chunk:
            mask = np.ones(block, dtype=bool)
            for s, t in pairs:
                if F.is_prime:
                    acc = np.zeros(block, dtype=np.int64)
                    for j in (0, 2):
                        d1 = coord(outer, s, j) - coord(outer, t, j)
                        d2 = coord(outer, s, j + 1) - coord(outer, t, j + 1)
                        acc = acc + d1 * d2
                    vals = acc % F.p
                else:
                    add, mul, neg = F.add_table, F.mul_table, F.neg_table
                    acc = np.zeros(block, dtype=np.uint8)
                    for j in (0, 2):
                        a = coord(outer, s, j)
                        bb = coord(outer, t, j)
                        c = coord(outer, s, j + 1)
                        d = coord(outer, t, j + 1)
                        a = np.full(block, a, dtype=np.uint8) if isinstance(a, int) else a
                        bb = np.full(block, bb, dtype=np.uint8) if isinstance(bb, int) else bb
                        c = np.full(block, c, dtype=np.uint8) if isinstance(c, int) else c
                        d = np.full(block, d, dtype=np.uint8) if isinstance(d, int) else d
                        acc = add[acc, mul[add[a, neg[bb]], add[c, neg[d]]]]
                    vals = acc
                mask &= np.asarray(vals) == 0
                if not mask.any():
                    break
            total += int(mask.sum())
        return total

    outer_space = itertools.product(range(q), repeat=n_outer)
    if threads <= 1:
        return run(outer_space)
    outer_list = list(outer_space)
    size = max(1, (len(outer_list) + threads - 1) // threads)
    chunks = [outer_list[i : i + size] for i in range(0, len(outer_list), size)]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return sum(pool.map(run, chunks))


def restricted_matrix_rank_sums(G: Graph, F: FqField, edge_subset):
    """Point statistics of P_G(alpha) with variables outside the subset zeroed.

    Returns (sum of q^(2*corank), #{det = 0}, #{rank < n-1}) over all
    assignments to the surviving variables.
    """
    labels = sorted(set(edge_subset))
    P = p_matrix(G)
    n = G.n
    q = F.q
    others = {lab: 0 for lab in G.labels if lab not in labels}
    s_corank = 0
    n_sing = 0
    n_deep = 0
    for vals in itertools.product(F.elements(), repeat=len(labels)):
        point = dict(zip(labels, vals))
        point.update(others)
        r = eval_rank(P, point, F)
        corank = n - r
        s_corank += q ** (2 * corank)
        if corank > 0:
            n_sing += 1
        if r < n - 1:
            n_deep += 1
    return s_corank, n_sing, n_deep


def quadric_congruence_rhs(G: Graph, F: FqField, *, budget: int | None = None) -> int:
    """Right side of the mod-q^3 congruence for the quadric union count.

    (-q)^(2n-N) ([phi_G] + q^2 [Sing(Z_G)] - q sum_i [phi_{G\\i}]
                 + q^2 sum_{i<j} [phi_{G\\ij}])   (mod q^3)
    """
    N, n = G.edge_count, G.n
    if N > 2 * n:
        raise PreconditionUnmet("the congruence needs N_G <= 2 n_G")
    if not is_connected(G):
        raise PreconditionUnmet("the congruence is stated for connected graphs")
    q = F.q
    phi_count = count_zeros([phi(G)], F, N, budget=budget).raw
    sing = sing_count(G, F, "jacobian", budget=budget).raw
    sum_one = 0
    labels = sorted(G.labels)
    for i in labels:
        sum_one += count_zeros([phi(delete(G, {i}))], F, N - 1, budget=budget).raw
    sum_two = 0
    for i, j in itertools.combinations(labels, 2):
        sum_two += count_zeros([phi(delete(G, {i, j}))], F, N - 2, budget=budget).raw
    total = (-q) ** (2 * n - N) * (
        phi_count + q**2 * sing - q * sum_one + q**2 * sum_two
    )
    return total % q**3
