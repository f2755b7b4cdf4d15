"""Named polynomial identities with sign-witness search.

The source statements carry undetermined signs (and one suspected typo), so
each check is existential over the allowed sign slots and reports the
witness that makes the identity exact.  A returned ``holds=False`` means no
sign assignment works, which would be refutation data.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .errors import BadIndices
from .graphs import Graph, contract, delete, girth_at_most, is_connected
from .multipoly import (
    MLPoly,
    phi,
    phi_dodgson_pair,
    resultant,
)


@dataclass
class IdentityResult:
    name: str
    holds: bool
    witness: dict = field(default_factory=dict)

    def __bool__(self):
        return self.holds


def _phi_split2(G: Graph, i: int, j: int):
    """The four iterated coefficients of phi with respect to a_i, a_j."""
    f = phi(G)
    fi, f_i = f.coeff_and_rest(i)
    fij, fi_j = fi.coeff_and_rest(j)
    f_ij, f_i_j = f_i.coeff_and_rest(j)
    # fij = phi^{ij}, fi_j = phi^i_j, f_ij = phi^j_i, f_i_j = phi_{ij}
    return fij, fi_j, f_ij, f_i_j


def check_identity(name: str, G: Graph, indices=None) -> IdentityResult:
    """Verify one named identity on G; see _CHECKS for the catalogue."""
    fn = _CHECKS.get(name)
    if fn is None:
        raise BadIndices(f"unknown identity {name!r}; known: {sorted(_CHECKS)}")
    return fn(G, indices or {})


def _get(indices, key):
    if key not in indices:
        raise BadIndices(f"identity needs index {key!r}")
    return indices[key]


def _c10(G: Graph, indices) -> IdentityResult:
    k = _get(indices, "k")
    f = phi(G)
    hi, lo = f.coeff_and_rest(k)
    u, v = G.endpoints(k)
    if u == v:
        ok = hi.is_zero and lo == phi(delete(G, {k}))
        return IdentityResult("c10", ok, {"case": "self-loop"})
    ok = hi == phi(contract(G, {k})) and lo == phi(delete(G, {k}))
    return IdentityResult("c10", ok, {"case": "regular"})


def _e100(G: Graph, indices) -> IdentityResult:
    k = _get(indices, "k")
    u, v = G.endpoints(k)
    if u != v:
        raise BadIndices(f"edge {k} is not a self-loop")
    ok = phi(G) == phi(delete(G, {k}))
    return IdentityResult("e100", ok)


def _e101(G: Graph, indices) -> IdentityResult:
    a, b = _get(indices, "pair")
    ea, eb = G.endpoints(a), G.endpoints(b)
    if ea != eb or ea[0] == ea[1]:
        raise BadIndices(f"edges {a},{b} are not a parallel pair")
    lhs = phi(G)
    mid = phi(contract(delete(G, {a}), {b}))
    rhs = mid * (MLPoly.variable(a) + MLPoly.variable(b)) + phi(delete(G, {a, b}))
    return IdentityResult("e101", lhs == rhs)


def _c14(G: Graph, indices) -> IdentityResult:
    i, j = _get(indices, "i"), _get(indices, "j")
    fij, fi_j, f_ij, f_i_j = _phi_split2(G, i, j)
    rhs = phi_dodgson_pair(G, {i}, {j}) ** 2
    lhs_main = fi_j * f_ij
    for s in (1, -1):
        if lhs_main + s * (fij * f_i_j) == rhs:
            return IdentityResult("c14", True, {"sign": s})
    return IdentityResult("c14", False)


def _c15(G: Graph, indices) -> IdentityResult:
    i, j = _get(indices, "i"), _get(indices, "j")
    f = phi(G)
    fi = f.coeff_and_rest(i)[0]
    fj = f.coeff_and_rest(j)[0]
    fij, fi_j, f_ij, f_i_j = _phi_split2(G, i, j)
    rhs = phi_dodgson_pair(G, {i}, {j}) ** 2
    for s in (1, -1):
        first = fj * fi + s * (fij * f)
        second = fi_j * f_ij + s * (fij * f_i_j)
        if first == second == rhs:
            return IdentityResult("c15", True, {"sign": s})
    return IdentityResult("c15", False)


def _c18(G: Graph, indices) -> IdentityResult:
    I = frozenset(indices.get("I", ()))
    J = frozenset(indices.get("J", ()))
    S = frozenset(indices.get("S", ()))
    K = frozenset(indices.get("K", ()))
    a, b, x = _get(indices, "a"), _get(indices, "b"), _get(indices, "x")
    IK, JK = I | K, J | K
    t1 = phi_dodgson_pair(G, IK | {x}, JK | {x}, S) * phi_dodgson_pair(
        G, IK | {a}, JK | {b}, S | {x}
    )
    t2 = phi_dodgson_pair(G, IK, JK, S | {x}) * phi_dodgson_pair(
        G, IK | {a, x}, JK | {b, x}, S
    )
    rhs = phi_dodgson_pair(G, IK | {x}, JK | {b}, S) * phi_dodgson_pair(
        G, IK | {a}, JK | {x}, S
    )
    # sign of each product depends on row/column conventions: resolve both
    # the relative sign of the left terms and the right-hand sign
    for s2, s3 in itertools.product((1, -1), repeat=2):
        if t1 + s2 * t2 == s3 * rhs:
            return IdentityResult("c18", True, {"lhs_sign": s2, "rhs_sign": s3})
    return IdentityResult("c18", False)


def _c20(G: Graph, indices) -> IdentityResult:
    I = frozenset(indices.get("I", ()))
    J = frozenset(indices.get("J", ()))
    S = frozenset(indices.get("S", ()))
    K = frozenset(indices.get("K", ()))
    if len(J) != len(I) + 1:
        raise BadIndices("c20 needs |J| = |I| + 1")
    a, b, x = _get(indices, "a"), _get(indices, "b"), _get(indices, "x")
    IK, JK = I | K, J | K
    t1 = phi_dodgson_pair(G, IK | {a, x}, JK | {x}, S) * phi_dodgson_pair(
        G, IK | {b}, JK, S | {x}
    )
    t2 = phi_dodgson_pair(G, IK | {a}, JK, S | {x}) * phi_dodgson_pair(
        G, IK | {b, x}, JK | {x}, S
    )
    rhs = phi_dodgson_pair(G, IK | {x}, JK, S) * phi_dodgson_pair(
        G, IK | {a, b}, JK | {x}, S
    )
    for s2, s3 in itertools.product((1, -1), repeat=2):
        if t1 + s2 * t2 == s3 * rhs:
            return IdentityResult("c20", True, {"lhs_sign": s2, "rhs_sign": s3})
    return IdentityResult("c20", False)


def _c100(G: Graph, indices) -> IdentityResult:
    """Corolla: phi_{G,1} = sum_i lambda_i a_i phi^{1,i} over the star of a vertex."""
    edges = tuple(_get(indices, "edges"))
    e1, rest = edges[0], edges[1:]
    verts = [set(G.endpoints(l)) for l in edges]
    common = set.intersection(*verts) if verts else set()
    if not common:
        raise BadIndices("corolla edges must share a vertex")
    target = phi(G).coeff_and_rest(e1)[1]
    parts = [MLPoly.variable(i) * phi_dodgson_pair(G, {e1}, {i}) for i in rest]
    return _lambda_search("c100", target, parts)


def _c101(G: Graph, indices) -> IdentityResult:
    """Cycle: phi^1 = sum_i lambda_i phi^{1,i} over the other cycle edges."""
    edges = tuple(_get(indices, "edges"))
    e1, rest = edges[0], edges[1:]
    target = phi(G).coeff_and_rest(e1)[0]
    parts = [phi_dodgson_pair(G, {e1}, {i}) for i in rest]
    return _lambda_search("c101", target, parts)


def _lambda_search(name: str, target: MLPoly, parts) -> IdentityResult:
    for signs in itertools.product((1, -1), repeat=len(parts)):
        acc = MLPoly.zero()
        for s, p in zip(signs, parts):
            acc = acc + s * p
        if acc == target:
            return IdentityResult(name, True, {"lambda": list(signs)})
    return IdentityResult(name, False)


def _cor7(G: Graph, indices) -> IdentityResult:
    """(phi^{i,k})^2 = phi^k phi^i_k - phi_k phi^{ik} (radical membership core)."""
    i, k = _get(indices, "i"), _get(indices, "k")
    f = phi(G)
    fk, f_k = f.coeff_and_rest(k)
    fi = f.coeff_and_rest(i)[0]
    fik, fi_k = fi.coeff_and_rest(k)
    lhs = phi_dodgson_pair(G, {i}, {k}) ** 2
    rhs = fk * fi_k - f_k * fik
    if lhs == rhs:
        return IdentityResult("cor7", True, {"sign": 1})
    if lhs == -rhs:
        return IdentityResult("cor7", True, {"sign": -1})
    return IdentityResult("cor7", False)


# Candidate right-hand sides for the resultant lemma [phi^i, phi^j]_k, whose
# printed form repeats the factor phi^{ij,jk} in both terms (a typo).  Each
# candidate is a pair of (A, B) index-pair builders for phi^{A,B} products.
# "first-ij-ik" is the correction that holds universally in sweeps:
#   [phi^i, phi^j]_k = phi^{ij,ik} phi^{j,k} - phi^{ij,jk} phi^{i,k}.
_RESULTANT_VARIANTS = {
    "printed": lambda i, j, k: ((({i, j}, {j, k}), ({j}, {k})), (({i, j}, {j, k}), ({i}, {k}))),
    "first-ij-ik": lambda i, j, k: ((({i, j}, {i, k}), ({j}, {k})), (({i, j}, {j, k}), ({i}, {k}))),
    "second-ij-ik": lambda i, j, k: ((({i, j}, {j, k}), ({j}, {k})), (({i, j}, {i, k}), ({i}, {k}))),
    "ik-jk-first": lambda i, j, k: ((({i, k}, {j, k}), ({j}, {k})), (({i, j}, {j, k}), ({i}, {k}))),
}


def resultant_lemma_variants(G: Graph, i: int, j: int, k: int) -> dict:
    """Which corrections of the resultant lemma hold on G at (i, j, k).

    Returns variant name -> sign pair or None, testing
    [phi^i, phi^j]_k = s1 * phi^{A1} phi^{B1} + s2 * phi^{A2} phi^{B2}.
    """
    f = phi(G)
    fi = f.coeff_and_rest(i)[0]
    fj = f.coeff_and_rest(j)[0]
    lhs = resultant(fi, fj, k)
    out = {}
    for name, mk in _RESULTANT_VARIANTS.items():
        (A1, B1), (A2, B2) = mk(i, j, k)
        try:
            t1 = phi_dodgson_pair(G, *A1) * phi_dodgson_pair(G, *B1)
            t2 = phi_dodgson_pair(G, *A2) * phi_dodgson_pair(G, *B2)
        except BadIndices:
            out[name] = None
            continue
        found = None
        for s1, s2 in itertools.product((1, -1), repeat=2):
            if lhs == s1 * t1 + s2 * t2:
                found = (s1, s2)
                break
        out[name] = found
    return out


_CHECKS = {
    "c10": _c10,
    "e100": _e100,
    "e101": _e101,
    "c14": _c14,
    "c15": _c15,
    "c18": _c18,
    "c20": _c20,
    "c100": _c100,
    "c101": _c101,
    "cor7": _cor7,
}

IDENTITY_NAMES = tuple(sorted(_CHECKS))


def default_identity_indices(G: Graph, name: str):
    """Deterministic index choices used by the sweep over a graph catalogue.

    Yields index dictionaries; empty if the graph has no instance of the
    identity's configuration.
    """
    labels = sorted(G.labels)
    N = len(labels)
    if name == "c10":
        for k in labels:
            yield {"k": k}
    elif name == "e100":
        for k in labels:
            u, v = G.endpoints(k)
            if u == v:
                yield {"k": k}
    elif name == "e101":
        seen = set()
        for a, b in itertools.combinations(labels, 2):
            ea, eb = G.endpoints(a), G.endpoints(b)
            if ea == eb and ea[0] != ea[1] and ea not in seen:
                seen.add(ea)
                yield {"pair": (a, b)}
    elif name in ("c14", "c15", "cor7"):
        key = ("i", "j") if name != "cor7" else ("i", "k")
        for i, j in itertools.combinations(labels, 2):
            yield {key[0]: i, key[1]: j}
    elif name in ("c18", "c20"):
        if name == "c18":
            base = {"I": (), "J": (), "S": (), "K": ()}
        triples = list(itertools.permutations(labels, 3))
        for t in triples[:6]:
            a, b, x = t
            if name == "c18":
                yield {"I": (), "J": (), "S": (), "K": (), "a": a, "b": b, "x": x}
            else:
                rest = [l for l in labels if l not in t]
                if not rest:
                    continue
                yield {
                    "I": (),
                    "J": (rest[0],),
                    "S": (),
                    "K": (),
                    "a": a,
                    "b": b,
                    "x": x,
                }
    elif name == "c100":
        # the corolla of the max-degree vertex, distinguished edge = least label
        deg: dict[int, list[int]] = {}
        for lab in labels:
            u, v = G.endpoints(lab)
            if u != v:
                deg.setdefault(u, []).append(lab)
                deg.setdefault(v, []).append(lab)
        if deg:
            v = max(deg, key=lambda w: (len(deg[w]), -w))
            if len(deg[v]) >= 2:
                yield {"edges": tuple(sorted(deg[v]))}
    elif name == "c101":
        cyc = _find_short_cycle(G)
        if cyc:
            yield {"edges": cyc}


def _find_short_cycle(G: Graph):
    """Edge labels of one shortest cycle (loops and parallel pairs included)."""
    for lab in sorted(G.labels):
        u, v = G.endpoints(lab)
        if u == v:
            return (lab,)
    pairs: dict[tuple[int, int], list[int]] = {}
    for lab in sorted(G.labels):
        pairs.setdefault(G.endpoints(lab), []).append(lab)
    for labs in pairs.values():
        if len(labs) >= 2:
            return tuple(labs[:2])
    if not girth_at_most(G, G.edge_count):
        return None
    # BFS shortest cycle on a simple graph
    best = None
    adj: dict[int, list[tuple[int, int]]] = {}
    for lab in sorted(G.labels):
        u, v = G.endpoints(lab)
        adj.setdefault(u, []).append((v, lab))
        adj.setdefault(v, []).append((u, lab))
    for lab in sorted(G.labels):
        s, t = G.endpoints(lab)
        prev = {s: (None, None)}
        frontier = [s]
        while frontier and t not in prev:
            nxt = []
            for x in frontier:
                for y, l2 in adj[x]:
                    if l2 != lab and y not in prev:
                        prev[y] = (x, l2)
                        nxt.append(y)
            frontier = nxt
        if t in prev:
            path = []
            cur = t
            while prev[cur][0] is not None:
                path.append(prev[cur][1])
                cur = prev[cur][0]
            cyc = tuple(sorted([lab] + path))
            if best is None or len(cyc) < len(best):
                best = cyc
    return best
