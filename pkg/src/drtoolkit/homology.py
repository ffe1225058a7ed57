"""Exact integral homology and contractibility certification.

Boundary matrices are lists of lists of Python ints, so all arithmetic is
arbitrary precision.  Smith normal form records the unimodular row and
column operations it performs; replaying the certificate against the input
matrix must reproduce the diagonal form exactly.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .complexes import (Cycle, DirectedEdge, TwoComplex, euler_characteristic,
                        free_edges, is_connected, spanning_tree, tree_path)
from .errors import BoundsExhausted


# -- Smith normal form ---------------------------------------------------------

def _apply_op(m: list, op) -> None:
    kind = op[0]
    if kind == "swap_rows":
        _, i, j = op
        m[i], m[j] = m[j], m[i]
    elif kind == "swap_cols":
        _, i, j = op
        for row in m:
            row[i], row[j] = row[j], row[i]
    elif kind == "add_row":
        _, src, dst, k = op
        m[dst] = [a + k * b for a, b in zip(m[dst], m[src])]
    elif kind == "add_col":
        _, src, dst, k = op
        for row in m:
            row[dst] += k * row[src]
    elif kind == "negate_row":
        _, i = op
        m[i] = [-a for a in m[i]]
    else:
        raise ValueError(f"unknown operation {kind!r}")


def replay_operations(matrix: list, ops) -> list:
    """Apply a recorded operation list to a copy of ``matrix``."""
    m = [list(row) for row in matrix]
    for op in ops:
        _apply_op(m, op)
    return m


def smith_normal_form(matrix: list):
    """Diagonalize an integer matrix by unimodular row/column operations.

    Returns ``(factors, ops, diagonal)`` where ``factors`` is the chain of
    invariant factors d1 | d2 | ..., ``ops`` replays to ``diagonal`` from the
    input, and ``diagonal`` is the full diagonalized matrix.  Pivoting always
    selects a least-absolute-value nonzero entry.
    """
    m = [list(row) for row in matrix]
    rows = len(m)
    cols = len(m[0]) if rows else 0
    ops: list = []

    def record(op):
        ops.append(op)
        _apply_op(m, op)

    t = 0
    while t < min(rows, cols):
        pivot = None
        for i in range(t, rows):
            for j in range(t, cols):
                if m[i][j] != 0 and (pivot is None
                                     or abs(m[i][j]) < abs(m[pivot[0]][pivot[1]])):
                    pivot = (i, j)
        if pivot is None:
            break
        if pivot[0] != t:
            record(("swap_rows", t, pivot[0]))
        if pivot[1] != t:
            record(("swap_cols", t, pivot[1]))
        while True:
            # Reduce the pivot row and column.
            dirty = False
            for i in range(t + 1, rows):
                if m[i][t] != 0:
                    q = m[i][t] // m[t][t]
                    record(("add_row", t, i, -q))
                    if m[i][t] != 0:
                        record(("swap_rows", t, i))
                    dirty = True
            for j in range(t + 1, cols):
                if m[t][j] != 0:
                    q = m[t][j] // m[t][t]
                    record(("add_col", t, j, -q))
                    if m[t][j] != 0:
                        record(("swap_cols", t, j))
                    dirty = True
            if not dirty:
                break
        # Divisibility: fold any non-divisible entry into the pivot row.
        offender = None
        for i in range(t + 1, rows):
            for j in range(t + 1, cols):
                if m[i][j] % m[t][t] != 0:
                    offender = i
                    break
            if offender is not None:
                break
        if offender is not None:
            record(("add_row", offender, t, 1))
            continue
        if m[t][t] < 0:
            record(("negate_row", t))
        t += 1
    factors = [m[i][i] for i in range(min(rows, cols)) if m[i][i] != 0]
    return factors, ops, m


def matrix_rank(matrix: list) -> int:
    factors, _, _ = smith_normal_form(matrix)
    return len(factors)


# -- chain data and homology ------------------------------------------------------

@dataclass
class ChainData:
    """Ordered bases and integer boundary matrices of a complex."""

    vertices: list
    edges: list
    faces: list
    d1: list  # |V| x |E|, column e = head - tail
    d2: list  # |E| x |F|, column f = signed occurrence counts


def chain_data(x: TwoComplex) -> ChainData:
    vs = x.sorted_vertices()
    es = x.sorted_edges()
    fs = x.sorted_faces()
    vindex = {v: i for i, v in enumerate(vs)}
    eindex = {e: i for i, e in enumerate(es)}
    d1 = [[0] * len(es) for _ in vs]
    for j, e in enumerate(es):
        t, h = x.edges[e]
        d1[vindex[h]][j] += 1
        d1[vindex[t]][j] -= 1
    d2 = [[0] * len(fs) for _ in es]
    for j, f in enumerate(fs):
        for d in x.faces[f]:
            d2[eindex[d.edge]][j] += d.sign
    return ChainData(vs, es, fs, d1, d2)


def boundary_composition_is_zero(data: ChainData) -> bool:
    if not data.vertices or not data.faces:
        return True
    for i in range(len(data.vertices)):
        for j in range(len(data.faces)):
            total = sum(data.d1[i][k] * data.d2[k][j]
                        for k in range(len(data.edges)))
            if total != 0:
                return False
    return True


@dataclass
class HomologyProfile:
    betti0: int
    betti1: int
    betti2: int
    torsion1: tuple = ()

    def as_tuple(self):
        return (self.betti0, self.betti1, self.betti2)


def homology(x: TwoComplex) -> HomologyProfile:
    """Betti numbers and the torsion of H1, via Smith normal form."""
    data = chain_data(x)
    if not boundary_composition_is_zero(data):
        raise ValueError("boundary composition is nonzero; invalid complex")
    n_v, n_e, n_f = len(data.vertices), len(data.edges), len(data.faces)
    factors1, _, _ = smith_normal_form(data.d1) if n_v and n_e else ([], [], [])
    factors2, _, _ = smith_normal_form(data.d2) if n_e and n_f else ([], [], [])
    rank1, rank2 = len(factors1), len(factors2)
    profile = HomologyProfile(
        betti0=n_v - rank1,
        betti1=(n_e - rank1) - rank2,
        betti2=n_f - rank2,
        torsion1=tuple(d for d in factors2 if d > 1),
    )
    chi = euler_characteristic(x)
    if profile.betti0 - profile.betti1 + profile.betti2 != chi:
        raise AssertionError("betti alternating sum disagrees with chi")
    return profile


# -- collapsibility -----------------------------------------------------------------

def collapsible(x: TwoComplex) -> Optional[list]:
    """A replayable collapse of the complex to a single vertex, or None.

    Greedy free-edge collapses (least pair first) to a 1-complex, then leaf
    prunes if the 1-complex is a tree.  Steps are ("collapse", edge, face) or
    ("prune", edge, leaf_vertex).
    """
    from .complexes import collapse, prune_leaf
    cur = x
    steps = []
    while True:
        free = free_edges(cur)
        if not free:
            break
        e, f = free[0]
        cur = collapse(cur, e, f)
        steps.append(("collapse", e, f))
    if cur.faces:
        return None
    if not is_connected(cur) or euler_characteristic(cur) != 1:
        return None
    while cur.edges:
        leaf = None
        for e in cur.sorted_edges():
            t, h = cur.edges[e]
            for v in sorted((t, h), reverse=True):
                if len(cur.darts_out_of(v)) == 1:
                    leaf = (e, v)
                    break
            if leaf:
                break
        if leaf is None:
            return None
        cur = prune_leaf(cur, *leaf)
        steps.append(("prune",) + leaf)
    return steps


# -- simple connectivity and contractibility -------------------------------------------

@dataclass
class SimpleConnectivityVerdict:
    status: str  # "Certified" | "NotSimplyConnected" | "Unknown"
    loops: list = field(default_factory=list)   # (edge, Cycle, DiagramInX)
    tree: Optional[set] = None
    reason: str = ""


def generator_loops(x: TwoComplex) -> tuple:
    """A deterministic spanning tree plus one loop per non-tree edge; the
    loops generate the fundamental group."""
    tree = spanning_tree(x)
    root = min(x.vertices)
    loops = []
    for e in x.sorted_edges():
        if e in tree:
            continue
        t, h = x.edges[e]
        walk = (tree_path(x, tree, root, t) + (DirectedEdge(e, 1),)
                + tree_path(x, tree, h, root))
        loops.append((e, Cycle(root, walk)))
    return tree, loops


def certify_simply_connected(x: TwoComplex, max_area: int = 12,
                             max_perimeter: int = 24) -> SimpleConnectivityVerdict:
    """Certify simple connectivity by filling one loop per non-tree edge.

    NotSimplyConnected when H1 is nonzero (Betti or torsion); Certified when
    every generator loop fills within the bounds; Unknown when a filling
    search was truncated.
    """
    from .diagrams import fill_cycle
    if not is_connected(x):
        raise ValueError("certify_simply_connected expects a connected complex")
    profile = homology(x)
    if profile.betti1 > 0 or profile.torsion1:
        return SimpleConnectivityVerdict(
            "NotSimplyConnected",
            reason=f"H1 is nonzero (betti1={profile.betti1},"
                   f" torsion={list(profile.torsion1)})")
    tree, loops = generator_loops(x)
    filled = []
    for e, loop in loops:
        try:
            diagram = fill_cycle(x, loop, max_area, max_perimeter)
        except BoundsExhausted:
            return SimpleConnectivityVerdict(
                "Unknown", tree=tree,
                reason=f"filling search for loop at {e} hit the bounds")
        if diagram is None:
            return SimpleConnectivityVerdict(
                "Unknown", tree=tree,
                reason=f"no filling found for loop at {e}")
        filled.append((e, loop, diagram))
    return SimpleConnectivityVerdict("Certified", loops=filled, tree=tree)


@dataclass
class ContractibilityVerdict:
    status: str  # "Contractible" | "NotContractible" | "Unknown"
    certificate: Optional[object] = None
    reason: str = ""


def contractibility_verdict(x: TwoComplex, max_area: int = 12,
                            max_perimeter: int = 24) -> ContractibilityVerdict:
    """Contractible via a collapse to a point, or via trivial homology plus a
    simple-connectivity certificate; NotContractible on any homology
    obstruction; Unknown otherwise."""
    steps = collapsible(x)
    if steps is not None:
        return ContractibilityVerdict("Contractible", ("collapse", steps))
    profile = homology(x)
    if (profile.betti0 != 1 or profile.betti1 != 0 or profile.betti2 != 0
            or profile.torsion1):
        return ContractibilityVerdict(
            "NotContractible", None,
            f"homology obstruction: betti={profile.as_tuple()},"
            f" torsion={list(profile.torsion1)}")
    sc = certify_simply_connected(x, max_area, max_perimeter)
    if sc.status == "Certified":
        return ContractibilityVerdict("Contractible", ("whitehead", sc),
                                      "trivial homology and certified pi1")
    return ContractibilityVerdict("Unknown", None,
                                  f"simple connectivity: {sc.reason}")
