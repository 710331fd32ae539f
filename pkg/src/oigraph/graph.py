"""The orthogonal inner product graph on proper nonzero subspaces.

Vertices are all subspaces of dimension 1..n-1; A and B are adjacent iff
A S Bt is the zero matrix (equivalently B lies inside the dual of A).  A
totally isotropic vertex is adjacent to itself: such loops are recorded but
contribute nothing to degrees or distances.

Adjacency lives in per-vertex Python-int bitsets (bit v of adj[u] set iff
u ~ v, u != v); a numpy boolean matrix is materialized lazily for the
routines that want one.
"""

from __future__ import annotations

import json
import math
import os

import numpy as np

from .gf import parse_field
from .geometry import (
    OSpace,
    Subspace,
    enumerate_subspaces,
    gauss_binomial,
    space_make,
    subspace_make,
)
from .linalg import Mat

DEFAULT_VERTEX_BUDGET = 10**6


class BudgetExceeded(RuntimeError):
    def __init__(self, needed: int, budget: int, what: str = "vertices"):
        super().__init__(f"instance needs {needed} {what}, budget is {budget}")
        self.needed = needed
        self.budget = budget


def vertex_budget(override: int | None = None) -> int:
    if override is not None:
        return override
    env = os.environ.get("OIGRAPH_BUDGET")
    if env:
        return int(env)
    return DEFAULT_VERTEX_BUDGET


def adjacent(A: Subspace, B: Subspace) -> bool:
    """The defining relation: A S Bt identically zero (A = B tests a loop)."""
    if A.space != B.space:
        raise ValueError("vertices of different spaces")
    space = A.space
    for u in A.rows:
        for v in B.rows:
            if space.pair(u, v) != 0:
                return False
    return True


class OiGraph:
    def __init__(self, space: OSpace, verts, adj, loops: int):
        self.space = space
        self.verts = list(verts)
        self.nv = len(self.verts)
        self.adj = list(adj)  # bitsets, self-bit never set
        self.loops = loops  # bitset of totally isotropic vertices
        self.index = {P.rows: i for i, P in enumerate(self.verts)}
        self._np_simple = None
        self._np_looped = None

    # -- basic queries -----------------------------------------------------

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def loop_at(self, v: int) -> bool:
        return bool((self.loops >> v) & 1)

    def loop_ids(self):
        return _bits(self.loops)

    def neighbors(self, v: int):
        return _bits(self.adj[v])

    def edges(self):
        """Non-loop edges as sorted (u, v) pairs with u < v."""
        out = []
        for u in range(self.nv):
            rest = self.adj[u] >> (u + 1)
            for w in _bits(rest):
                out.append((u, u + 1 + w))
        return out

    def edge_pairs_with_loops(self):
        return self.edges() + [(v, v) for v in self.loop_ids()]

    def vertex_dim(self, v: int) -> int:
        return self.verts[v].m

    def adjacency_matrix(self, include_loops: bool = False) -> np.ndarray:
        cached = self._np_looped if include_loops else self._np_simple
        if cached is None:
            M = np.zeros((self.nv, self.nv), dtype=bool)
            for u in range(self.nv):
                row = self.adj[u]
                if row:
                    M[u, _bit_array(row, self.nv)] = True
            if include_loops:
                for v in _bits(self.loops):
                    M[v, v] = True
                self._np_looped = M
            else:
                self._np_simple = M
        return self._np_looped if include_loops else self._np_simple

    def __eq__(self, other):
        return (
            isinstance(other, OiGraph)
            and self.space == other.space
            and [P.rows for P in self.verts] == [P.rows for P in other.verts]
            and self.adj == other.adj
            and self.loops == other.loops
        )

    # -- connectivity ------------------------------------------------------

    def components(self):
        seen = 0
        out = []
        full = (1 << self.nv) - 1
        for start in range(self.nv):
            if (seen >> start) & 1:
                continue
            comp = 1 << start
            frontier = comp
            while frontier:
                nxt = 0
                for v in _bits(frontier):
                    nxt |= self.adj[v]
                frontier = nxt & ~comp & full
                comp |= frontier
            seen |= comp
            out.append(list(_bits(comp)))
        return out

    def eccentricity(self, v: int):
        dist = self._bfs(v)
        reached = [d for d in dist if d >= 0]
        if len(reached) < self.nv:
            return math.inf
        return max(reached)

    def diameter(self):
        best = 0
        for v in range(self.nv):
            ecc = self.eccentricity(v)
            if ecc is math.inf:
                return math.inf
            best = max(best, ecc)
        return best

    def _bfs(self, src: int):
        dist = [-1] * self.nv
        dist[src] = 0
        frontier = 1 << src
        visited = frontier
        d = 0
        while frontier:
            d += 1
            nxt = 0
            for v in _bits(frontier):
                nxt |= self.adj[v]
            nxt &= ~visited
            for w in _bits(nxt):
                dist[w] = d
            visited |= nxt
            frontier = nxt
        return dist

    def distance(self, u: int, v: int):
        d = self._bfs(u)[v]
        return math.inf if d < 0 else d

    def witness_path(self, u: int, v: int):
        """A shortest u-v path as a vertex id list (BFS, lowest-id parents)."""
        if u == v:
            return [u]
        parent = [-1] * self.nv
        frontier = 1 << u
        visited = frontier
        while frontier:
            nxt = 0
            for w in _bits(frontier):
                fresh = self.adj[w] & ~visited & ~nxt
                for x in _bits(fresh):
                    parent[x] = w
                nxt |= fresh
            if (nxt >> v) & 1:
                path = [v]
                while path[-1] != u:
                    path.append(parent[path[-1]])
                return list(reversed(path))
            visited |= nxt
            frontier = nxt
        raise ValueError(f"vertices {u} and {v} are in different components")

    # -- induced dimension-1 part -----------------------------------------

    def dim1_ids(self):
        return [v for v in range(self.nv) if self.verts[v].m == 1]

    def dim1_subgraph(self) -> "OiGraph":
        ids = self.dim1_ids()
        return self.induced(ids)

    def induced(self, ids) -> "OiGraph":
        pos = {v: i for i, v in enumerate(ids)}
        adj = []
        for v in ids:
            bits = 0
            for w in _bits(self.adj[v]):
                if w in pos:
                    bits |= 1 << pos[w]
            adj.append(bits)
        loops = 0
        for v in ids:
            if self.loop_at(v):
                loops |= 1 << pos[v]
        return OiGraph(self.space, [self.verts[v] for v in ids], adj, loops)


def _bits(x: int):
    while x:
        lsb = x & -x
        yield lsb.bit_length() - 1
        x ^= lsb


def _bit_array(x: int, n: int) -> np.ndarray:
    by = x.to_bytes((n + 7) // 8, "little")
    return np.nonzero(np.unpackbits(np.frombuffer(by, dtype=np.uint8), bitorder="little")[:n])[0]


def _pack_bool_row(row: np.ndarray) -> int:
    return int.from_bytes(np.packbits(row, bitorder="little").tobytes(), "little")


def build_graph(space: OSpace, budget: int | None = None) -> OiGraph:
    n, q = space.n, space.field.q
    total = sum(gauss_binomial(n, m, q) for m in range(1, n))
    cap = vertex_budget(budget)
    if total > cap:
        raise BudgetExceeded(total, cap)
    verts = []
    for m in range(1, n):
        verts.extend(enumerate_subspaces(space, m))
    verts.sort(key=lambda P: (P.m, P.rows))
    if space.field.e == 1:
        adj_matrix = _adjacency_prime(space, verts)
        adj = []
        loops = 0
        for i in range(len(verts)):
            row = adj_matrix[i]
            if row[i]:
                loops |= 1 << i
                row = row.copy()
                row[i] = False
            adj.append(_pack_bool_row(row))
    else:
        adj, loops = _adjacency_generic(space, verts)
    return OiGraph(space, verts, adj, loops)


def _adjacency_prime(space: OSpace, verts) -> np.ndarray:
    """Vectorized A S Bt == 0 test for prime fields.

    Stack every basis row of every vertex, multiply once, then reduce the
    nonzero indicators back to vertex blocks with add.reduceat.
    """
    p = space.field.p
    S = np.array([list(r) for r in space.form.rows], dtype=np.int64)
    starts = [0]
    rows = []
    for P in verts:
        rows.extend([list(r) for r in P.rows])
        starts.append(len(rows))
    B = np.array(rows, dtype=np.int64)
    XS = (B @ S) % p
    bounds = np.array(starts[:-1], dtype=np.intp)
    nv = len(verts)
    out = np.empty((nv, nv), dtype=bool)
    # block over left-hand vertices to bound the dense product size
    rows_per_block = max(1, (1 << 24) // max(1, len(rows)))
    vstart = 0
    while vstart < nv:
        vend = vstart
        while vend < nv and starts[vend + 1] - starts[vstart] <= rows_per_block:
            vend += 1
        vend = max(vend, vstart + 1)
        r0, r1 = starts[vstart], starts[vend]
        Z = (XS[r0:r1] @ B.T) % p
        nz = (Z != 0).astype(np.int32)
        per_vertex_cols = np.add.reduceat(nz, bounds, axis=1)
        local_bounds = np.array([starts[v] - r0 for v in range(vstart, vend)], dtype=np.intp)
        per_vertex = np.add.reduceat(per_vertex_cols, local_bounds, axis=0)
        out[vstart:vend] = per_vertex == 0
        vstart = vend
    return out


def _adjacency_generic(space: OSpace, verts):
    """Pairwise bilinear test with exact field ops (extension fields)."""
    nv = len(verts)
    adj = [0] * nv
    loops = 0
    pair = space.pair
    for i in range(nv):
        A = verts[i]
        for j in range(i, nv):
            B = verts[j]
            ok = True
            for u in A.rows:
                for v in B.rows:
                    if pair(u, v) != 0:
                        ok = False
                        break
                if not ok:
                    break
            if ok:
                if i == j:
                    loops |= 1 << i
                else:
                    adj[i] |= 1 << j
                    adj[j] |= 1 << i
    return adj, loops


# ---------------------------------------------------------------------------
# maximum clique of the dimension-1 subgraph


def max_clique_dim1(g: OiGraph):
    """Largest mutually-orthogonal set of projective points, loop-heavy first.

    Maximizes lexicographically (number of loop members, total size) over
    cliques whose members span a subspace of dimension equal to their count
    (loop members are required to be linearly independent; anisotropic
    members orthogonal to them are independent automatically since their
    Gram matrix is a nonsingular diagonal).  Returns (size, count of
    non-loop members); for these graphs that is (nu + delta, delta).
    """
    d1 = g.dim1_subgraph()
    iso_ids = [v for v in range(d1.nv) if d1.loop_at(v)]
    field = d1.space.field

    # phase 1: maximum independent clique among the loop vertices
    best_l: list = []

    def grow_iso(chosen, basis_mat, cand):
        nonlocal best_l
        if len(chosen) + cand.bit_count() <= len(best_l):
            return
        if not cand:
            if len(chosen) > len(best_l):
                best_l = list(chosen)
            return
        rest = cand
        for v in _bits(cand):
            rest ^= 1 << v
            rows = (basis_mat.rows if basis_mat is not None else ()) + d1.verts[v].rows
            M = Mat(field, rows)
            if M.rank() == len(chosen) + 1:
                grow_iso(chosen + [v], M, rest & d1.adj[v])
            if len(chosen) + 1 + rest.bit_count() <= len(best_l):
                break

    iso_mask = 0
    for v in iso_ids:
        iso_mask |= 1 << v
    grow_iso([], None, iso_mask)

    # phase 2: extend by anisotropic points orthogonal to all of phase 1
    cand = (1 << d1.nv) - 1 & ~d1.loops
    for v in best_l:
        cand &= d1.adj[v]
    best_a: list = []

    def grow_aniso(chosen, cand):
        nonlocal best_a
        if len(chosen) + cand.bit_count() <= len(best_a):
            return
        if not cand:
            if len(chosen) > len(best_a):
                best_a = list(chosen)
            return
        rest = cand
        for v in _bits(cand):
            rest ^= 1 << v
            grow_aniso(chosen + [v], rest & d1.adj[v])
            if len(chosen) + 1 + rest.bit_count() <= len(best_a):
                break

    grow_aniso([], cand)
    return len(best_l) + len(best_a), len(best_a)


def recover_parameters(clique_size: int, nonloop_count: int, dim1_count: int):
    """Invert the invariant triple back to (nu, delta, q)."""
    delta = nonloop_count
    nu = clique_size - delta
    n = 2 * nu + delta
    q = 2
    while (q**n - 1) // (q - 1) < dim1_count:
        q += 1
    if (q**n - 1) // (q - 1) != dim1_count:
        raise ValueError("dimension-1 count matches no prime power")
    return nu, delta, q


# ---------------------------------------------------------------------------
# serialization


def graph_to_json(g: OiGraph) -> str:
    space = g.space
    payload = {
        "space": {
            "nu": space.nu,
            "delta": space.delta,
            "disc": space.disc,
            "field": space.field.descriptor(),
        },
        "vertices": [
            {"id": i, "dim": P.m, "basis": [list(r) for r in P.rows]}
            for i, P in enumerate(g.verts)
        ],
        "edges": [[u, v] for u, v in g.edges()],
        "loops": list(g.loop_ids()),
    }
    if space.field.e > 1:
        payload["space"]["modulus"] = list(space.field.modulus)
    return json.dumps(payload, indent=1, sort_keys=True) + "\n"


def graph_from_json(text: str) -> OiGraph:
    data = json.loads(text)
    sp = data["space"]
    field = parse_field(sp["field"], tuple(sp["modulus"]) if "modulus" in sp else None)
    space = space_make(sp["nu"], sp["delta"], field, sp.get("disc") or "one")
    verts = []
    for rec in sorted(data["vertices"], key=lambda r: r["id"]):
        P = subspace_make(space, rec["basis"])
        if P.rows != tuple(tuple(r) for r in rec["basis"]):
            raise ValueError(f"vertex {rec['id']} basis is not in canonical form")
        verts.append(P)
    nv = len(verts)
    adj = [0] * nv
    for u, v in data["edges"]:
        adj[u] |= 1 << v
        adj[v] |= 1 << u
    loops = 0
    for v in data["loops"]:
        loops |= 1 << v
    return OiGraph(space, verts, adj, loops)


def graph_to_dot(g: OiGraph, header: bool = True) -> str:
    lines = []
    if header:
        lines.append(f"// {g.space.label()} nu={g.space.nu} delta={g.space.delta} q={g.space.field.q}")
        lines.append(f"// vertices={g.nv} edges={len(g.edges())} loops={g.loops.bit_count()}")
        lines.append("// generated by oigraph 0.1.0")
    lines.append("graph oi {")
    for v in range(g.nv):
        lines.append(f"  v{v};")
    for u, v in g.edges():
        lines.append(f"  v{u} -- v{v};")
    for v in g.loop_ids():
        lines.append(f"  v{v} -- v{v};")
    lines.append("}")
    return "\n".join(lines) + "\n"
