"""Automorphisms of the graph and exact group orders.

Two generator families: reflections through anisotropic vectors (these
generate the full orthogonal group of the form in odd characteristic), and
diagonal-semilinear maps sigma_{(k_1..k_nu, d1, d2, pi)} acting as
entrywise Frobenius followed by diag(k_1..k_nu, k_1^-1..k_nu^-1, d1, d2).
Both act on vertices by right multiplication of canonical bases; +-T induce
the same vertex map, so canonicalization quotients the matrix group by its
center for free.

Orders are certified by a deterministic stabilizer chain over the vertex
permutation action (base = first moved point, extended as needed), never by
formula alone; the closed-form counts live in aut_order_formula for
cross-checking.
"""

from __future__ import annotations

import itertools
import math

import numpy as np

from .gf import GF, primitive_unit
from .graph import OiGraph
from .geometry import OSpace, subspace_make
from .linalg import Mat, vec_mat


# ---------------------------------------------------------------------------
# matrix-level generators


def is_orthogonal(space: OSpace, T: Mat) -> bool:
    return T * space.form * T.transpose() == space.form


def reflection(space: OSpace, v) -> Mat:
    """x |-> x - 2 (x.S.vt / v.S.vt) v, as a matrix acting on row vectors."""
    f = space.field
    v = tuple(v)
    norm = space.pair(v, v)
    if norm == 0:
        raise ValueError("reflection axis must be anisotropic")
    c = f.div(f.add(1, 1), norm)
    w = vec_mat(f, v, space.form)  # v.S, = transpose of S.vt since S is symmetric
    n = space.n
    rows = tuple(
        tuple(
            f.sub(1 if i == j else 0, f.mul(c, f.mul(w[i], v[j])))
            for j in range(n)
        )
        for i in range(n)
    )
    return Mat(f, rows)


def orthogonal_generators(space: OSpace):
    """One reflection per projective anisotropic point."""
    from .geometry import enumerate_rref

    gens = []
    for rows in enumerate_rref(space.field, space.n, 1):
        v = rows[0]
        if space.pair(v, v) != 0:
            gens.append(reflection(space, v))
    return gens


# ---------------------------------------------------------------------------
# vertex permutations


class VertexPerm:
    __slots__ = ("graph", "array")

    def __init__(self, graph: OiGraph, array, check: bool = True):
        arr = np.asarray(array, dtype=np.int64)
        if arr.shape != (graph.nv,):
            raise ValueError("permutation length does not match vertex count")
        if check:
            if not np.array_equal(np.sort(arr), np.arange(graph.nv)):
                raise ValueError("not a bijection on vertices")
            A = graph.adjacency_matrix(include_loops=True)
            if not np.array_equal(A[np.ix_(arr, arr)], A):
                raise ValueError("map does not preserve adjacency")
        self.graph = graph
        self.array = arr

    def __call__(self, v: int) -> int:
        return int(self.array[v])

    def __eq__(self, other):
        return isinstance(other, VertexPerm) and np.array_equal(self.array, other.array)

    def __hash__(self):
        return hash(self.array.tobytes())

    def is_identity(self) -> bool:
        return np.array_equal(self.array, np.arange(self.graph.nv))

    @classmethod
    def identity(cls, graph: OiGraph) -> "VertexPerm":
        return cls(graph, np.arange(graph.nv), check=False)


def perm_from_matrix(g: OiGraph, T: Mat) -> VertexPerm:
    space = g.space
    if not is_orthogonal(space, T):
        raise ValueError("matrix is not orthogonal for the ambient form")
    arr = np.empty(g.nv, dtype=np.int64)
    for i, P in enumerate(g.verts):
        M = P.basis_matrix() * T
        arr[i] = g.index[subspace_make(space, M.rows).rows]
    return VertexPerm(g, arr)


def _slot_factor(f: GF, sign: int, form_entry: int, pi: int) -> int:
    """Diagonal entry over a form entry u: +-sqrt(pi(u)/u), so that the
    scaled Frobenius map carries the u-slot of S onto pi(u)."""
    if sign not in (1, -1):
        raise ValueError("sign slots take +1 or -1")
    ratio = f.div(f.frobenius(form_entry, pi), form_entry)
    root = f.sqrt_of_square(ratio)
    return root if sign == 1 else f.neg(root)


def perm_from_semilinear(g: OiGraph, ks, d1: int = 1, d2: int = 1, pi: int = 0) -> VertexPerm:
    space = g.space
    f = space.field
    ks = tuple(ks)
    if len(ks) != space.nu:
        raise ValueError(f"expected {space.nu} scale factors, got {len(ks)}")
    if any(k == 0 for k in ks):
        raise ValueError("scale factors must be nonzero")
    if ks and not f.is_square(ks[0]):
        raise ValueError("the first scale factor must be a nonzero square")
    if not 0 <= pi < f.e:
        raise ValueError(f"Frobenius power out of range 0..{f.e - 1}")
    if space.delta < 1 and d1 != 1:
        raise ValueError("d1 is only meaningful when delta >= 1")
    if space.delta < 2 and d2 != 1:
        raise ValueError("d2 is only meaningful when delta = 2")
    diag = list(ks) + [f.inv(k) for k in ks]
    n = space.n
    if space.delta >= 1:
        eps = n - space.delta
        diag.append(_slot_factor(f, d1, space.form[eps, eps], pi))
    if space.delta == 2:
        diag.append(_slot_factor(f, d2, space.form[n - 1, n - 1], pi))
    arr = np.empty(g.nv, dtype=np.int64)
    for i, P in enumerate(g.verts):
        rows = [
            tuple(f.mul(f.frobenius(x, pi), diag[j]) for j, x in enumerate(row))
            for row in P.rows
        ]
        arr[i] = g.index[subspace_make(space, rows).rows]
    return VertexPerm(g, arr)


def e_subgroup_generators(g: OiGraph):
    """Generators of the diagonal-semilinear subgroup of Aut."""
    space = g.space
    f = space.field
    nu = space.nu
    ones = (1,) * nu
    gens = []
    if nu >= 1:
        prim = primitive_unit(f)
        sq = f.mul(prim, prim)
        if sq != 1:
            gens.append(perm_from_semilinear(g, (sq,) + (1,) * (nu - 1)))
        for i in range(1, nu):
            ks = tuple(prim if j == i else 1 for j in range(nu))
            gens.append(perm_from_semilinear(g, ks))
    if space.delta >= 1:
        gens.append(perm_from_semilinear(g, ones, d1=-1))
    if space.delta == 2:
        gens.append(perm_from_semilinear(g, ones, d2=-1))
    if f.e > 1:
        gens.append(perm_from_semilinear(g, ones, pi=1))
    return gens


def po_e_generators(g: OiGraph):
    """Reflection images plus the diagonal-semilinear generators."""
    gens = [perm_from_matrix(g, T) for T in orthogonal_generators(g.space)]
    gens.extend(e_subgroup_generators(g))
    return gens


# ---------------------------------------------------------------------------
# deterministic stabilizer chain


def _mul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return a[b]


def _inv(a: np.ndarray) -> np.ndarray:
    out = np.empty_like(a)
    out[a] = np.arange(len(a), dtype=a.dtype)
    return out


class PermGroup:
    """Stabilizer chain with base points chosen as first moved vertices.

    level_gens[i] generates the stabilizer of base[:i]; the chain is built
    by sifting Schreier generators level by level until every one reduces
    to the identity, so order() is exact.
    """

    def __init__(self, degree: int, generators):
        self.degree = degree
        self.identity = np.arange(degree, dtype=np.int64)
        seeds = []
        seen = set()
        for gen in generators:
            arr = np.asarray(getattr(gen, "array", gen), dtype=np.int64)
            if arr.shape != (degree,):
                raise ValueError("generator degree mismatch")
            key = arr.tobytes()
            if np.array_equal(arr, self.identity) or key in seen:
                continue
            seen.add(key)
            seeds.append(arr)
        self.base: list[int] = []
        self.level_gens: list[list[np.ndarray]] = []
        self.transversals: list[dict[int, np.ndarray]] = []
        self._orbit_order: list[list[int]] = []
        self._done: list[int] = []
        if seeds:
            self._build(seeds)
        for g in seeds:
            residue, _ = self._sift(g, 0)
            assert residue is None, "chain failed to absorb a generator"

    # -- construction ------------------------------------------------------

    def _first_moved(self, g: np.ndarray) -> int:
        return int(np.nonzero(g != self.identity)[0][0])

    def _new_level(self, point: int):
        self.base.append(point)
        self.level_gens.append([])
        self.transversals.append({})
        self._orbit_order.append([])
        self._done.append(0)

    def _recompute(self, i: int):
        b = self.base[i]
        trans = {b: self.identity}
        order = [b]
        queue = [b]
        gens = self.level_gens[i]
        while queue:
            beta = queue.pop(0)
            u = trans[beta]
            for s in gens:
                gamma = int(s[beta])
                if gamma not in trans:
                    trans[gamma] = _mul(s, u)
                    order.append(gamma)
                    queue.append(gamma)
        self.transversals[i] = trans
        self._orbit_order[i] = order
        self._done[i] = 0

    def _sift(self, g: np.ndarray, start: int):
        """Reduce g through levels >= start; (None, _) when it reaches id."""
        for l in range(start, len(self.base)):
            beta = int(g[self.base[l]])
            rep = self.transversals[l].get(beta)
            if rep is None:
                return g, l
            g = _mul(_inv(rep), g)
        if np.array_equal(g, self.identity):
            return None, len(self.base)
        return g, len(self.base)

    def _build(self, seeds):
        for g in seeds:
            if all(g[b] == b for b in self.base):
                self._new_level(self._first_moved(g))
        for i in range(len(self.base)):
            prefix = self.base[:i]
            self.level_gens[i] = [g for g in seeds if all(g[b] == b for b in prefix)]
            self._recompute(i)
        i = len(self.base) - 1
        while i >= 0:
            nxt = self._close_level(i)
            i = i - 1 if nxt is None else nxt

    def _close_level(self, i: int):
        """Sift this level's Schreier generators; report the level to fix."""
        orbit = self._orbit_order[i]
        gens = self.level_gens[i]
        trans = self.transversals[i]
        total = len(orbit) * len(gens)
        k = self._done[i]
        while k < total:
            beta = orbit[k // len(gens)]
            s = gens[k % len(gens)]
            u = trans[beta]
            schreier = _mul(_inv(trans[int(s[beta])]), _mul(s, u))
            if not np.array_equal(schreier, self.identity):
                residue, j = self._sift(schreier, i + 1)
                if residue is not None:
                    if j == len(self.base):
                        self._new_level(self._first_moved(residue))
                    for l in range(i + 1, j + 1):
                        self.level_gens[l].append(residue)
                        self._recompute(l)
                    self._done[i] = k  # re-check this pair once below is fixed
                    return j
            k += 1
        self._done[i] = total
        return None

    # -- queries -----------------------------------------------------------

    def order(self) -> int:
        out = 1
        for t in self.transversals:
            out *= len(t)
        return out

    @property
    def transversal_sizes(self):
        return [len(t) for t in self.transversals]

    def contains(self, perm) -> bool:
        arr = np.asarray(getattr(perm, "array", perm), dtype=np.int64)
        residue, _ = self._sift(arr, 0)
        return residue is None


def group_order(perms) -> int:
    perms = list(perms)
    if not perms:
        return 1
    degree = len(np.asarray(getattr(perms[0], "array", perms[0])))
    return PermGroup(degree, perms).order()


def matrix_group_order(space: OSpace, mats) -> int:
    """Order of a matrix group via its faithful action on nonzero vectors."""
    f = space.field
    vecs = [v for v in itertools.product(range(f.q), repeat=space.n) if any(v)]
    index = {v: i for i, v in enumerate(vecs)}
    arrays = []
    for T in mats:
        arrays.append(np.array([index[vec_mat(f, v, T)] for v in vecs], dtype=np.int64))
    return PermGroup(len(vecs), arrays).order()


# ---------------------------------------------------------------------------
# orbits


class UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        p = self.parent
        while p[x] != x:
            p[x] = p[p[x]]
            x = p[x]
        return x

    def union(self, a: int, b: int):
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return
        if rb < ra:
            ra, rb = rb, ra
        self.parent[rb] = ra

    def partition(self):
        groups: dict[int, list[int]] = {}
        for x in range(len(self.parent)):
            groups.setdefault(self.find(x), []).append(x)
        return [groups[r] for r in sorted(groups)]


def _perm_array(p):
    return p.array if hasattr(p, "array") else p


def vertex_orbits(g: OiGraph, perms):
    uf = UnionFind(g.nv)
    for p in perms:
        arr = _perm_array(p)
        for v in range(g.nv):
            uf.union(v, int(arr[v]))
    return uf.partition()


def edge_orbits(g: OiGraph, perms):
    """Orbit partition of edges, loops included as (v, v) pairs."""
    pairs = g.edge_pairs_with_loops()
    index = {e: i for i, e in enumerate(pairs)}
    uf = UnionFind(len(pairs))
    for p in perms:
        arr = _perm_array(p)
        for i, (u, v) in enumerate(pairs):
            a, b = int(arr[u]), int(arr[v])
            if a > b:
                a, b = b, a
            uf.union(i, index[(a, b)])
    return [[pairs[i] for i in grp] for grp in uf.partition()]


# ---------------------------------------------------------------------------
# closed-form orders


def _prime_power(q: int):
    if q < 3:
        raise ValueError(f"{q} is not an odd prime power")
    p = min(d for d in range(2, q + 1) if q % d == 0)
    if p == 2:
        raise ValueError("even characteristic is out of scope")
    e = 0
    m = q
    while m % p == 0:
        m //= p
        e += 1
    if m != 1:
        raise ValueError(f"{q} is not a prime power")
    return p, e


def aut_order_formula(nu: int, delta: int, q: int, disc: str = "one") -> int:
    """Closed-form |Aut| for the covered parameter ranges."""
    if disc not in ("one", "z"):
        raise ValueError("disc must be 'one' or 'z'")
    _, e = _prime_power(q)
    half = q % 4 == 1  # -1 is a square exactly for q = 1 mod 4
    if nu == 1 and delta == 0:
        return 2 ** ((q + 1) // 2) * math.factorial((q - 1) // 2)
    if nu >= 2:
        down = math.prod(q**i - 1 for i in range(1, nu + 1))
        if delta == 0:
            val = q ** (nu * (nu - 1)) * down * math.prod(q**i + 1 for i in range(1, nu)) * e
            return val // 2 if half else val
        if delta == 1:
            val = q ** (nu * nu) * down * math.prod(q**i + 1 for i in range(1, nu + 1)) * e
            return val // 2 if half else val
        if delta == 2:
            val = q ** (nu * (nu + 1)) * down * math.prod(q**i + 1 for i in range(1, nu + 2)) * e
            return val // 2
    raise ValueError(
        f"uncovered parameter combination (nu={nu}, delta={delta}): no closed form applies"
    )


def e_subgroup_order(space: OSpace) -> int:
    """|E| = |(squares x units^(nu-1) x signs) : Frobenius| / |kernel|."""
    if space.nu < 2:
        raise ValueError("the diagonal-semilinear order formula needs nu >= 2")
    f = space.field
    q = f.q
    slots = (1 if space.delta >= 1 else 0) + (1 if space.delta == 2 else 0)
    raw = ((q - 1) // 2) * (q - 1) ** (space.nu - 1) * 2**slots * f.e
    kernel = 2 if (space.delta == 2 or f.minus_one_is_square()) else 1
    return raw // kernel
