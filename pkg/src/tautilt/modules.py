"""Right modules over bound quiver algebras, as quiver representations.

A representation stores one vector space per vertex and one matrix per arrow;
the matrix of arrow ``a: i -> j`` has shape ``dims[j] x dims[i]``.  Since paths
compose left to right, the path ``a1*a2*...*ak`` acts by the product
``X_ak ... X_a2 X_a1``.
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

import sympy

from .algebra import BoundQuiverAlgebra
from .linalg import (
    Matrix,
    _rref_rows,
    block_diag,
    complement_columns,
    hstack,
    image_basis,
    inverse,
    kernel_basis,
    rank,
    solve,
)


class ModuleError(ValueError):
    pass


class DecompositionError(RuntimeError):
    """The idempotent search ran out of candidates; no verdict is claimed."""


class Representation:
    """A finite dimensional right module given by vertex dimensions and arrow matrices.

    Args:
        algebra: the algebra acted on.
        dims: dimension at each vertex, in vertex order.
        maps: one matrix per arrow, in arrow order.
        check: verify matrix shapes and that every relation acts as zero.
    """

    def __init__(self, algebra: BoundQuiverAlgebra, dims: Sequence[int], maps: Sequence[Matrix], check: bool = True):
        self.algebra = algebra
        self.dims = tuple(int(d) for d in dims)
        self.maps = tuple(maps)
        self._cache: dict = {}
        if check:
            self._validate()

    def _validate(self):
        A = self.algebra
        Q = A.quiver
        if len(self.dims) != len(Q) or len(self.maps) != len(Q.arrows):
            raise ModuleError("representation does not match the quiver")
        if any(d < 0 for d in self.dims):
            raise ModuleError("negative dimension")
        for a, X in enumerate(self.maps):
            if X.shape != (self.dims[Q.tgt[a]], self.dims[Q.src[a]]):
                raise ModuleError("arrow %s has matrix of shape %s, expected %s"
                                  % (Q.arrows[a].label, X.shape, (self.dims[Q.tgt[a]], self.dims[Q.src[a]])))
            if X.field != A.field:
                raise ModuleError("matrix field differs from the algebra field")
        for r in A.relations:
            total = None
            for c, p in r.terms:
                idx = [Q.arrow_index[x] for x in p]
                m = self._word_matrix(idx).scale(A.field(c))
                total = m if total is None else total + m
            if total is not None and not total.is_zero():
                raise ModuleError("relation %s does not act as zero" % r)

    # -- basic data -----------------------------------------------------------

    @property
    def field(self):
        return self.algebra.field

    @property
    def dim(self) -> int:
        return sum(self.dims)

    def is_zero(self) -> bool:
        return self.dim == 0

    def _word_matrix(self, idx: Sequence[int]) -> Matrix:
        m = self.maps[idx[0]]
        for a in idx[1:]:
            m = self.maps[a] @ m
        return m

    def path_matrix(self, k: int) -> Matrix:
        """Action of the algebra basis element ``k`` as a map ``M_source -> M_target``."""
        key = ("path", k)
        if key not in self._cache:
            p = self.algebra.basis[k]
            if not p.arrows:
                m = Matrix.identity(self.field, self.dims[p.source])
            else:
                m = self._word_matrix(p.arrows)
            self._cache[key] = m
        return self._cache[key]

    def element_matrix(self, x, source: int, target: int) -> Matrix:
        """Action of an algebra element on ``M_source -> M_target`` (only its e_s A e_t part counts)."""
        A = self.algebra
        out = Matrix.zeros(self.field, self.dims[target], self.dims[source])
        for k in A.basis_between(source, target):
            if x[k]:
                out = out + self.path_matrix(k).scale(x[k])
        return out

    def __repr__(self):
        return "Representation(%s, dims=%s)" % (loewy_label(self), list(self.dims))

    # -- radical and socle ----------------------------------------------------

    def radical_subspaces(self) -> List[Matrix]:
        """Column bases of M·rad at each vertex."""
        if "rad" not in self._cache:
            Q = self.algebra.quiver
            out = []
            for j in range(len(Q)):
                blocks = [self.maps[a] for a in range(len(Q.arrows)) if Q.tgt[a] == j]
                out.append(image_basis(hstack(self.field, blocks, self.dims[j])))
            self._cache["rad"] = out
        return self._cache["rad"]

    def top_dims(self) -> Tuple[int, ...]:
        return tuple(d - r.ncols for d, r in zip(self.dims, self.radical_subspaces()))

    def socle_subspaces(self) -> List[Matrix]:
        if "soc" not in self._cache:
            Q = self.algebra.quiver
            out = []
            for i in range(len(Q)):
                blocks = [self.maps[a] for a in range(len(Q.arrows)) if Q.src[a] == i]
                if blocks:
                    from .linalg import vstack
                    out.append(kernel_basis(vstack(self.field, blocks, self.dims[i])))
                else:
                    out.append(Matrix.identity(self.field, self.dims[i]))
            self._cache["soc"] = out
        return self._cache["soc"]

    def socle_dims(self) -> Tuple[int, ...]:
        return tuple(s.ncols for s in self.socle_subspaces())

    def loewy_layers(self) -> List[Tuple[int, ...]]:
        """Dimension vectors of the radical layers M rad^k / M rad^(k+1)."""
        if "layers" in self._cache:
            return self._cache["layers"]
        Q = self.algebra.quiver
        F = self.field
        cur = [Matrix.identity(F, d) for d in self.dims]
        layers = []
        while any(c.ncols for c in cur):
            nxt = []
            for j in range(len(Q)):
                blocks = [self.maps[a] @ cur[Q.src[a]] for a in range(len(Q.arrows)) if Q.tgt[a] == j]
                nxt.append(image_basis(hstack(F, blocks, self.dims[j])))
            layers.append(tuple(c.ncols - n.ncols for c, n in zip(cur, nxt)))
            cur = nxt
        self._cache["layers"] = layers
        return layers


def loewy_label(M: Representation) -> str:
    """Radical layers written top first, e.g. ``2/(1 3)``; the zero module is ``0``."""
    if M.is_zero():
        return "0"
    verts = M.algebra.vertices
    parts = []
    for layer in M.loewy_layers():
        names = [v for v, d in zip(verts, layer) for _ in range(d)]
        parts.append(names[0] if len(names) == 1 else "(" + " ".join(names) + ")")
    return "/".join(parts)


# -- maps -----------------------------------------------------------------------


class ModuleMap:
    """A module homomorphism, one matrix per vertex."""

    __slots__ = ("source", "target", "blocks")

    def __init__(self, source: Representation, target: Representation, blocks: Sequence[Matrix]):
        self.source = source
        self.target = target
        self.blocks = tuple(blocks)

    @classmethod
    def zero(cls, M: Representation, N: Representation) -> "ModuleMap":
        return cls(M, N, [Matrix.zeros(M.field, n, m) for m, n in zip(M.dims, N.dims)])

    @classmethod
    def identity(cls, M: Representation) -> "ModuleMap":
        return cls(M, M, [Matrix.identity(M.field, d) for d in M.dims])

    def is_homomorphism(self) -> bool:
        Q = self.source.algebra.quiver
        for a in range(len(Q.arrows)):
            i, j = Q.src[a], Q.tgt[a]
            if self.target.maps[a] @ self.blocks[i] != self.blocks[j] @ self.source.maps[a]:
                return False
        return True

    def __matmul__(self, other: "ModuleMap") -> "ModuleMap":
        # self after other
        return ModuleMap(other.source, self.target, [g @ f for g, f in zip(self.blocks, other.blocks)])

    def __add__(self, other):
        return ModuleMap(self.source, self.target, [f + g for f, g in zip(self.blocks, other.blocks)])

    def __sub__(self, other):
        return ModuleMap(self.source, self.target, [f - g for f, g in zip(self.blocks, other.blocks)])

    def scale(self, c) -> "ModuleMap":
        return ModuleMap(self.source, self.target, [f.scale(c) for f in self.blocks])

    def is_zero(self) -> bool:
        return all(b.is_zero() for b in self.blocks)

    def vector(self) -> tuple:
        return tuple(x for b in self.blocks for r in b.rows for x in r)

    def is_iso(self) -> bool:
        return all(b.nrows == b.ncols and rank(b) == b.nrows for b in self.blocks)

    def inverse(self) -> Optional["ModuleMap"]:
        inv = []
        for b in self.blocks:
            x = inverse(b) if b.nrows == b.ncols else None
            if x is None:
                return None
            inv.append(x)
        return ModuleMap(self.target, self.source, inv)

    def is_injective(self) -> bool:
        return all(rank(b) == b.ncols for b in self.blocks)

    def is_surjective(self) -> bool:
        return all(rank(b) == b.nrows for b in self.blocks)

    def __repr__(self):
        return "ModuleMap(%r -> %r)" % (self.source, self.target)


def _compose_linear(fs: Sequence[ModuleMap], coeffs) -> ModuleMap:
    out = None
    for c, f in zip(coeffs, fs):
        if not c:
            continue
        g = f.scale(c)
        out = g if out is None else out + g
    return out if out is not None else ModuleMap.zero(fs[0].source, fs[0].target)


class HomSpace:
    """A basis of ``Hom(M, N)``."""

    def __init__(self, source: Representation, target: Representation, basis: List[ModuleMap]):
        self.source = source
        self.target = target
        self.basis = basis

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __len__(self):
        return len(self.basis)

    def __iter__(self):
        return iter(self.basis)

    def combination(self, coeffs) -> ModuleMap:
        if not self.basis:
            return ModuleMap.zero(self.source, self.target)
        return _compose_linear(self.basis, coeffs)

    def coordinates(self, f: ModuleMap) -> Optional[list]:
        """Coefficients of ``f`` in the basis, or None if ``f`` is not a homomorphism."""
        if not self.basis:
            return [] if f.is_zero() else None
        B = Matrix.from_columns(self.source.field, [b.vector() for b in self.basis], len(self.basis[0].vector()))
        X = solve(B, Matrix.from_columns(self.source.field, [f.vector()], B.nrows))
        return None if X is None else list(X.column(0))


def _check_same(M: Representation, N: Representation):
    if M.algebra is not N.algebra:
        raise ModuleError("modules live over different algebras")


def hom(M: Representation, N: Representation) -> HomSpace:
    """Basis of all homomorphisms ``M -> N``, from the intertwining equations."""
    _check_same(M, N)
    cache = M._cache.setdefault("hom", {})
    key = id(N)
    hit = cache.get(key)
    if hit is not None and hit[0] is N:
        return hit[1]
    A = M.algebra
    Q = A.quiver
    F = A.field
    n = len(Q)
    offs = []
    total = 0
    for i in range(n):
        offs.append(total)
        total += M.dims[i] * N.dims[i]
    rows = []
    zero = F.zero
    for a in range(len(Q.arrows)):
        i, j = Q.src[a], Q.tgt[a]
        mi, mj, ni, nj = M.dims[i], M.dims[j], N.dims[i], N.dims[j]
        if mi == 0 or nj == 0:
            continue
        Na, Ma = N.maps[a].rows, M.maps[a].rows
        for r2 in range(nj):
            for c in range(mi):
                row = [zero] * total
                nz = False
                # N_a f_i
                for r in range(ni):
                    x = Na[r2][r]
                    if x:
                        k = offs[i] + r * mi + c
                        row[k] = row[k] + x
                        nz = True
                # - f_j M_a
                for c2 in range(mj):
                    y = Ma[c2][c]
                    if y:
                        k = offs[j] + r2 * mj + c2
                        row[k] = row[k] - y
                        nz = True
                if nz:
                    rows.append(row)
    piv = _rref_rows(rows, total) if rows else []
    pset = set(piv)
    basis = []
    for f in range(total):
        if f in pset:
            continue
        v = [zero] * total
        v[f] = F.one
        for r, p in enumerate(piv):
            x = rows[r][f]
            if x:
                v[p] = -x
        blocks = []
        for i in range(n):
            mi, ni = M.dims[i], N.dims[i]
            o = offs[i]
            blocks.append(Matrix._raw(F, tuple(tuple(v[o + r * mi: o + (r + 1) * mi]) for r in range(ni)), mi))
        basis.append(ModuleMap(M, N, blocks))
    H = HomSpace(M, N, basis)
    cache[key] = (N, H)
    return H


def hom_dim(M: Representation, N: Representation) -> int:
    return hom(M, N).dim


def end_ring(M: Representation) -> HomSpace:
    return hom(M, M)


# -- constructions --------------------------------------------------------------


def zero_module(algebra: BoundQuiverAlgebra) -> Representation:
    F = algebra.field
    n = len(algebra.quiver)
    return Representation(algebra, [0] * n, [Matrix.zeros(F, 0, 0) for _ in algebra.quiver.arrows], check=False)


def simple(algebra: BoundQuiverAlgebra, vertex) -> Representation:
    i = algebra.vertex(vertex)
    key = ("simple", i)
    if key not in algebra._cache:
        F = algebra.field
        Q = algebra.quiver
        dims = [1 if v == i else 0 for v in range(len(Q))]
        maps = [Matrix.zeros(F, dims[Q.tgt[a]], dims[Q.src[a]]) for a in range(len(Q.arrows))]
        algebra._cache[key] = Representation(algebra, dims, maps, check=False)
    return algebra._cache[key]


def _arrow_basis_index(algebra: BoundQuiverAlgebra, a: int) -> int:
    return algebra.basis_index[(algebra.quiver.src[a], (a,))]


def projective(algebra: BoundQuiverAlgebra, vertex) -> Representation:
    """``P(i) = e_i A``: basis the residue paths starting at ``i``, arrows acting by right multiplication."""
    i = algebra.vertex(vertex)
    key = ("projective", i)
    if key not in algebra._cache:
        algebra._cache[key] = projective_sum(algebra, [i])
    return algebra._cache[key]


class ProjectiveSum(Representation):
    """``P(v_1) + ... + P(v_r)`` with a coordinate system indexed by (summand, basis path)."""

    def __init__(self, algebra: BoundQuiverAlgebra, vertices: Sequence[int]):
        A = algebra
        Q = A.quiver
        F = A.field
        self.vertices_list = tuple(vertices)
        # coords[j] lists (summand k, basis index) spanning the space at vertex j
        coords = [[] for _ in range(len(Q))]
        for k, v in enumerate(self.vertices_list):
            for j in range(len(Q)):
                for b in A.basis_between(v, j):
                    coords[j].append((k, b))
        self.coords = coords
        self.coord_index = [{c: t for t, c in enumerate(cs)} for cs in coords]
        dims = [len(c) for c in coords]
        maps = []
        for a in range(len(Q.arrows)):
            i, j = Q.src[a], Q.tgt[a]
            ab = _arrow_basis_index(A, a)
            rows = [[F.zero] * dims[i] for _ in range(dims[j])]
            for col, (k, b) in enumerate(coords[i]):
                for b2, c in A.basis_product(b, ab).items():
                    rows[self.coord_index[j][(k, b2)]][col] = c
            maps.append(Matrix._raw(F, tuple(tuple(r) for r in rows), dims[i]))
        super().__init__(A, dims, maps, check=False)

    def element_vector(self, comps: Sequence, j: int) -> tuple:
        """Coordinates at vertex ``j`` of the element with algebra components ``comps``."""
        F = self.field
        v = [F.zero] * self.dims[j]
        for t, (k, b) in enumerate(self.coords[j]):
            v[t] = comps[k][b]
        return tuple(v)

    def vector_components(self, vec: Sequence, j: int) -> List[tuple]:
        """Inverse of :meth:`element_vector`: one algebra element per summand."""
        A = self.algebra
        comps = [[A.field.zero] * A.dimension for _ in self.vertices_list]
        for t, (k, b) in enumerate(self.coords[j]):
            comps[k][b] = vec[t]
        return [tuple(c) for c in comps]


def projective_sum(algebra: BoundQuiverAlgebra, vertices: Sequence[int]) -> ProjectiveSum:
    return ProjectiveSum(algebra, [algebra.vertex(v) for v in vertices])


def regular_module(algebra: BoundQuiverAlgebra) -> ProjectiveSum:
    key = "regular"
    if key not in algebra._cache:
        algebra._cache[key] = projective_sum(algebra, range(len(algebra.quiver)))
    return algebra._cache[key]


def map_between_projectives(P: ProjectiveSum, R: ProjectiveSum, X: Sequence[Sequence]) -> ModuleMap:
    """ModuleMap ``P -> R`` given by left multiplication with an algebra-entry matrix.

    ``X[k][l]`` lies in ``e_{R_k} A e_{P_l}`` and the generator of the ``l``-th summand
    of ``P`` is sent to the column ``(X[k][l])_k``.
    """
    A = P.algebra
    F = A.field
    blocks = []
    for j in range(len(A.quiver)):
        rows = [[F.zero] * P.dims[j] for _ in range(R.dims[j])]
        for col, (l, b) in enumerate(P.coords[j]):
            for k in range(len(R.vertices_list)):
                x = X[k][l]
                for i2, c in enumerate(x):
                    if not c:
                        continue
                    for b2, d in A.basis_product(i2, b).items():
                        t = R.coord_index[j].get((k, b2))
                        if t is None:
                            raise ModuleError("matrix entry is not in e_target A e_source")
                        rows[t][col] = rows[t][col] + c * d
        blocks.append(Matrix._raw(F, tuple(tuple(r) for r in rows), P.dims[j]))
    return ModuleMap(P, R, blocks)


def dual(M: Representation) -> Representation:
    """``D M = Hom_K(M, K)`` as a module over the opposite algebra; ``dual(dual(M))`` is ``M``."""
    if "dual" in M._cache:
        return M._cache["dual"]
    op = M.algebra.opposite()
    D = Representation(op, M.dims, [X.T for X in M.maps], check=False)
    D._cache["dual"] = M
    M._cache["dual"] = D
    return D


def dual_map(f: ModuleMap) -> ModuleMap:
    return ModuleMap(dual(f.target), dual(f.source), [b.T for b in f.blocks])


def injective(algebra: BoundQuiverAlgebra, vertex) -> Representation:
    """``I(i) = D(e_i A^op)``."""
    i = algebra.vertex(vertex)
    key = ("injective", i)
    if key not in algebra._cache:
        algebra._cache[key] = dual(projective(algebra.opposite(), i))
    return algebra._cache[key]


class DirectSum:
    """A direct sum with its canonical inclusions and projections."""

    def __init__(self, module: Representation, inclusions: List[ModuleMap], projections: List[ModuleMap]):
        self.module = module
        self.inclusions = inclusions
        self.projections = projections


def direct_sum_data(modules: Sequence[Representation], algebra: Optional[BoundQuiverAlgebra] = None) -> DirectSum:
    if not modules:
        if algebra is None:
            raise ModuleError("empty direct sum needs an algebra")
        return DirectSum(zero_module(algebra), [], [])
    A = modules[0].algebra
    for M in modules:
        _check_same(modules[0], M)
    F = A.field
    Q = A.quiver
    dims = [sum(M.dims[i] for M in modules) for i in range(len(Q))]
    maps = [block_diag(F, [M.maps[a] for M in modules]) for a in range(len(Q.arrows))]
    S = Representation(A, dims, maps, check=False)
    incs, projs = [], []
    offs = [0] * len(Q)
    for M in modules:
        ib, pb = [], []
        for i in range(len(Q)):
            d, m = dims[i], M.dims[i]
            o = offs[i]
            ib.append(Matrix._raw(F, tuple(tuple(F.one if (r == o + c) else F.zero for c in range(m)) for r in range(d)), m))
            pb.append(Matrix._raw(F, tuple(tuple(F.one if (c == o + r) else F.zero for c in range(d)) for r in range(m)), d))
            offs[i] += m
        incs.append(ModuleMap(M, S, ib))
        projs.append(ModuleMap(S, M, pb))
    return DirectSum(S, incs, projs)


def direct_sum(*modules, algebra: Optional[BoundQuiverAlgebra] = None) -> Representation:
    if len(modules) == 1 and isinstance(modules[0], (list, tuple)):
        modules = tuple(modules[0])
    if len(modules) == 1:
        return modules[0]
    return direct_sum_data(list(modules), algebra).module


# -- sub and quotient modules ---------------------------------------------------


def submodule(M: Representation, bases: Sequence[Matrix]) -> Tuple[Representation, ModuleMap]:
    """Submodule spanned by the given column bases (must be arrow-stable); returns it with its inclusion."""
    A = M.algebra
    Q = A.quiver
    F = A.field
    dims = [b.ncols for b in bases]
    maps = []
    for a in range(len(Q.arrows)):
        i, j = Q.src[a], Q.tgt[a]
        if dims[i] == 0 or dims[j] == 0:
            maps.append(Matrix.zeros(F, dims[j], dims[i]))
            continue
        X = solve(bases[j], M.maps[a] @ bases[i])
        if X is None:
            raise ModuleError("subspaces are not stable under arrow %s" % Q.arrows[a].label)
        maps.append(X)
    S = Representation(A, dims, maps, check=False)
    return S, ModuleMap(S, M, list(bases))


def quotient(M: Representation, bases: Sequence[Matrix]) -> Tuple[Representation, ModuleMap, List[Matrix]]:
    """Quotient by an arrow-stable family of subspaces.

    Returns the quotient, the projection, and per-vertex sections of the projection
    (linear splittings, not module maps).
    """
    A = M.algebra
    Q = A.quiver
    F = A.field
    projs, secs = [], []
    for i, B in enumerate(bases):
        n = M.dims[i]
        C = complement_columns(B, n)
        if B.ncols == 0:
            projs.append(Matrix.identity(F, n))
            secs.append(Matrix.identity(F, n))
            continue
        if C.ncols == 0:
            projs.append(Matrix.zeros(F, 0, n))
            secs.append(C)
            continue
        Pinv = inverse(hstack(F, [B, C]))
        projs.append(Pinv.submatrix(range(B.ncols, n), range(n)))
        secs.append(C)
    dims = [p.nrows for p in projs]
    maps = []
    for a in range(len(Q.arrows)):
        i, j = Q.src[a], Q.tgt[a]
        maps.append(projs[j] @ M.maps[a] @ secs[i])
    R = Representation(A, dims, maps, check=False)
    return R, ModuleMap(M, R, projs), secs


def kernel(f: ModuleMap) -> Tuple[Representation, ModuleMap]:
    return submodule(f.source, [kernel_basis(b) for b in f.blocks])


def image(f: ModuleMap) -> Tuple[Representation, ModuleMap]:
    return submodule(f.target, [image_basis(b) for b in f.blocks])


def cokernel(f: ModuleMap) -> Tuple[Representation, ModuleMap]:
    R, p, _ = quotient(f.target, [image_basis(b) for b in f.blocks])
    return R, p


def generated_submodule(M: Representation, generators: Sequence[Tuple[int, Sequence]]) -> List[Matrix]:
    """Column bases of the submodule generated by vectors ``(vertex, coordinates)``."""
    A = M.algebra
    F = A.field
    cols: List[list] = [[] for _ in M.dims]
    for v, vec in generators:
        for j in range(len(M.dims)):
            for k in A.basis_between(v, j):
                w = M.path_matrix(k).apply(vec)
                if any(w):
                    cols[j].append(w)
    return [image_basis(Matrix.from_columns(F, c, M.dims[j])) if c else Matrix.zeros(F, M.dims[j], 0)
            for j, c in enumerate(cols)]


def radical_layer_quotient(M: Representation, k: int) -> Representation:
    """``M / M rad^k``."""
    Q = M.algebra.quiver
    F = M.field
    cur = [Matrix.identity(F, d) for d in M.dims]
    for _ in range(k):
        nxt = []
        for j in range(len(Q)):
            blocks = [M.maps[a] @ cur[Q.src[a]] for a in range(len(Q.arrows)) if Q.tgt[a] == j]
            nxt.append(image_basis(hstack(F, blocks, M.dims[j])))
        cur = nxt
    return quotient(M, cur)[0]


def local_module(algebra: BoundQuiverAlgebra, vertex, paths: Sequence = ()) -> Representation:
    """``P(i)`` modulo the submodule generated by the given path elements starting at ``i``."""
    i = algebra.vertex(vertex)
    P = projective(algebra, i)
    gens = []
    for p in paths:
        x = algebra.path_element(p) if isinstance(p, (str, list, tuple)) else p
        for j in range(len(algebra.quiver)):
            vec = P.element_vector([x], j)
            if any(vec):
                gens.append((j, vec))
    return quotient(P, generated_submodule(P, gens))[0]


# -- membership and annihilators ------------------------------------------------


def trace_subspaces(T: Representation, M: Representation) -> List[Matrix]:
    """Column bases of the trace of ``T`` in ``M``."""
    H = hom(T, M)
    F = M.field
    out = []
    for i in range(len(M.dims)):
        blocks = [f.blocks[i] for f in H.basis]
        out.append(image_basis(hstack(F, blocks, M.dims[i])))
    return out


def reject_subspaces(M: Representation, N: Representation) -> List[Matrix]:
    """Column bases of the common kernel of all maps ``M -> N``."""
    from .linalg import vstack
    H = hom(M, N)
    F = M.field
    out = []
    for i in range(len(M.dims)):
        blocks = [f.blocks[i] for f in H.basis]
        if blocks:
            out.append(kernel_basis(vstack(F, blocks, M.dims[i])))
        else:
            out.append(Matrix.identity(F, M.dims[i]))
    return out


def fac_membership(M: Representation, T: Representation) -> bool:
    """Is ``M`` a quotient of a finite direct sum of copies of ``T``?"""
    _check_same(M, T)
    if M.is_zero():
        return True
    # support test first: the trace can only reach vertices T generates into
    return all(b.ncols == d for b, d in zip(trace_subspaces(T, M), M.dims))


def sub_membership(M: Representation, N: Representation) -> bool:
    """Is ``M`` a submodule of a finite direct sum of copies of ``N``?"""
    _check_same(M, N)
    if M.is_zero():
        return True
    return all(b.ncols == 0 for b in reject_subspaces(M, N))


def annihilator(T: Representation) -> List[tuple]:
    """Algebra elements spanning ``{x : T x = 0}``."""
    A = T.algebra
    F = A.field
    n = len(A.quiver)
    out = []
    for s in range(n):
        for t in range(n):
            ks = A.basis_between(s, t)
            if not ks:
                continue
            if T.dims[s] == 0 or T.dims[t] == 0:
                for k in ks:
                    out.append(A.basis_element(k))
                continue
            cols = [T.path_matrix(k).entries for k in ks]
            K = kernel_basis(Matrix.from_columns(F, cols, T.dims[s] * T.dims[t]))
            for c in K.columns():
                v = [F.zero] * A.dimension
                for k, x in zip(ks, c):
                    v[k] = x
                out.append(tuple(v))
    return out


# -- transport between related algebras ----------------------------------------


def transport(M: Representation, target: BoundQuiverAlgebra) -> Representation:
    """Reinterpret ``M`` over an algebra sharing vertex and arrow labels (e.g. a quotient).

    Vertices missing from ``target`` must carry zero space and missing arrows must act by zero.
    """
    A = M.algebra
    Q, Q2 = A.quiver, target.quiver
    for v, d in zip(Q.vertices, M.dims):
        if v not in Q2.vertex_index and d:
            raise ModuleError("module is supported at vertex %s, which the target algebra lacks" % v)
    for a, X in zip(Q.arrows, M.maps):
        if a.label not in Q2.arrow_index and not X.is_zero():
            raise ModuleError("arrow %s acts nonzero but the target algebra lacks it" % a.label)
    dims = [M.dims[Q.vertex_index[v]] for v in Q2.vertices]
    maps = []
    for a in Q2.arrows:
        if a.label not in Q.arrow_index:
            raise ModuleError("target algebra has an unknown arrow %s" % a.label)
        maps.append(M.maps[Q.arrow_index[a.label]])
    return Representation(target, dims, maps, check=True)


# -- endomorphism rings and decomposition -----------------------------------------


def _poly_mul(p, q, F):
    out = [F.zero] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                if b:
                    out[i + j] = out[i + j] + a * b
    return out


def _factor(coeffs, F) -> List[Tuple[list, int]]:
    """Distinct monic irreducible factors (coefficients lowest degree first) with multiplicities."""
    x = sympy.Symbol("x")
    if F.characteristic == 0:
        poly = sympy.Poly([sympy.Rational(c.numerator, c.denominator) for c in reversed(coeffs)], x, domain="QQ")
    else:
        poly = sympy.Poly([int(c) for c in reversed(coeffs)], x, modulus=F.characteristic)
    _, facs = poly.factor_list()
    out = []
    for g, m in facs:
        cs = g.all_coeffs()
        if F.characteristic == 0:
            lead = sympy.Rational(cs[0])
            cs = [sympy.Rational(c) / lead for c in cs]
            conv = [F(Fraction(int(c.p), int(c.q))) for c in reversed(cs)]
        else:
            conv = [F(int(c)) for c in reversed(cs)]
            lead = conv[-1]
            conv = [c / lead for c in conv]
        out.append((conv, m))
    return out


def _map_poly(f: ModuleMap, coeffs) -> ModuleMap:
    from .linalg import poly_eval_matrix
    return ModuleMap(f.source, f.target, [poly_eval_matrix(coeffs, b) for b in f.blocks])


def _map_power(f: ModuleMap, k: int) -> ModuleMap:
    return ModuleMap(f.source, f.target, [b.power(k) for b in f.blocks])


def _charpoly_map(f: ModuleMap):
    from .linalg import charpoly
    F = f.source.field
    p = [F.one]
    for b in f.blocks:
        if b.nrows:
            p = _poly_mul(p, charpoly(b), F)
    return p


def _primary_split(f: ModuleMap) -> Optional[List[List[Matrix]]]:
    """Subspace families of the primary decomposition of ``f``; None if there is only one part."""
    F = f.source.field
    facs = _factor(_charpoly_map(f), F)
    if len(facs) < 2:
        return None
    parts = []
    for g, m in facs:
        gm = [F.one]
        for _ in range(m):
            gm = _poly_mul(gm, g, F)
        h = _map_poly(f, gm)
        # m is at least the nilpotency index, so this is the generalized eigenspace
        parts.append([kernel_basis(b) for b in h.blocks])
    return parts


def _single_eigenvalue(f: ModuleMap):
    """The eigenvalue ``c`` when ``f - c`` is nilpotent with ``c`` in the base field, else None."""
    F = f.source.field
    facs = _factor(_charpoly_map(f), F)
    if len(facs) != 1 or len(facs[0][0]) != 2:
        return None
    return -facs[0][0][0]


def _vectors_rank(vecs, F, length) -> int:
    if not vecs:
        return 0
    return rank(Matrix.from_columns(F, vecs, length))


def local_radical(M: Representation) -> Optional[List[ModuleMap]]:
    """A basis of ``J(End M)`` when ``End M = K.1 + J`` with ``J`` nilpotent, else None.

    The certificate checked: each basis endomorphism has a single eigenvalue in the
    field, and the shifted maps span a multiplicatively closed nilpotent subspace of
    codimension one.
    """
    if "local_radical" in M._cache:
        return M._cache["local_radical"]
    result = _local_radical(M)
    M._cache["local_radical"] = result
    return result


def _local_radical(M: Representation):
    F = M.field
    if M.is_zero():
        return None
    E = end_ring(M)
    idm = ModuleMap.identity(M)
    shifted = []
    for phi in E.basis:
        lam = _single_eigenvalue(phi)
        if lam is None:
            return None
        shifted.append(phi - idm.scale(lam))
    length = len(idm.vector())
    vecs = [s.vector() for s in shifted if not s.is_zero()]
    if not vecs:
        return []
    Bm = image_basis(Matrix.from_columns(F, vecs, length))
    if Bm.ncols != E.dim - 1:
        return None
    basis_maps = []
    for c in Bm.columns():
        # rebuild blocks from the flat vector
        blocks = []
        o = 0
        for d in M.dims:
            blocks.append(Matrix._raw(F, tuple(tuple(c[o + r * d: o + (r + 1) * d]) for r in range(d)), d))
            o += d * d
        basis_maps.append(ModuleMap(M, M, blocks))
    # closed under products and nilpotent
    span = Bm
    for x in basis_maps:
        for y in basis_maps:
            if solve(span, Matrix.from_columns(F, [(x @ y).vector()], length)) is None:
                return None
    power = basis_maps
    for _ in range(M.dim + 1):
        prods = [(p @ y).vector() for p in power for y in basis_maps]
        prods = [v for v in prods if any(v)]
        if not prods:
            return basis_maps
        P = image_basis(Matrix.from_columns(F, prods, length))
        if P.ncols >= len(power):
            return None
        power = []
        for c in P.columns():
            blocks = []
            o = 0
            for d in M.dims:
                blocks.append(Matrix._raw(F, tuple(tuple(c[o + r * d: o + (r + 1) * d]) for r in range(d)), d))
                o += d * d
            power.append(ModuleMap(M, M, blocks))
    return None


def indecomposability_certificate(M: Representation) -> Optional[str]:
    """A reason ``M`` is indecomposable, or None if no certificate applies."""
    if M.is_zero():
        return None
    if sum(M.top_dims()) == 1:
        return "simple-top"
    if sum(M.socle_dims()) == 1:
        return "simple-socle"
    if local_radical(M) is not None:
        return "local-endomorphism-ring"
    return None


def is_indecomposable(M: Representation) -> bool:
    if indecomposability_certificate(M) is not None:
        return True
    return len(decompose(M).parts) == 1


class Decomposition:
    """``M`` as a direct sum of indecomposables.

    Attributes:
        module: the decomposed module.
        parts: ``(summand, inclusion, projection)`` triples; the inclusions and
            projections compose to identities both ways.
        summands: ``(representative, multiplicity)`` grouped by isomorphism class.
        projective_vertex: for each entry of ``summands``, the vertex ``i`` with the
            summand isomorphic to ``P(i)``, or None.
    """

    def __init__(self, module, parts, summands, groups, projective_vertex, certificates):
        self.module = module
        self.parts = parts
        self.summands = summands
        self.groups = groups
        self.projective_vertex = projective_vertex
        self.certificates = certificates

    @property
    def is_basic(self) -> bool:
        return all(m == 1 for _, m in self.summands)

    def verify(self) -> bool:
        M = self.module
        if not self.parts:
            return M.is_zero()
        total = None
        for S, inc, pr in self.parts:
            t = inc @ pr
            total = t if total is None else total + t
        if any(a != b for a, b in zip(total.blocks, ModuleMap.identity(M).blocks)):
            return False
        for k, (S, inc, pr) in enumerate(self.parts):
            for l, (S2, inc2, pr2) in enumerate(self.parts):
                c = pr2 @ inc
                if k == l:
                    if any(a != b for a, b in zip(c.blocks, ModuleMap.identity(S).blocks)):
                        return False
                elif not c.is_zero():
                    return False
        return True


def _split_candidates(E: HomSpace, budget_combos: int = 64):
    basis = E.basis
    for f in basis:
        yield f
    for f, g in itertools.product(basis, repeat=2):
        yield f @ g
    rng = random.Random(0)
    F = E.source.field
    for _ in range(budget_combos):
        coeffs = [F(rng.randint(-2, 2)) for _ in basis]
        yield E.combination(coeffs)


def _split_once(M: Representation, combos: int = 64):
    """Either ('indecomposable', certificate) or ('split', [subspace families])."""
    cert = indecomposability_certificate(M)
    if cert is not None:
        return "indecomposable", cert
    E = end_ring(M)
    for phi in _split_candidates(E, combos):
        parts = _primary_split(phi)
        if parts is not None:
            return "split", parts
    raise DecompositionError("no idempotent found in End(M) within the search budget for %r "
                             "(End(M)/J may be a proper division algebra)" % M)


def _decompose_parts(M: Representation, combos: int):
    status, data = _split_once(M, combos)
    if status == "indecomposable":
        return [(M, ModuleMap.identity(M), ModuleMap.identity(M), data)]
    # data: list of subspace families; M is their direct sum
    F = M.field
    out = []
    for fam in data:
        if all(b.ncols == 0 for b in fam):
            continue
        S, inc = submodule(M, fam)
        out.append((S, inc))
    # projections from the block inverse of the combined inclusion
    full = [hstack(F, [inc.blocks[i] for _, inc in out], M.dims[i]) for i in range(len(M.dims))]
    invs = [inverse(b) if b.nrows else b for b in full]
    res = []
    offs = [0] * len(M.dims)
    for S, inc in out:
        pb = []
        for i in range(len(M.dims)):
            pb.append(invs[i].submatrix(range(offs[i], offs[i] + S.dims[i]), range(M.dims[i])))
            offs[i] += S.dims[i]
        pr = ModuleMap(M, S, pb)
        for T, inc2, pr2, cert in _decompose_parts(S, combos):
            res.append((T, inc @ inc2, pr2 @ pr, cert))
    return res


def projective_vertex_of(X: Representation) -> Optional[int]:
    """For indecomposable ``X``: the vertex ``i`` with ``X = P(i)``, else None."""
    top = X.top_dims()
    if sum(top) != 1:
        return None
    i = top.index(1)
    return i if X.dim == projective(X.algebra, i).dim else None


def is_projective(M: Representation) -> bool:
    """A module is projective iff its projective cover has the same dimension."""
    A = M.algebra
    return M.dim == sum(t * projective(A, i).dim for i, t in enumerate(M.top_dims()))


def is_injective(M: Representation) -> bool:
    A = M.algebra
    return M.dim == sum(s * injective(A, i).dim for i, s in enumerate(M.socle_dims()))


def decompose(M: Representation, combos: int = 64) -> Decomposition:
    """Split ``M`` into indecomposables with an explicit isomorphism certificate.

    Raises:
        DecompositionError: if the idempotent search exhausts its budget.
    """
    key = ("decompose", combos)
    if key in M._cache:
        return M._cache[key]
    if M.is_zero():
        D = Decomposition(M, [], [], [], [], [])
        M._cache[key] = D
        return D
    raw = _decompose_parts(M, combos)
    parts = [(S, i, p) for S, i, p, _ in raw]
    certs = [c for *_, c in raw]
    groups: List[List[int]] = []
    for k, (S, _, _) in enumerate(parts):
        for g in groups:
            if _indec_iso(parts[g[0]][0], S) is not None:
                g.append(k)
                break
        else:
            groups.append([k])
    summands = [(parts[g[0]][0], len(g)) for g in groups]
    pv = [projective_vertex_of(S) for S, _ in summands]
    D = Decomposition(M, parts, summands, groups, pv, certs)
    M._cache[key] = D
    return D


# -- isomorphism --------------------------------------------------------------------


def _iso_prefilter(M: Representation, N: Representation) -> bool:
    return (M.dims == N.dims and M.top_dims() == N.top_dims() and M.socle_dims() == N.socle_dims())


def _indec_iso(M: Representation, N: Representation) -> Optional[ModuleMap]:
    """Isomorphism test for indecomposables: some basis map is invertible iff M = N."""
    if not _iso_prefilter(M, N):
        return None
    for f in hom(M, N).basis:
        if f.is_iso():
            return f
    return None


def is_isomorphic(M: Representation, N: Representation, combos: int = 64) -> Optional[ModuleMap]:
    """An explicit isomorphism ``M -> N``, or None when the modules are not isomorphic."""
    _check_same(M, N)
    if not _iso_prefilter(M, N):
        return None
    if M.is_zero():
        return ModuleMap.zero(M, N)
    H = hom(M, N)
    if H.dim != hom(N, N).dim or H.dim != hom(M, M).dim:
        return None
    for f in H.basis:
        if f.is_iso():
            return f
    rng = random.Random(1)
    F = M.field
    for _ in range(min(combos, 16)):
        f = H.combination([F(rng.randint(-2, 2)) for _ in H.basis])
        if f.is_iso():
            return f
    # exact fallback via Krull-Schmidt
    dM, dN = decompose(M, combos), decompose(N, combos)
    if len(dM.parts) != len(dN.parts):
        return None
    used = set()
    pieces = []
    for S, inc, pr in dM.parts:
        for l, (T, inc2, pr2) in enumerate(dN.parts):
            if l in used:
                continue
            g = _indec_iso(S, T)
            if g is not None:
                used.add(l)
                pieces.append(inc2 @ g @ pr)
                break
        else:
            return None
    total = pieces[0]
    for p in pieces[1:]:
        total = total + p
    return total


class IsoClassRegistry:
    """Assigns stable integer ids to isomorphism classes of indecomposables."""

    def __init__(self):
        self.buckets: Dict[tuple, List[Tuple[int, Representation]]] = {}
        self.representatives: List[Representation] = []

    @staticmethod
    def key(M: Representation) -> tuple:
        return (M.dims, M.top_dims(), M.socle_dims(), hom(M, M).dim)

    def find(self, M: Representation) -> Optional[int]:
        for cid, R in self.buckets.get(self.key(M), []):
            if _indec_iso(R, M) is not None:
                return cid
        return None

    def class_id(self, M: Representation) -> int:
        k = self.key(M)
        for cid, R in self.buckets.get(k, []):
            if R is M or _indec_iso(R, M) is not None:
                return cid
        cid = len(self.representatives)
        self.representatives.append(M)
        self.buckets.setdefault(k, []).append((cid, M))
        return cid

    def __len__(self):
        return len(self.representatives)


# -- serialization --------------------------------------------------------------------


def to_json(M: Representation) -> dict:
    F = M.field
    return {
        "algebra": M.algebra.key,
        "field": F.name,
        "dims": list(M.dims),
        "arrows": [[[F.to_pair(x) for x in r] for r in X.rows] for X in M.maps],
    }


def from_json(data: dict, algebra: BoundQuiverAlgebra) -> Representation:
    if data.get("algebra") not in (None, algebra.key):
        raise ModuleError("module was serialized for a different algebra")
    F = algebra.field
    Q = algebra.quiver
    dims = data["dims"]
    maps = []
    for a, rows in enumerate(data["arrows"]):
        nr, nc = dims[Q.tgt[a]], dims[Q.src[a]]
        maps.append(Matrix(F, [[F(Fraction(n, d)) for n, d in r] for r in rows], nc) if nr else Matrix.zeros(F, 0, nc))
    return Representation(algebra, dims, maps, check=True)
