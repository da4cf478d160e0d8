"""Presentations, syzygies, Ext, the functors (-)*, Tr, D, tau, tau^-1, nu, and GP verdicts.

Maps between projectives are matrices of algebra elements acting by left
multiplication; ``(-)*`` transposes such a matrix and moves each entry into
the opposite algebra by path reversal.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .algebra import BoundQuiverAlgebra
from .linalg import Matrix, complement_columns
from .modules import (
    ModuleMap,
    ProjectiveSum,
    Representation,
    cokernel,
    dual,
    hom,
    is_isomorphic,
    is_projective,
    kernel,
    map_between_projectives,
    projective,
    injective,
    projective_sum,
    regular_module,
    simple,
)

DEFAULT_EXT_BOUND = 12


@dataclass
class ProjectivePresentation:
    """``P1 --d1--> P0 --cover--> M --> 0``, minimal.

    Attributes:
        module: the presented module.
        P0, P1: projective sums; ``P0.vertices_list`` has one entry per top basis vector.
        matrix: algebra-entry matrix of ``d1`` (``matrix[k][l]`` in ``e_{P0_k} A e_{P1_l}``).
        cover: the projective cover ``P0 -> M``.
        syzygy: kernel of the cover, with its inclusion into ``P0``.
    """

    module: Representation
    P0: ProjectiveSum
    P1: ProjectiveSum
    matrix: list
    cover: ModuleMap
    syzygy: Representation
    syzygy_inclusion: ModuleMap

    @property
    def d1(self) -> ModuleMap:
        return map_between_projectives(self.P1, self.P0, self.matrix)


def _top_generators(M: Representation):
    """Vectors ``(vertex, coordinates)`` lifting a basis of the top of ``M``."""
    gens = []
    for i, R in enumerate(M.radical_subspaces()):
        C = complement_columns(R, M.dims[i])
        for c in C.columns():
            gens.append((i, c))
    return gens


def projective_cover(M: Representation):
    """The projective cover ``P0 -> M`` together with ``P0``."""
    A = M.algebra
    F = A.field
    gens = _top_generators(M)
    P0 = projective_sum(A, [v for v, _ in gens])
    blocks = []
    for j in range(len(A.quiver)):
        cols = [M.path_matrix(b).apply(gens[k][1]) for k, b in P0.coords[j]]
        blocks.append(Matrix.from_columns(F, cols, M.dims[j]) if cols else Matrix.zeros(F, M.dims[j], 0))
    return P0, ModuleMap(P0, M, blocks)


def minimal_presentation(M: Representation) -> ProjectivePresentation:
    if "presentation" in M._cache:
        return M._cache["presentation"]
    A = M.algebra
    P0, cover = projective_cover(M)
    K, inc = kernel(cover)
    gens = _top_generators(K)
    P1 = projective_sum(A, [v for v, _ in gens])
    X = []
    for k in range(len(P0.vertices_list)):
        X.append([None] * len(gens))
    for l, (v, vec) in enumerate(gens):
        comps = P0.vector_components(inc.blocks[v].apply(vec), v)
        for k in range(len(P0.vertices_list)):
            X[k][l] = comps[k]
    pres = ProjectivePresentation(M, P0, P1, X, cover, K, inc)
    M._cache["presentation"] = pres
    return pres


def syzygy(M: Representation) -> Representation:
    """Kernel of the projective cover of ``M`` (it may keep projective summands)."""
    return minimal_presentation(M).syzygy


def syzygy_power(M: Representation, k: int) -> Representation:
    for _ in range(k):
        M = syzygy(M)
    return M


def _star_matrix(pres: ProjectivePresentation):
    A = pres.module.algebra
    tm = A.to_opposite_matrix()
    X = pres.matrix
    r, s = len(pres.P0.vertices_list), len(pres.P1.vertices_list)
    return [[tm.apply(X[k][l]) for k in range(r)] for l in range(s)]


def _starred(M: Representation):
    """The map ``P0* -> P1*`` over the opposite algebra."""
    if "starred" in M._cache:
        return M._cache["starred"]
    pres = minimal_presentation(M)
    op = M.algebra.opposite()
    Q0 = projective_sum(op, pres.P0.vertices_list)
    Q1 = projective_sum(op, pres.P1.vertices_list)
    f = map_between_projectives(Q0, Q1, _star_matrix(pres))
    M._cache["starred"] = f
    return f


def star(M: Representation) -> Representation:
    """``M* = Hom(M, A)`` as a module over the opposite algebra."""
    if "star" not in M._cache:
        M._cache["star"] = kernel(_starred(M))[0]
    return M._cache["star"]


def transpose(M: Representation) -> Representation:
    """``Tr M``, the cokernel of the dualized minimal presentation (projective summands vanish)."""
    if "transpose" not in M._cache:
        M._cache["transpose"] = cokernel(_starred(M))[0]
    return M._cache["transpose"]


def tau(M: Representation) -> Representation:
    """Auslander-Reiten translate ``D Tr M``."""
    if "tau" not in M._cache:
        M._cache["tau"] = dual(transpose(M))
    return M._cache["tau"]


def tau_inverse(M: Representation) -> Representation:
    """``Tr D M``."""
    if "tau_inv" not in M._cache:
        M._cache["tau_inv"] = transpose(dual(M))
    return M._cache["tau_inv"]


def nakayama(P: Representation) -> Representation:
    """``nu P = D(P*)``; sends ``P(i)`` to ``I(i)``."""
    return dual(star(P))


def ext(M: Representation, N: Representation, i: int = 1) -> int:
    """``dim Ext^i(M, N)`` by dimension shifting along minimal projective resolutions."""
    if i < 1:
        raise ValueError("Ext degree must be positive")
    K = syzygy_power(M, i - 1)
    if K.is_zero():
        return 0
    pres = minimal_presentation(K)
    hom_p0 = sum(N.dims[v] for v in pres.P0.vertices_list)
    return hom(pres.syzygy, N).dim - hom_p0 + hom(K, N).dim


def projective_dimension(M: Representation, bound: int) -> Optional[int]:
    """``pd M`` when it is at most ``bound``, else None."""
    if M.is_zero():
        return 0
    X = M
    for n in range(bound + 1):
        X = syzygy(X)
        if X.is_zero():
            return n
    return None


def injective_dimension_probe(algebra: BoundQuiverAlgebra, side: str = "right", bound: int = DEFAULT_EXT_BOUND) -> Optional[int]:
    """Injective dimension of the regular module on one side, if at most ``bound``.

    ``side="right"`` probes ``A_A`` (via ``pd D(A_A)`` over the opposite algebra);
    ``side="left"`` probes ``_A A``, the right regular module of the opposite algebra.
    """
    if side not in ("right", "left"):
        raise ValueError("side must be 'right' or 'left'")
    key = ("id", side, bound)
    if key not in algebra._cache:
        base = algebra if side == "right" else algebra.opposite()
        algebra._cache[key] = projective_dimension(dual(regular_module(base)), bound)
    return algebra._cache[key]


def global_dimension_probe(algebra: BoundQuiverAlgebra, bound: int = DEFAULT_EXT_BOUND) -> Optional[int]:
    """Maximum projective dimension of the simples, if all are at most ``bound``."""
    key = ("gldim", bound)
    if key not in algebra._cache:
        best = 0
        for i in range(len(algebra.quiver)):
            p = projective_dimension(simple(algebra, i), bound)
            if p is None:
                best = None
                break
            best = max(best, p)
        algebra._cache[key] = best
    return algebra._cache[key]


def gorenstein_dimension(algebra: BoundQuiverAlgebra, bound: int = DEFAULT_EXT_BOUND) -> Optional[int]:
    """``d`` when the algebra is Iwanaga-Gorenstein with both injective dimensions at most ``bound``."""
    r = injective_dimension_probe(algebra, "right", bound)
    if r is None:
        return None
    l = injective_dimension_probe(algebra, "left", bound)
    if l is None:
        return None
    return max(r, l)


@dataclass
class SelfInjectivity:
    value: bool
    permutation: dict = field(default_factory=dict)  # vertex i -> j with P(i) = I(j)
    isomorphisms: dict = field(default_factory=dict)

    def __bool__(self):
        return self.value


def is_self_injective(algebra: BoundQuiverAlgebra) -> SelfInjectivity:
    """True iff every ``P(i)`` is isomorphic to some ``I(j)``; the certificate is the matching."""
    n = len(algebra.quiver)
    perm, isos = {}, {}
    for i in range(n):
        P = projective(algebra, i)
        for j in range(n):
            f = is_isomorphic(P, injective(algebra, j))
            if f is not None:
                perm[i], isos[i] = j, f
                break
        else:
            return SelfInjectivity(False)
    return SelfInjectivity(True, perm, isos)


# -- Gorenstein projective verdicts -------------------------------------------

CERTIFIED_GP = "CertifiedGP"
CERTIFIED_NOT_GP = "CertifiedNotGP"
VANISHES_UP_TO_BOUND = "VanishesUpToBound"


@dataclass(frozen=True)
class GpVerdict:
    """Three-valued answer to "is this module Gorenstein projective?".

    Attributes:
        status: CertifiedGP, CertifiedNotGP or VanishesUpToBound.
        bound_used: the Ext bound the verdict was computed with.
        certificate: ``kind`` plus payload; kinds are ``projective``,
            ``gorenstein-dimension`` (``d``), ``syzygy-periodicity`` (``k``, ``j``),
            ``nonzero-ext`` (``i``, ``side``), ``not-reflexive`` and ``none``.
    """

    status: str
    bound_used: int
    certificate: tuple

    @property
    def is_gp(self) -> bool:
        return self.status == CERTIFIED_GP

    @property
    def is_not_gp(self) -> bool:
        return self.status == CERTIFIED_NOT_GP

    @property
    def decided(self) -> bool:
        return self.status != VANISHES_UP_TO_BOUND

    def as_bool(self) -> Optional[bool]:
        return None if not self.decided else self.is_gp

    def to_json(self) -> dict:
        return {"status": self.status, "bound": self.bound_used, "certificate": dict(self.certificate)}


def _verdict(status, bound, **cert):
    return GpVerdict(status, bound, tuple(sorted(cert.items())))


def gp_verdict(M: Representation, bound: int = DEFAULT_EXT_BOUND) -> GpVerdict:
    """Decide Gorenstein projectivity where a finite certificate exists."""
    if bound < 1:
        raise ValueError("bound must be at least 1")
    key = ("gp", bound)
    if key in M._cache:
        return M._cache[key]
    v = _gp_verdict(M, bound)
    M._cache[key] = v
    return v


def _gp_verdict(M: Representation, bound: int) -> GpVerdict:
    A = M.algebra
    if is_projective(M):
        return _verdict(CERTIFIED_GP, bound, kind="projective")
    if is_isomorphic(M, star(star(M))) is None:
        return _verdict(CERTIFIED_NOT_GP, bound, kind="not-reflexive")
    d = gorenstein_dimension(A, bound)
    limit = bound if d is None else d
    reg = regular_module(A)
    for i in range(1, limit + 1):
        if ext(M, reg, i):
            return _verdict(CERTIFIED_NOT_GP, bound, kind="nonzero-ext", i=i, side="module")
    Ms = star(M)
    reg_op = regular_module(A.opposite())
    for i in range(1, limit + 1):
        if ext(Ms, reg_op, i):
            return _verdict(CERTIFIED_NOT_GP, bound, kind="nonzero-ext", i=i, side="dual")
    if d is not None:
        return _verdict(CERTIFIED_GP, bound, kind="gorenstein-dimension", d=d)
    # Omega^k M = Omega^j M with Ext^(1..j)(M, A) = 0 gives a periodic complete resolution
    orbit = [M]
    for j in range(1, bound + 1):
        X = syzygy(orbit[-1])
        if X.is_zero():
            break
        for k, Y in enumerate(orbit):
            if is_isomorphic(Y, X) is not None:
                return _verdict(CERTIFIED_GP, bound, kind="syzygy-periodicity", k=k, j=j)
        orbit.append(X)
    return _verdict(VANISHES_UP_TO_BOUND, bound, kind="none")


def gi_verdict(N: Representation, bound: int = DEFAULT_EXT_BOUND) -> GpVerdict:
    """Gorenstein injectivity of ``N`` as Gorenstein projectivity of ``D N`` over the opposite."""
    return gp_verdict(dual(N), bound)


def is_gorenstein_projective(M: Representation, bound: int = DEFAULT_EXT_BOUND) -> Optional[bool]:
    return gp_verdict(M, bound).as_bool()
