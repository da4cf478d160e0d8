"""Torsion pairs attached to support tau-tilting pairs, and their Gorenstein classification.

A pair ``(M, P)`` gives the torsion pair ``(Fac M, Sub(tau M + nu P))``.  Both
classes are kept intensionally: a generator or cogenerator list plus a
membership oracle.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Sequence

from .homology import DEFAULT_EXT_BOUND, GpVerdict, gi_verdict, gp_verdict, nakayama, tau
from .modules import Representation, _indec_iso, hom, loewy_label, projective, projective_vertex_of
from .tilting import (
    ExchangeGraph,
    PairError,
    RigidPair,
    combine_verdicts,
    dagger,
    in_fac,
    in_sub,
)


@dataclass
class TorsionPairDescriptor:
    """``(T, F) = (Fac M, Sub(tau M + nu P))`` for a support tau-tilting pair."""

    pair: RigidPair
    generator: List[Representation]
    cogenerator: List[Representation]

    def in_torsion(self, X: Representation) -> bool:
        return in_fac(X, self.generator)

    def in_torsionfree(self, X: Representation) -> bool:
        return in_sub(X, self.cogenerator)


def torsion_pair_of(pair: RigidPair) -> TorsionPairDescriptor:
    """Build the descriptor and check ``Hom(generator, cogenerator) = 0``."""
    if not pair.is_support_tau_tilting:
        raise PairError("torsion pairs are attached to support tau-tilting pairs")
    A = pair.algebra
    gen = pair.summands
    cog = [t for t in (tau(X) for X in gen) if not t.is_zero()]
    cog += [nakayama(projective(A, v)) for v in pair.support_vertices]
    for X in gen:
        for Y in cog:
            if hom(X, Y).dim:
                raise PairError("generator %s maps nonzero to cogenerator %s" % (loewy_label(X), loewy_label(Y)))
    return TorsionPairDescriptor(pair, gen, cog)


def is_ext_projective_in(X: Representation, descriptor: TorsionPairDescriptor) -> bool:
    """Whether ``X`` (in the torsion class) is Ext-projective there, i.e. ``Hom(M, tau X) = 0``.

    Raises:
        PairError: if ``X`` is not in the torsion class.
    """
    if not descriptor.in_torsion(X):
        raise PairError("module is not in the torsion class")
    if X.is_zero():
        return True
    t = tau(X)
    return all(hom(G, t).dim == 0 for G in descriptor.generator)


@dataclass
class TorsionClassification:
    gorenstein: Optional[bool]
    trivial: bool
    verdict: GpVerdict


def classify_torsion_pair(descriptor: TorsionPairDescriptor, bound: int = DEFAULT_EXT_BOUND) -> TorsionClassification:
    """Gorenstein when the Ext-projective generator is GP; trivial when it is projective."""
    v = combine_verdicts([gp_verdict(X, bound) for X in descriptor.generator], bound)
    trivial = all(projective_vertex_of(X) is not None for X in descriptor.generator)
    return TorsionClassification(v.as_bool(), trivial, v)


@dataclass
class DualSideReport:
    agree: bool
    gorenstein: Optional[bool]
    cogenerator_gi: Optional[bool]
    opposite_gorenstein: Optional[bool]
    dagger_matches: bool


def dual_side_check(descriptor: TorsionPairDescriptor, bound: int = DEFAULT_EXT_BOUND) -> DualSideReport:
    """Compare the GP verdict of the generator with the GI verdict of the cogenerator.

    Also checks that ``D`` of the cogenerator is the generator of the dagger pair over
    the opposite algebra, and that this generator classifies the same way.
    """
    cls = classify_torsion_pair(descriptor, bound)
    gi = combine_verdicts([gi_verdict(Y, bound) for Y in descriptor.cogenerator], bound).as_bool()
    d = dagger(descriptor.pair)
    op_gor = combine_verdicts([gp_verdict(X, bound) for X in d.summands], bound).as_bool()
    from .modules import dual
    duals = [dual(Y) for Y in descriptor.cogenerator]
    matches = len(duals) == len(d.summands) and all(
        any(_indec_iso(Z, X) is not None for X in d.summands) for Z in duals)
    agree = matches and cls.gorenstein == gi == op_gor
    return DualSideReport(agree, cls.gorenstein, gi, op_gor, matches)


def torsion_profile(descriptor: TorsionPairDescriptor, corpus: Sequence[Representation]) -> tuple:
    return tuple(descriptor.in_torsion(X) for X in corpus)


def torsion_report(graph: ExchangeGraph, bound: int = DEFAULT_EXT_BOUND) -> List[dict]:
    """Per node: generator labels, Gorenstein and trivial flags, dual-side agreement."""
    out = []
    for k, p in enumerate(graph.nodes):
        d = torsion_pair_of(p)
        c = classify_torsion_pair(d, bound)
        ds = dual_side_check(d, bound)
        out.append({
            "node": k,
            "label": p.label(),
            "generator": [loewy_label(X) for X in d.generator],
            "cogenerator": [loewy_label(Y) for Y in d.cogenerator],
            "gorenstein": c.gorenstein,
            "trivial": c.trivial,
            "cogenerator_gi": ds.cogenerator_gi,
            "dual_side_agrees": ds.agree,
        })
    return out
