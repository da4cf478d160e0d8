"""Regression checks over the bundled worked examples.

Each check returns ``(name, passed, detail)``; :func:`run_all` runs them in a
fixed order.  The test suite asserts the same facts independently.
"""

from __future__ import annotations

import time
from typing import Callable, List, Tuple

from .formats import bundled
from .homology import (
    DEFAULT_EXT_BOUND,
    gi_verdict,
    gp_verdict,
    injective_dimension_probe,
    is_self_injective,
    transpose,
)
from .modules import (
    _indec_iso,
    decompose,
    direct_sum,
    dual,
    local_module,
    loewy_label,
    projective_vertex_of,
    simple,
    transport,
)
from .tilting import (
    bongartz_completion,
    check_support_tau_tilting,
    cm_tau_finiteness,
    dagger,
    enumerate_exchange_graph,
    ext_projectives,
    gp_filter,
    indecomposable_gp_tau_rigid,
    is_tau_rigid,
    perpendicular_indecomposables,
    same_pair,
    tau_rigid_indecomposables,
)
from .torsion import classify_torsion_pair, dual_side_check, torsion_pair_of, torsion_profile

Check = Tuple[str, bool, str]
COMPLETE_ALGEBRAS = ("3d", "3e", "36", "61", "a2", "semisimple2", "rad2zero")


def check_36(bound: int = DEFAULT_EXT_BOUND) -> Check:
    t = time.time()
    A = bundled("36")
    G = enumerate_exchange_graph(A, bound=bound)
    gp_tt = [p for p in gp_filter(G).tau_tilting if all(projective_vertex_of(X) is None for X in p.summands)]
    dt = time.time() - t
    ok = G.complete and len(G.nodes) == 24 and len(G.edges) == 36 and len(gp_tt) == 2 and dt < 30
    return ("36 exchange graph", ok, "%d nodes, %d edges, projective-free GP tau-tilting %s, %.1fs"
            % (len(G.nodes), len(G.edges), [p.label() for p in gp_tt], dt))


def check_3d(bound: int = DEFAULT_EXT_BOUND) -> Check:
    A = bundled("3d")
    ids = (injective_dimension_probe(A, "right", bound), injective_dimension_probe(A, "left", bound))
    m23, P2, S3 = local_module(A, "2", ["a2"]), local_module(A, "2"), simple(A, "3")
    T = check_support_tau_tilting(direct_sum(m23, P2, S3), [], bound=bound)
    ok = ids == (1, 1) and T.is_tau_tilting and T.gp.is_gp
    for M, P in ((direct_sum(m23, S3), ["1"]), (S3, ["1", "2"]), (None, ["1", "2", "3"])):
        p = check_support_tau_tilting(M, P, algebra=A, bound=bound)
        ok = ok and p.gp.is_gp and not p.is_tau_tilting
    return ("3d Gorenstein tau-tilting", ok, "id=%s, T=%s %s" % (ids, T.label(), T.gp.status))


def check_3e(bound: int = DEFAULT_EXT_BOUND) -> Check:
    A = bundled("3e")
    si = is_self_injective(A)
    T = direct_sum(simple(A, "2"), local_module(A, "2"))
    pair = check_support_tau_tilting(T, ["1"], bound=bound)
    nonproj = len(decompose(T).parts) == 2 and projective_vertex_of(simple(A, "2")) is None
    A1 = A.quotient_by_idempotent(["1"])
    p1 = check_support_tau_tilting(transport(T, A1), [], bound=bound)
    ok = bool(si) and pair.gp.is_gp and nonproj and p1.is_tau_tilting and p1.gp.is_not_gp
    return ("3e support pair and quotient", ok, "self-injective=%s, over quotient %s" % (bool(si), p1.gp.status))


def check_61(bound: int = DEFAULT_EXT_BOUND) -> Check:
    A = bundled("61")
    S1 = simple(A, "1")
    G = enumerate_exchange_graph(A, bound=bound)
    corpus = tau_rigid_indecomposables(G)
    perp = sorted(X.dims for X in perpendicular_indecomposables(S1, corpus))
    expected = sorted([(1, 0, 1, 0), (1, 1, 0, 0), (1, 0, 0, 1), (0, 0, 0, 1), (1, 0, 0, 0)])
    eproj = ext_projectives(S1, corpus)
    B = bongartz_completion(S1, G)
    non_gp = sorted(loewy_label(X) for X in B.summands if gp_verdict(X, bound).is_not_gp)
    ok = (gp_verdict(S1, bound).is_gp and is_tau_rigid(S1) and perp == expected and len(eproj) == 4
          and all(X.dims in expected for X in eproj) and B.gp.is_not_gp and non_gp == ["1/2", "1/3"])
    return ("61 Bongartz completion", ok, "completion %s, non-GP summands %s" % (B.label(), non_gp))


def check_bijections(bound: int = DEFAULT_EXT_BOUND) -> Check:
    bad = []
    for name in COMPLETE_ALGEBRAS:
        A = bundled(name)
        G = enumerate_exchange_graph(A, bound=bound)
        Gop = enumerate_exchange_graph(A.opposite(), bound=bound)
        for p in G.nodes:
            d = dagger(p)
            if not same_pair(dagger(d), p) or d.gp.status != p.gp.status or Gop.find(d) is None:
                bad.append((name, p.label()))
            for X in p.summands:
                if gp_verdict(X, bound).status != gi_verdict(dual(X), bound).status:
                    bad.append((name, "D", loewy_label(X)))
        if len(gp_filter(G).all) != len(gp_filter(Gop).all):
            bad.append((name, "count"))
        for X in tau_rigid_indecomposables(G):
            if projective_vertex_of(X) is None and _indec_iso(transpose(transpose(X)), X) is None:
                bad.append((name, "TrTr", loewy_label(X)))
    return ("dagger and duality suites", not bad, "mismatches %s" % bad)


def check_torsion(bound: int = DEFAULT_EXT_BOUND) -> Check:
    bad = []
    for name in COMPLETE_ALGEBRAS:
        G = enumerate_exchange_graph(bundled(name), bound=bound)
        corpus = tau_rigid_indecomposables(G)
        profiles = set()
        for p in G.nodes:
            d = torsion_pair_of(p)
            profiles.add(torsion_profile(d, corpus))
            c = classify_torsion_pair(d, bound)
            if not dual_side_check(d, bound).agree:
                bad.append((name, p.label(), "dual"))
            if name == "a2" and c.gorenstein and not c.trivial:
                bad.append((name, p.label(), "nontrivial"))
            if name == "3e" and c.gorenstein is not True:
                bad.append((name, p.label(), "not gorenstein"))
        if len(profiles) != len(G.nodes):
            bad.append((name, "injectivity"))
    return ("torsion suite", not bad, "mismatches %s" % bad)


def check_finiteness(bound: int = DEFAULT_EXT_BOUND) -> Check:
    bad = []
    k = cm_tau_finiteness(bundled("kronecker"), bound=bound)
    if (k.status, k.route) != ("Finite", "finite-global-dimension"):
        bad.append(("kronecker", k.status, k.route))
    e = cm_tau_finiteness(bundled("3e"), bound=bound)
    if (e.status, e.route) != ("Finite", "radical-square-zero-dichotomy"):
        bad.append(("3e", e.status, e.route))
    for name in COMPLETE_ALGEBRAS + ("kronecker",):
        A = bundled(name)
        v, w = cm_tau_finiteness(A, bound=bound), cm_tau_finiteness(A.opposite(), bound=bound)
        if v.status != w.status or (name in COMPLETE_ALGEBRAS and v.status != "Finite"):
            bad.append((name, v.status, w.status))
    return ("CM-tau finiteness", not bad, "mismatches %s" % bad)


def check_rad2_bongartz(bound: int = DEFAULT_EXT_BOUND) -> Check:
    bad = []
    for name in ("3e", "rad2zero"):
        G = enumerate_exchange_graph(bundled(name), bound=bound)
        for X in indecomposable_gp_tau_rigid(G):
            B = bongartz_completion(X, G)
            if not B.gp.is_gp:
                bad.append((name, loewy_label(X)))
    return ("radical square zero Bongartz", not bad, "failures %s" % bad)


CHECKS: List[Callable[[int], Check]] = [check_36, check_3d, check_3e, check_61, check_bijections, check_torsion,
                                        check_finiteness, check_rad2_bongartz]


def run_all(bound: int = DEFAULT_EXT_BOUND) -> List[Check]:
    out = []
    for c in CHECKS:
        try:
            out.append(c(bound))
        except Exception as e:  # a crash is a named failure
            out.append((c.__name__, False, "%s: %s" % (type(e).__name__, e)))
    return out
