import pytest

from tautilt.formats import bundled
from tautilt.modules import hom, projective, simple
from tautilt.tilting import PairError, check_pair, enumerate_exchange_graph, tau_rigid_indecomposables
from tautilt.torsion import (
    classify_torsion_pair,
    dual_side_check,
    is_ext_projective_in,
    torsion_pair_of,
    torsion_profile,
    torsion_report,
)


@pytest.mark.parametrize("name", ("3e", "36", "a2", "rad2zero"))
def test_torsion_pairs_are_orthogonal_and_distinct(name):
    G = enumerate_exchange_graph(bundled(name))
    corpus = tau_rigid_indecomposables(G)
    seen = set()
    for p in G.nodes:
        d = torsion_pair_of(p)
        for X in d.generator:
            assert d.in_torsion(X)
            assert is_ext_projective_in(X, d)
            for Y in d.cogenerator:
                assert hom(X, Y).dim == 0
        for Y in d.cogenerator:
            assert d.in_torsionfree(Y)
        seen.add(torsion_profile(d, corpus))
    assert len(seen) == len(G.nodes)


def test_extremes():
    A = bundled("a2")
    G = enumerate_exchange_graph(A)
    top = torsion_pair_of(G.nodes[0])
    assert all(top.in_torsion(simple(A, i)) for i in range(2))
    bottom = [p for p in G.nodes if not p.summands][0]
    d = torsion_pair_of(bottom)
    assert not d.in_torsion(simple(A, 0))
    assert d.in_torsionfree(projective(A, 0))


def test_ext_projective_requires_membership():
    A = bundled("a2")
    G = enumerate_exchange_graph(A)
    bottom = [p for p in G.nodes if not p.summands][0]
    with pytest.raises(PairError):
        is_ext_projective_in(simple(A, 0), torsion_pair_of(bottom))


def test_non_support_pair_rejected():
    A = bundled("3e")
    with pytest.raises(PairError):
        torsion_pair_of(check_pair(simple(A, "2"), [], A))


def test_classification_a2():
    G = enumerate_exchange_graph(bundled("a2"))
    for p in G.nodes:
        c = classify_torsion_pair(torsion_pair_of(p))
        assert c.gorenstein is not None
        if c.gorenstein:
            assert c.trivial
        assert dual_side_check(torsion_pair_of(p)).agree


def test_report_shape():
    rows = torsion_report(enumerate_exchange_graph(bundled("3e")))
    assert len(rows) == 14
    assert all(r["gorenstein"] and r["dual_side_agrees"] for r in rows)
