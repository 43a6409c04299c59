import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from crystalquiver.binfinity import generate_blambda, top_element
from crystalquiver.cartan import preset
from crystalquiver.crystal import (NEG_INF, CrystalGraph, DepthError, ElementaryElement, GraphElement,
                                   TElement, TensorElement, check_axioms, check_morphism, closure,
                                   connected_components, ext_from_json, ext_to_json,
                                   highest_weight_elements, t_lambda_graph, tensor, tensor_e, tensor_f,
                                   tensor_graph, tensor_structure,
                                   verify_highest_weight_characterization)

from conftest import sl2_string_oracle


def leaves(b):
    if isinstance(b, TensorElement):
        return leaves(b.left) + leaves(b.right)
    return (b.key,)


def test_neg_infinity_arithmetic():
    assert NEG_INF < -10**9 and not NEG_INF > 0
    assert NEG_INF + 5 is NEG_INF and 5 + NEG_INF is NEG_INF
    assert max(NEG_INF, 3) == 3
    assert ext_from_json(ext_to_json(NEG_INF)) is NEG_INF and ext_from_json(ext_to_json(4)) == 4


def test_t_lambda():
    c = preset("A2")
    g = t_lambda_graph(c, (1, 2))
    assert len(g) == 1 and not g.f_edges
    assert g.eps[g.elements[0]] == (NEG_INF, NEG_INF)
    assert check_axioms(g).ok


def test_tensor_with_t_lambda_shifts_weight_only():
    c = preset("A1")
    b = generate_blambda(c, (2,), 4)
    g = tensor_graph(b, t_lambda_graph(c, (3,)))
    assert len(g) == 3
    assert sorted(g.wt[k].lam for k in g.elements) == [(5,)] * 3
    # phi gains <h, lam>, eps unchanged
    assert sorted(g.eps[k] for k in g.elements) == [(0,), (1,), (2,)]


def test_sl2_signature_rule_example():
    c = preset("A1")
    b = generate_blambda(c, (1,), 3)
    top, low = b.elements
    x, y = GraphElement(b, top), GraphElement(b, low)
    # f acts on the left factor of top (x) top
    assert leaves(tensor_f(x, x, 0)) == (low, top)
    # f on low (x) top acts on the right
    assert leaves(tensor_f(y, x, 0)) == (low, low)
    # top (x) low is highest weight for the singlet: e kills it, f kills it
    assert tensor_e(x, y, 0) is None and tensor_f(x, y, 0) is None
    eps, phi, wt = tensor_structure(x, y, 0)
    assert (eps, phi, wt.height) == (0, 0, -1)


@pytest.mark.parametrize("k,l", [(1, 1), (2, 1), (3, 2), (4, 4)])
def test_sl2_clebsch_gordan(k, l):
    c = preset("A1")
    g = tensor_graph(generate_blambda(c, (k,), 10), generate_blambda(c, (l,), 10))
    assert check_axioms(g).ok
    sizes = sorted((len(x) for x in connected_components(g)), reverse=True)
    assert sizes == [k + l + 1 - 2 * j for j in range(min(k, l) + 1)]


@pytest.mark.parametrize("lam1,lam2,sizes", [((1, 0), (1, 0), [6, 3]), ((1, 0), (0, 1), [8, 1])])
def test_a2_tensor_decomposition(lam1, lam2, sizes):
    c = preset("A2")
    g = tensor_graph(generate_blambda(c, lam1, 6), generate_blambda(c, lam2, 6))
    comps = connected_components(g)
    assert sorted((len(x) for x in comps), reverse=True) == sizes
    for comp in comps:
        assert len(highest_weight_elements(comp)) == 1


def factor_pool(c):
    pool = []
    for lam in [tuple(int(i == j) for j in range(c.n)) for i in range(c.n)]:
        g = generate_blambda(c, lam, 6)
        pool += [GraphElement(g, k) for k in g.elements]
    pool += [TElement(c, (1,) * c.n), TElement(c, (0,) * c.n)]
    pool += [ElementaryElement(c, i, n) for i in range(c.n) for n in (-1, 0, 2)]
    return pool


@pytest.mark.parametrize("name", ["A1", "A2"])
def test_tensor_associativity(name):
    c = preset(name)
    pool = factor_pool(c)
    triples = list(itertools.product(pool, repeat=3))
    triples = random.Random(7).sample(triples, min(400, len(triples)))
    for b1, b2, b3 in triples:
        left, right = tensor(tensor(b1, b2), b3), TensorElement(b1, tensor(b2, b3))
        assert left.wt() == right.wt()
        for i in range(c.n):
            assert left.eps(i) == right.eps(i) and left.phi(i) == right.phi(i)
            for op in ("e", "f"):
                x, y = getattr(left, op)(i), getattr(right, op)(i)
                assert (x is None) == (y is None)
                if x is not None:
                    assert leaves(x) == leaves(y)


def test_elementary_crystal_is_a_crystal():
    c = preset("A2")
    b = ElementaryElement(c, 1, 0)
    assert b.f(1).key == "b1(-1)" and b.e(0) is None
    assert b.eps(1) == 0 and b.phi(0) is NEG_INF
    # eps/phi relation C1 on the colored index
    for n in range(-3, 4):
        x = ElementaryElement(c, 1, n)
        assert x.phi(1) == x.eps(1) + c.pairing(1, x.wt())


@pytest.mark.parametrize("name,lam", [("A1", (3,)), ("A2", (1, 1)), ("A3", (0, 1, 0))])
def test_generated_graphs_pass_axioms(name, lam):
    g = generate_blambda(preset(name), lam, 12)
    rep = check_axioms(g)
    assert rep.ok, rep.violations[:3]
    assert rep.info["elements"] == len(g)


def _mutate_eps(g):
    k = g.elements[1]
    eps = dict(g.eps)
    eps[k] = (eps[k][0] + 1,) + eps[k][1:]
    return CrystalGraph(g.cartan, g.elements, g.wt, eps, g.phi, g.f_edges,
                        seminormal=g.seminormal, meta=g.meta)


def _delete_edge(g, which=0):
    edges = dict(g.f_edges)
    del edges[sorted(edges)[which]]
    return CrystalGraph(g.cartan, g.elements, g.wt, g.eps, g.phi, edges, seminormal=g.seminormal, meta=g.meta)


@pytest.mark.parametrize("name,lam", [("A1", (2,)), ("A2", (1, 1)), ("D4", (1, 0, 0, 0))])
def test_axiom_mutations_are_caught(name, lam):
    g = generate_blambda(preset(name), lam, 10)
    assert not check_axioms(_mutate_eps(g)).ok
    for j in range(len(g.f_edges)):
        assert not check_axioms(_delete_edge(g, j)).ok


def test_axioms_catch_double_preimage_and_bad_weight():
    c = preset("A1")
    g = generate_blambda(c, (2,), 4)
    a, b, z = g.elements
    edges = dict(g.f_edges)
    edges[(z, 0)] = b  # z -> b would make b have two f-preimages and wrong weight
    bad = CrystalGraph(c, g.elements, g.wt, g.eps, g.phi, edges)
    axioms = {v["axiom"] for v in check_axioms(bad).violations}
    assert {"C3", "C2'"} <= axioms


def test_identity_is_strict_morphism():
    g = generate_blambda(preset("A2"), (1, 1), 8)
    ident = {k: k for k in g.elements}
    assert check_morphism(g, g, ident, strict=True).ok


def test_component_embedding_is_morphism():
    c = preset("A1")
    g = tensor_graph(generate_blambda(c, (1,), 3), generate_blambda(c, (1,), 3))
    for comp in connected_components(g):
        assert check_morphism(comp, g, {k: k for k in comp.elements}, strict=True).ok


def test_morphism_violation_reported():
    c = preset("A1")
    g = generate_blambda(c, (2,), 4)
    top, mid, low = g.elements
    psi = {top: top, mid: low, low: None}
    rep = check_morphism(g, g, psi)
    assert not rep.ok
    assert any(v["condition"] == "2.2.3" for v in rep.violations)


def test_json_roundtrip_and_dot_is_stable():
    g = generate_blambda(preset("A2"), (1, 1), 8)
    h = CrystalGraph.from_json(g.dumps())
    assert h.dumps() == g.dumps()
    assert g.to_dot() == h.to_dot()
    assert g.to_dot().count("->") == len(g.f_edges)


def test_closure_limits():
    c = preset("A1")
    with pytest.raises(ValueError):
        closure([ElementaryElement(c, 0, 0)], max_size=20)
    with pytest.raises(ValueError):
        closure([])


@pytest.mark.parametrize("k", range(1, 7))
def test_sl2_oracle(k):
    g = generate_blambda(preset("A1"), (k,), k + 2)
    got = sorted(((g.wt[x].nu), g.eps[x][0], g.phi[x][0]) for x in g.elements)
    assert got == sorted(sl2_string_oracle(k))


def test_characterization_passes_and_needs_depth():
    c = preset("A2")
    g = generate_blambda(c, (1, 1), 8)
    rep = verify_highest_weight_characterization(g, top_element(g), (1, 1))
    assert rep.ok, rep.violations[:3]
    with pytest.raises(DepthError):
        verify_highest_weight_characterization(g, top_element(g), (1, 1), binf_depth=2)
    cut = generate_blambda(c, (1, 1), 2)
    assert cut.truncated
    with pytest.raises(DepthError):
        verify_highest_weight_characterization(cut, top_element(cut), (1, 1))


def disjoint_union(g, h):
    """``g`` and a relabelled copy of ``h`` side by side."""
    ren = {k: "copy:" + k for k in h.elements}
    return CrystalGraph(
        g.cartan, g.elements + [ren[k] for k in h.elements],
        {**g.wt, **{ren[k]: h.wt[k] for k in h.elements}},
        {**g.eps, **{ren[k]: h.eps[k] for k in h.elements}},
        {**g.phi, **{ren[k]: h.phi[k] for k in h.elements}},
        {**g.f_edges, **{(ren[k], i): ren[t] for (k, i), t in h.f_edges.items()}},
        seminormal=True,
    )


def test_characterization_rejects_wrong_graphs():
    c = preset("A1")
    g = generate_blambda(c, (2,), 5)
    assert verify_highest_weight_characterization(g, "s()", (2,)).ok
    # wrong highest weight
    assert not verify_highest_weight_characterization(generate_blambda(c, (3,), 5), "s()", (2,)).ok
    # two tops of weight lam
    rep = verify_highest_weight_characterization(disjoint_union(g, g), "s()", (2,))
    assert any(v["condition"] == "1" for v in rep.violations)
    # B(2) inside a larger graph: the extra elements are never hit
    rep = verify_highest_weight_characterization(disjoint_union(g, generate_blambda(c, (0,), 2)), "s()", (2,))
    assert any(v.get("kind") == "surjective" for v in rep.violations)


@settings(max_examples=20, deadline=None)
@given(st.sampled_from([("A1", 1), ("A2", 2), ("A3", 3)]), st.data())
def test_random_generated_graphs_are_crystals(case, data):
    name, n = case
    lam = data.draw(st.tuples(*[st.integers(0, 2)] * n))
    g = generate_blambda(preset(name), lam, 10)
    assert check_axioms(g).ok
    assert highest_weight_elements(g) == [top_element(g)] or g.truncated
