import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from crystalquiver.binfinity import (IotaSequence, StringElement, b_zero, binf_e, binf_eps, binf_f,
                                     binf_phi, binfinity_tensor_graph, canonical_pairing, generate_blambda,
                                     graph_word, guarded_word, pi_lambda, top_element)
from crystalquiver.cartan import preset
from crystalquiver.crystal import DepthError, ElementaryElement, check_axioms, tensor

from conftest import SUITE, freudenthal_oracle, weyl_dimension_oracle

TYPES = ["A1", "A2", "A3", "D4", "A1~"]


def words(n, max_len=9):
    return st.lists(st.integers(0, n - 1), max_size=max_len)


def reach(c, iota, word):
    """``f_{word}`` applied to the zero string: the elements of B(inf)."""
    s = StringElement(c, iota)
    for i in word:
        s = binf_f(s, i)
    return s


def padded_tensor(s, pad):
    """The string as an honest finite tensor of elementary crystals, left-padded with zeros."""
    a = list(s.a) + [0] * pad
    factors = [ElementaryElement(s.cartan, s.iota[k], a[k]) for k in range(len(a) - 1, -1, -1)]
    return tensor(*factors) if len(factors) > 1 else factors[0]


def as_string(b, s):
    """Read a tensor of elementaries back into a string."""
    keys = []
    stack = [b]
    while stack:
        x = stack.pop()
        if hasattr(x, "left"):
            stack += [x.left, x.right]
        else:
            keys.append(x.n)
    return StringElement(s.cartan, s.iota, keys)


@pytest.mark.parametrize("name", TYPES)
def test_string_model_matches_tensor_rule(name):
    c = preset(name)
    iota = IotaSequence.default(c.n)

    @settings(max_examples=60, deadline=None)
    @given(words(c.n))
    def check(word):
        s = reach(c, iota, word)
        t = padded_tensor(s, 2 * c.n + 1)
        for i in range(c.n):
            assert binf_eps(s, i) == t.eps(i)
            assert binf_phi(s, i) == t.phi(i)
            assert as_string(t.f(i), s) == binf_f(s, i)
            e = t.e(i)
            # in B(inf) e_i is 0 exactly when it would push an entry above 0
            expect = None if e is None or any(x.n > 0 for x in _leaves(e)) else as_string(e, s)
            assert binf_e(s, i) == expect

    check()


def _leaves(b):
    if hasattr(b, "left"):
        return _leaves(b.left) + _leaves(b.right)
    return [b]


@pytest.mark.parametrize("name", TYPES)
def test_e_f_inverse(name):
    c = preset(name)
    iota = IotaSequence.default(c.n)

    @settings(max_examples=50, deadline=None)
    @given(words(c.n))
    def check(word):
        s = reach(c, iota, word)
        for i in range(c.n):
            assert binf_e(binf_f(s, i), i) == s
            e = binf_e(s, i)
            if e is not None:
                assert binf_f(e, i) == s
            # eps is the e-string length
            k, x = 0, s
            while (x := binf_e(x, i)) is not None:
                k += 1
            assert k == binf_eps(s, i)
            assert binf_eps(binf_f(s, i), i) == binf_eps(s, i) + 1

    check()


def test_reachable_strings_are_nonpositive_and_weights_add():
    c = preset("A2")
    s = b_zero(c)
    for i in (0, 1, 0, 1, 1):
        s = binf_f(s, i)
    assert all(x <= 0 for x in s.a)
    assert s.wt().nu == (-2, -3)
    assert s.height == -5


def test_iota_validation():
    with pytest.raises(ValueError):
        IotaSequence((0, 0)).validate(2)
    with pytest.raises(ValueError):
        IotaSequence(())
    assert IotaSequence((1, 0)).next_position(0, 2) == 3


def test_string_element_errors_and_json():
    c = preset("A2")
    with pytest.raises(ValueError):
        StringElement(c, IotaSequence.default(2), (1,))
    s = StringElement(c, IotaSequence((1, 0)), (-1, -2, 0, 0))
    assert s.a == (-1, -2) and s.key == "s(-1,-2)"
    assert StringElement.from_json(c, s.to_json()) == s


@pytest.mark.parametrize("name,lam", SUITE)
def test_census_matches_oracles(name, lam):
    c = preset(name)
    g = generate_blambda(c, lam, 30)
    assert not g.truncated
    assert len(g) == weyl_dimension_oracle(c.matrix, lam)
    assert g.weight_census() == freudenthal_oracle(c.matrix, lam, 30)


@pytest.mark.parametrize("name,lam,cycle", [("A2", (1, 1), (1, 0)), ("A3", (1, 0, 1), (2, 0, 1)),
                                            ("A3", (0, 1, 0), (1, 2, 0, 2, 1, 0))])
def test_other_iota_gives_isomorphic_graph(name, lam, cycle):
    c = preset(name)
    g1 = generate_blambda(c, lam, 20)
    g2 = generate_blambda(c, lam, 20, iota=cycle)
    assert check_axioms(g2).ok
    assert canonical_pairing(g1, top_element(g1), g2, top_element(g2)) is not None


def test_canonical_pairing_detects_difference():
    c = preset("A2")
    g1 = generate_blambda(c, (1, 0), 5)
    g2 = generate_blambda(c, (0, 1), 5)
    assert canonical_pairing(g1, top_element(g1), g2, top_element(g2)) is None


def test_truncation_flag():
    c = preset("A1~")
    g = generate_blambda(c, (1, 0), 4)
    assert g.truncated and check_axioms(g).ok
    assert max(-g.wt[k].height for k in g.elements) == 4
    with pytest.raises(ValueError):
        generate_blambda(c, (1, 0), -1)


def test_affine_graph_layers_grow():
    c = preset("A1~")
    sizes = [len(generate_blambda(c, (1, 0), d)) for d in range(6)]
    assert sizes == sorted(sizes) and sizes[0] == 1


def test_pi_lambda():
    c = preset("A2")
    g = generate_blambda(c, (1, 0), 10)
    top = b_zero(c)
    assert pi_lambda(top, (1, 0), g) == "s()"
    assert pi_lambda(binf_f(top, 1), (1, 0), g) is None
    assert pi_lambda(binf_f(binf_f(top, 0), 1), (1, 0), g) is not None
    with pytest.raises(ValueError):
        pi_lambda(top, (0, 1), g)
    cut = generate_blambda(c, (1, 1), 1)
    deep = binf_f(binf_f(binf_f(top, 0), 1), 0)
    with pytest.raises(DepthError):
        pi_lambda(deep, (1, 1), cut)


@pytest.mark.parametrize("name,lam", [("A2", (1, 1)), ("A3", (0, 1, 0)), ("D4", (1, 0, 0, 0))])
def test_guarded_word_agrees_with_graph_walk(name, lam):
    c = preset(name)
    g = generate_blambda(c, lam, 30)
    rng = random.Random(11)
    for _ in range(200):
        word = [rng.randrange(c.n) for _ in range(rng.randint(0, 8))]
        s = guarded_word(c, lam, word)
        k = graph_word(g, top_element(g), word)
        assert (s is None) == (k is None)
        if s is not None:
            assert s.key == k


def test_binfinity_tensor_graph_is_free():
    c = preset("A2")
    g = binfinity_tensor_graph(c, (1, 0), 3)
    # f never vanishes on B(inf): every non-bottom element has all f-edges
    for k in g.elements:
        if -g.wt[k].height < 3:
            assert all(g.f(k, i) is not None for i in range(c.n))
    assert check_axioms(g).ok


def test_pi_lambda_sl2_examples():
    c = preset("A1")
    g = generate_blambda(c, (2,), 6)
    iota = IotaSequence.default(1)
    assert pi_lambda(StringElement(c, iota, (-3,)), (2,), g) is None
    low = pi_lambda(StringElement(c, iota, (-2,)), (2,), g)
    assert low == g.elements[-1] and g.wt[low].nu == (-2,)
