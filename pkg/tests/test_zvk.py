import pytest

from curvegrp.finitegrp import cyclic, dihedral, gk
from curvegrp.freegroup import BraidWord, Word, commutator
from curvegrp.presentation import (
    AbelianInvariants,
    Presentation,
    abelianization,
    add_relator,
    canonical_relator,
    rewrite_conjugations,
    tietze_simplify,
)
from curvegrp.quotient import epimorphisms, fingerprint
from curvegrp.zvk import (
    Fiber,
    MonodromyInput,
    fiber_relators,
    fibered_presentation,
    k_group,
    k_group_long,
    local_braid,
    nodal_cubic_input,
    nodal_cubic_pipeline,
    projective_quotient,
    z2_group,
)

from conftest import decreasing_product, random_braid

W = Word.parse


def braid(n, text):
    return BraidWord.parse(n, text)


# -- fibered presentations ---------------------------------------------------------

def test_nodal_cubic_fibered_relators():
    P = fibered_presentation(nodal_cubic_input())
    assert P.generators == ("m1", "m2", "a", "b")
    expected = [
        W("a^-1 m1 a") * W("m2 m1 m2^-1").inverse(),
        W("a^-1 m2 a") * W("m2 m1 m2 m1^-1 m2^-1").inverse(),
        W("b^-1 m1 b") * W("m2").inverse(),
        W("b^-1 m2 b") * W("m2 m1 m2^-1").inverse(),
    ]
    assert set(P.relators) == {canonical_relator(r) for r in expected}
    assert P.classes == {"m1": "strand", "m2": "strand", "a": "vertical:alpha", "b": "vertical:beta"}


def test_nodal_cubic_hand_set_is_certified():
    P = fibered_presentation(nodal_cubic_input())
    hand = {"a": [W("a^-1 m1 a") * W("m2 m1 m2^-1").inverse(), commutator("m2 m1", "a")],
            "b": [W("b^-1 m1 b m2^-1"), commutator("m2 m1", "b")]}
    for outer, words in hand.items():
        for w in words:
            assert rewrite_conjugations(P, w, outer).is_identity()
    # conversely, each emitted relator follows from the hand set: the a-rules of the
    # emitted presentation are exactly what the hand set forces on m1 and m2 m1
    hand_P = Presentation(P.generators, hand["a"] + hand["b"])
    battery = [cyclic(2), dihedral(3), dihedral(4), gk(3)]
    assert fingerprint(hand_P, battery) == fingerprint(P, battery)


def test_single_meridianless_fiber_dedups_to_commutator():
    data = MonodromyInput(2, (Fiber(braid(2, "s1^2")),))
    raw = fiber_relators(data)
    assert len(raw) == 1 and len(raw[0]) == 2
    P = fibered_presentation(data)
    assert P.relators == (canonical_relator(commutator("m2", "m1")),)


def test_no_fibers_gives_free_group():
    P = fibered_presentation(MonodromyInput(3))
    assert P.generators == ("m1", "m2", "m3") and P.relators == ()


def test_relators_per_fiber(rng):
    for _ in range(20):
        n = rng.randint(2, 5)
        fibers = tuple(Fiber(random_braid(rng, n), f"v{i}" if rng.random() < 0.5 else None, f"f{i}")
                       for i in range(rng.randint(0, 3)))
        data = MonodromyInput(n, fibers)
        assert all(len(block) == n for block in fiber_relators(data))


def test_product_commutes_with_every_vertical_meridian(rng):
    for _ in range(25):
        n = rng.randint(2, 5)
        fibers = tuple(Fiber(random_braid(rng, n, 6), f"v{i}", f"f{i}") for i in range(2))
        data = MonodromyInput(n, fibers)
        P = fibered_presentation(data)
        prod = decreasing_product(n)
        for f in fibers:
            assert rewrite_conjugations(P, commutator(prod, f.meridian), f.meridian).is_identity()


def test_braid_strand_mismatch():
    with pytest.raises(ValueError):
        MonodromyInput(3, (Fiber(braid(2, "s1")),))


def test_meridian_name_clash():
    with pytest.raises(ValueError):
        MonodromyInput(2, (Fiber(braid(2, "s1"), "m1"),))


# -- projective closure --------------------------------------------------------------

def test_smooth_conic_closure():
    data = MonodromyInput(2, (Fiber(braid(2, "s1")), Fiber(braid(2, "s1"))))
    P = projective_quotient(fibered_presentation(data), data)
    assert abelianization(P) == AbelianInvariants(0, (2,))


def test_one_strand_closure_is_trivial():
    data = MonodromyInput(1)
    P = tietze_simplify(projective_quotient(fibered_presentation(data), data))
    assert P.generators == () and P.relators == ()


def test_free_rank_two_closure_is_z():
    data = MonodromyInput(2)
    P = projective_quotient(fibered_presentation(data), data)
    assert P.relators == (W("m1 m2"),)
    assert abelianization(P) == AbelianInvariants(1)


def test_fibered_closure_unsupported():
    data = nodal_cubic_input()
    with pytest.raises(ValueError, match="projective closure of fibered data unsupported"):
        projective_quotient(fibered_presentation(data), data)


# -- local braids --------------------------------------------------------------------

def test_tangency_braid():
    assert local_braid("tangency", r=0) == braid(2, "s1^2")
    assert local_braid("tangency", r=2) == braid(2, "s1^10")


def test_node_and_asymptote_braids():
    assert local_braid("node") == braid(2, "s1^2")
    assert local_braid("asymptote") == braid(2, "s1^-2")


def test_type_two_asymptote_braid():
    assert local_braid("asymptote_typeII", k=3) == braid(3, "s1^-1 s2^-2 s1^-1")
    assert local_braid("asymptote_typeII", k=4).strands == 4


@pytest.mark.parametrize("kind, kw", [("tangency", {"r": -1}), ("asymptote_typeII", {"k": 2}),
                                      ("cusp", {})])
def test_local_braid_bad_parameters(kind, kw):
    with pytest.raises(ValueError):
        local_braid(kind, **kw)


# -- named groups --------------------------------------------------------------------

def test_k_group_two():
    P = k_group(2)
    assert set(P.relators) == {canonical_relator(commutator("x", "l^2")),
                               canonical_relator(commutator("x", "l^-1 x l"))}
    assert P.classes == {"l": "line:L1", "x": "curve:D"}


def test_k_group_one_is_z2():
    assert k_group(1).relators == z2_group().relators


def test_k_group_three():
    P = k_group(3)
    expected = [commutator("x", "l^3"), commutator("x", "l^-1 x l"), commutator("x", "l^-2 x l^2")]
    assert set(P.relators) == {canonical_relator(r) for r in expected}


def test_k_group_matches_symmetric_form():
    # the two-generator form with [x^2, y] = [y^2, x] = 1
    sym = Presentation(("y", "x"), (commutator("x^2", "y"), commutator("y^2", "x")))
    battery = [cyclic(2), dihedral(3), dihedral(4), gk(3), gk(4)]
    assert fingerprint(sym, battery) == fingerprint(k_group(2), battery)


def test_k_group_invalid():
    with pytest.raises(ValueError):
        k_group(0)
    with pytest.raises(ValueError):
        k_group_long(0)


def test_k_group_long_two():
    P = k_group_long(2)
    expected = [commutator("x1", "x2"), W("l^-1 x1 l x2^-1"), W("l^-1 x2 l x1^-1")]
    assert P.generators == ("l", "x1", "x2")
    assert set(P.relators) == {canonical_relator(r) for r in expected}


def test_k_group_long_one():
    assert k_group_long(1).relators == (canonical_relator(W("l^-1 x1 l x1^-1")),)


def test_k_group_long_three_fingerprint():
    battery = [dihedral(3), gk(3), cyclic(2), cyclic(3)]
    assert fingerprint(k_group_long(3), battery) == fingerprint(k_group(3), battery)


# -- the nodal cubic pipeline ----------------------------------------------------------

def test_pipeline_stages():
    stages = nodal_cubic_pipeline()
    assert len(stages.fibered.generators) == 4
    assert stages.killed.generators == ("m1", "m2", "b")
    assert set(stages.simplified.relators) == {canonical_relator(commutator("m", "b^2")),
                                               canonical_relator(commutator("m^2", "b"))}


def test_pipeline_abelianization():
    assert abelianization(nodal_cubic_pipeline().simplified) == AbelianInvariants(2)


def test_pipeline_is_not_abelian():
    battery = [dihedral(3), dihedral(4), dihedral(5)]
    P = nodal_cubic_pipeline().simplified
    assert fingerprint(P, battery) != fingerprint(z2_group(), battery)


@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_quotient_by_squares_maps_onto_dihedral(n):
    P = nodal_cubic_pipeline().simplified
    Q = add_relator(add_relator(P, "m^2"), "b^2")
    assert len(epimorphisms(Q, dihedral(n))) > 0
