import random

import numpy as np
import pytest

from curvegrp.catalog import catalog
from curvegrp.errors import IncompleteConjugationTable, IntegerOverflow
from curvegrp.finitegrp import cyclic, dihedral, gk
from curvegrp.freegroup import Word, commutator
from curvegrp.presentation import (
    AbelianInvariants,
    Presentation,
    abelianization,
    add_relator,
    canonical_relator,
    change_basis,
    format_presentation,
    is_central_by_relators,
    kill_generator,
    parse_presentation,
    relation_matrix,
    rewrite_conjugations,
    tietze_simplify,
    tietze_with_substitutions,
)
from curvegrp.quotient import fingerprint
from curvegrp.smith import snf
from curvegrp.zvk import k_group, k_group_long, nodal_cubic_pipeline, z2_group

from oracles import determinantal_invariant_factors, elementary_invariant_factors

W = Word.parse
SMALL_BATTERY = [cyclic(2), cyclic(3), dihedral(3), dihedral(4), gk(3)]


def rels(*texts):
    return {canonical_relator(W(t)) for t in texts}


# -- construction ------------------------------------------------------------------

def test_relators_are_canonical_and_deduplicated():
    P = Presentation(("x", "y"), ("x y x^-1 y^-1", "y x y^-1 x^-1", "x^-1 y^-1 x y"))
    assert len(P.relators) == 1


def test_undeclared_generator_rejected():
    with pytest.raises(ValueError):
        Presentation(("x",), ("x y",))


def test_class_on_unknown_generator_rejected():
    with pytest.raises(ValueError):
        Presentation(("x",), (), {"y": "line:L1"})


def test_text_format_round_trip():
    P = k_group_long(3)
    assert parse_presentation(format_presentation(P)) == P


def test_parse_rejects_garbage():
    with pytest.raises(ValueError):
        parse_presentation("generators: x\nwhat is this\n")
    with pytest.raises(ValueError):
        parse_presentation("relator: x\n")


# -- kill / add ----------------------------------------------------------------------

def test_kill_a_in_fibered_nodal_cubic():
    killed = nodal_cubic_pipeline().killed
    assert killed.generators == ("m1", "m2", "b")
    assert set(killed.relators) == rels("m2^-1 m1^-1 m2 m1", "b^-1 m1 b m2^-1",
                                        "b^-1 m2 b m2 m1^-1 m2^-1")


def test_killed_presentation_matches_hand_relator_set():
    killed = nodal_cubic_pipeline().killed
    commutator_rel = W("m1^-1 m2^-1 b^-1 m2 m1 b")  # [m2 m1, b]
    # the hand set is contained in the normal closure of the killed relators
    assert canonical_relator(commutator("m2", "m1")) in killed.relators
    assert canonical_relator(W("b^-1 m1 b m2^-1")) in killed.relators
    assert rewrite_conjugations(killed, commutator_rel, "b").is_identity()
    # and conversely: the third killed relator is a product of conjugates of the hand set
    r2 = W("b^-1 m1 b m2^-1")
    target = W("b^-1 m2 b m2 m1^-1 m2^-1")
    assert W("m2 m1") * commutator_rel * W("m2^-1") * r2.inverse() * W("m2 m1^-1 m2^-1") == target


def test_kill_only_generator_gives_trivial_group():
    P = kill_generator(Presentation(("g",)), "g")
    assert P.generators == () and P.relators == ()


def test_kill_unknown_generator():
    with pytest.raises(ValueError):
        kill_generator(Presentation(("x",)), "y")


def test_add_relator_square():
    P = add_relator(Presentation(("x",)), "x^2")
    assert P.relators == (W("x^2"),)
    assert abelianization(P).torsion == (2,)


@pytest.mark.parametrize("P, g", [(nodal_cubic_pipeline().fibered, "a"), (k_group(3), "l"),
                                  (k_group_long(2), "x1")])
def test_kill_equals_add_then_eliminate(P, g):
    via_add = tietze_simplify(add_relator(P, Word.gen(g)))
    assert fingerprint(kill_generator(P, g), SMALL_BATTERY) == fingerprint(via_add, SMALL_BATTERY)


# -- tietze -----------------------------------------------------------------------------

def test_tietze_eliminates_generator():
    P = tietze_simplify(Presentation(("x", "y"), ("y x^-1",)))
    assert P.generators == ("x",) and P.relators == ()


def test_tietze_drops_identity_relator():
    P = tietze_simplify(Presentation(("x",), ("x x^-1",)))
    assert P.generators == ("x",) and P.relators == ()


def test_pipeline_stage_three():
    P = nodal_cubic_pipeline().simplified
    assert P.generators == ("m", "b")
    assert set(P.relators) == {canonical_relator(commutator("m", "b^2")),
                               canonical_relator(commutator("m^2", "b"))}


def test_tietze_respects_keep():
    P = Presentation(("x", "y"), ("y x^-1",))
    assert tietze_simplify(P, keep=("y",)).generators == ("y",)


def test_tietze_substitutions_are_recorded():
    Q, subs = tietze_with_substitutions(k_group_long(3))
    assert Q.generators == ("l", "x1")
    eliminated = [g for g, _ in subs]
    assert sorted(eliminated) == ["x2", "x3"]


def test_k_group_long_simplifies_to_k_group():
    for k in (2, 3):
        Q = tietze_simplify(k_group_long(k))
        Q = Presentation(("l", "x"), [r.substitute({"x1": Word.gen("x")}) for r in Q.relators])
        assert fingerprint(Q, SMALL_BATTERY) == fingerprint(k_group(k), SMALL_BATTERY)


def _catalog_presentations():
    names = [("nodal-cubic", []), ("smooth-family", []), ("type-I", ["3", "0", "0"]),
             ("type-II", ["3"]), ("k-group", ["4"]), ("k-group-long", ["3"]), ("bifamily", ["cusp"])]
    return [pytest.param(catalog(n, p).presentation, id=n) for n, p in names]


@pytest.mark.parametrize("P", _catalog_presentations())
def test_tietze_preserves_abelianization(P):
    assert abelianization(tietze_simplify(P)) == abelianization(P)


@pytest.mark.parametrize("P", _catalog_presentations())
def test_tietze_preserves_hom_counts(P):
    Q = tietze_simplify(P)
    if len(P.generators) > 6:
        pytest.skip("source too large for direct search")
    battery = SMALL_BATTERY + [dihedral(5), gk(4)]
    assert [h for h, _ in fingerprint(Q, battery)] == [h for h, _ in fingerprint(P, battery)]


# -- change of basis ---------------------------------------------------------------

def _pre_change():
    return Presentation(("m1", "b"), (commutator("m1", "b^2"), commutator("m1", "b m1 b")))


def test_change_basis_nodal_cubic():
    change = change_basis(_pre_change(), "m", "m1 b")
    assert change.presentation.generators == ("m", "b")
    assert set(change.presentation.relators) == {canonical_relator(commutator("m", "b^2")),
                                                 canonical_relator(commutator("m^2", "b"))}
    assert change.to_old == {"m": W("m1 b")}
    assert change.to_new == {"m1": W("m b^-1")}


def test_change_basis_identity_substitution():
    P = _pre_change()
    assert change_basis(P, "m1", "m1").presentation == P


def test_change_basis_round_trip():
    P = _pre_change()
    change = change_basis(P, "m", "m1 b")
    back = [r.substitute(change.to_old) for r in change.presentation.relators]
    assert Presentation(P.generators, back) == P


def test_change_basis_not_invertible():
    with pytest.raises(ValueError, match="not invertible"):
        change_basis(_pre_change(), "m", "m1^2 b^2")


def test_change_basis_unknown_generator():
    with pytest.raises(ValueError):
        change_basis(_pre_change(), "m", "m1 q")


def test_change_basis_preserves_invariants():
    P = _pre_change()
    Q = change_basis(P, "m", "m1 b").presentation
    assert abelianization(Q) == abelianization(P)
    assert fingerprint(Q, SMALL_BATTERY) == fingerprint(P, SMALL_BATTERY)


# -- rewriting ------------------------------------------------------------------------

def test_rewrite_product_commutes_with_a():
    P = nodal_cubic_pipeline().fibered
    assert rewrite_conjugations(P, W("m1^-1 m2^-1 a^-1 m2 m1 a"), "a").is_identity()


def test_rewrite_product_commutes_with_b():
    P = nodal_cubic_pipeline().fibered
    assert rewrite_conjugations(P, W("m1^-1 m2^-1 b^-1 m2 m1 b"), "b").is_identity()


def test_rewrite_conjugation_rule_itself():
    P = nodal_cubic_pipeline().fibered
    w = W("a^-1 m1 a") * W("m2 m1 m2^-1").inverse()
    assert rewrite_conjugations(P, w, "a").is_identity()


def test_rewrite_leaves_non_consequence_nontrivial():
    P = nodal_cubic_pipeline().fibered
    assert not rewrite_conjugations(P, W("a^-1 m1 a m1^-1"), "a").is_identity()


def test_rewrite_incomplete_table():
    P = Presentation(("a", "m", "n"), ("a^-1 m a n^-1",))
    with pytest.raises(IncompleteConjugationTable, match="incomplete conjugation table"):
        rewrite_conjugations(P, W("a^-1 n a"), "a")


def test_central_squares_in_stage_three():
    P = nodal_cubic_pipeline().simplified
    assert is_central_by_relators(P, "m^2") and is_central_by_relators(P, "b^2")
    assert not is_central_by_relators(P, "m")


# -- Smith normal form ------------------------------------------------------------------

def _check_snf(M):
    d, L, R = snf(M)
    A = np.array(M, dtype=object).reshape(len(M), len(M[0]) if len(M) else 0)
    D = L.astype(object).dot(A).dot(R.astype(object))
    r, c = A.shape
    assert all(D[i, j] == (d[i] if i == j else 0) for i in range(r) for j in range(c))
    assert abs(round(np.linalg.det(L.astype(float)))) == 1
    assert abs(round(np.linalg.det(R.astype(float)))) == 1
    for a, b in zip(d, d[1:]):
        assert (a == 0 and b == 0) or (a != 0 and b % a == 0)
    return d


def test_snf_two_by_two():
    assert _check_snf([[2, 4], [6, 8]]) == [2, 4]
    assert elementary_invariant_factors([[2, 4], [6, 8]]) == [2, 4]


def test_snf_identity():
    assert _check_snf([[1, 0, 0], [0, 1, 0], [0, 0, 1]]) == [1, 1, 1]


def test_snf_zero():
    assert _check_snf([[0]]) == [0]


def test_snf_empty_shapes():
    d, L, R = snf(np.zeros((0, 3), dtype=np.int64))
    assert d == [] and L.shape == (0, 0) and R.shape == (3, 3)


def test_snf_overflow_is_reported():
    big = 2**62
    # the second invariant factor is det / big = 2^63, one past the int64 range
    with pytest.raises(IntegerOverflow, match="overflow; matrix out of supported range"):
        snf([[big, big], [-big, big]])
    with pytest.raises(IntegerOverflow):
        snf([[2**64]])


def test_snf_rejects_non_matrix():
    with pytest.raises(ValueError):
        snf([1, 2, 3])


def test_snf_matches_oracles_randomly():
    rng = random.Random(7)
    for _ in range(150):
        r, c = rng.randint(1, 5), rng.randint(1, 5)
        M = [[rng.randint(-9, 9) for _ in range(c)] for _ in range(r)]
        d = _check_snf(M)
        assert d == elementary_invariant_factors(M) == determinantal_invariant_factors(M)


def test_snf_preserves_determinant():
    rng = random.Random(11)
    for _ in range(60):
        n = rng.randint(1, 5)
        M = [[rng.randint(-12, 12) for _ in range(n)] for _ in range(n)]
        d = _check_snf(M)
        prod = 1
        for x in d:
            prod *= x
        assert prod == abs(round(np.linalg.det(np.array(M, dtype=float))))


# -- abelianization ------------------------------------------------------------------------

@pytest.mark.parametrize("k", [1, 2, 3, 5])
def test_k_group_abelianization(k):
    assert not relation_matrix(k_group(k)).any()
    assert abelianization(k_group(k)) == AbelianInvariants(2)


def test_two_involutions_abelianization():
    assert abelianization(Presentation(("m", "b"), ("m^2", "b^2"))) == AbelianInvariants(0, (2, 2))


def test_free_cyclic_abelianization():
    assert abelianization(Presentation(("x",))) == AbelianInvariants(1)


def test_abelian_invariants_validate_chain():
    with pytest.raises(ValueError):
        AbelianInvariants(0, (2, 3))
    assert str(AbelianInvariants(2, (2, 4))) == "Z^2 x Z/2 x Z/4"


def test_z2_group_is_rank_two():
    assert abelianization(z2_group()).rank == 2
