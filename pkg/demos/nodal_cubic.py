"""Walk through the nodal cubic example step by step.

Run with ``python3 demos/nodal_cubic.py``.
"""
from curvegrp import (
    abelianization,
    change_basis,
    epimorphisms,
    fingerprint,
    kill_generator,
    rewrite_conjugations,
    tietze_simplify,
)
from curvegrp.finitegrp import dihedral
from curvegrp.freegroup import commutator
from curvegrp.presentation import add_relator
from curvegrp.zvk import fibered_presentation, nodal_cubic_input, z2_group


def main():
    data = nodal_cubic_input()
    P = fibered_presentation(data)
    print("fibered presentation:")
    print(" ", P)

    # the product of the strand meridians commutes with each vertical meridian
    for outer in ("a", "b"):
        w = commutator("m2 m1", outer)
        print(f"  [m2 m1, {outer}] rewrites to", rewrite_conjugations(P, w, outer))

    killed = kill_generator(P, "a")
    print("after killing a:")
    print(" ", killed)

    changed = change_basis(killed, "m", "m1 b")
    simplified = tietze_simplify(changed.presentation, keep=("m", "b"))
    print("with m := m1 b and Tietze moves:")
    print(" ", simplified)
    print("  abelianization:", abelianization(simplified))

    battery = [dihedral(n) for n in (3, 4, 5)]
    print("hom/epi counts on d6, d8, d10:")
    print("  this group:", fingerprint(simplified, battery))
    print("  Z^2:       ", fingerprint(z2_group(), battery))

    Q = add_relator(add_relator(simplified, "m^2"), "b^2")
    counts = [len(epimorphisms(Q, dihedral(n))) for n in (3, 4, 5, 6)]
    print("after also killing m^2 and b^2, epimorphisms onto d6..d12:", counts)


if __name__ == "__main__":
    main()
