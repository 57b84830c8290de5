"""Group-level cover tests for the K_k family.

A cover with dihedral or G(k) group and prescribed branching exists exactly
when the complement group maps onto that group with the right conjugacy
data on meridians. This script runs both tests over a small range.
"""
from curvegrp import dihedral_cover_test, distinguish, gk_cover_test, k_group, parse_battery
from curvegrp.zvk import z2_group


def show(label, res):
    witness = ", ".join(res.witness.lines()) if res.witness else "-"
    print(f"  {label:<16} {'yes' if res else 'no ':<4} {witness}")


print("dihedral covers, lines to reflections and D to an order n rotation:")
for n in range(3, 7):
    show(f"K_2, n={n}", dihedral_cover_test(k_group(2), ["l"], "x", n))
    show(f"Z^2, n={n}", dihedral_cover_test(z2_group(), ["l"], "x", n))

print("G(k) covers:")
for src, k in [(3, 3), (1, 3), (2, 4), (4, 4)]:
    show(f"K_{src} -> G({k})", gk_cover_test(k_group(src), ["l"], "x", k))

battery = parse_battery("d6,g3,g4,c2,c3")
print("separating K_k from its quotients K_lambda:")
for k, lam in [(3, 1), (4, 2), (6, 3)]:
    v = distinguish(k_group(k), k_group(lam), battery)
    print(f"  K_{k} vs K_{lam}: {v.distinguished_by.name if v.distinguished_by else 'inconclusive'}")
