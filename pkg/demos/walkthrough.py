"""Tour of the library on y^2 = x^3 - x over F_7.

Run with ``python demos/walkthrough.py`` after installing the package.
"""

from quinnlab import (WeierstrassCurve, build_class_tower, build_elliptic_skeleton, construct_normalizer,
                      cremona_check, emit, induced_automorphism, parse_point, prime_field, transitivity_report)

E = WeierstrassCurve(-1, 0, prime_field(7))
data = build_class_tower(E)
print("E(F_7)         ", [str(P) for P in data.base])
print("2-torsion      ", [str(P) for P in data.quinn])
print("|norm kernel|  ", len(data.norm_kernel))

for k in data.quinn:
    M = construct_normalizer(E, k)
    rep = cremona_check(M)
    print(f"class {str(k):6} matrix {M.to_json()}  normalizer={rep.is_normalizer}")

r = transitivity_report(data)
print("transitive on pairs:", r.transitive_on_ell_neq, " n_E =", r.n_E)

sk = build_elliptic_skeleton(data, depth=2)
inv = induced_automorphism(sk, parse_point(E, "(6,0)"))
print("involution by (6,0) swaps", len(inv.swapped_feature_pairs), "feature pairs")
print(emit(sk, "dot", inv))
