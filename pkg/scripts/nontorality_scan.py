#!/usr/bin/env python3
"""Scan the 25 canonical isometry representatives for nontorality witnesses.

For each representative j, compute the grading induced by its canonical lift
together with generators of its fixed subtorus, and report dim L_e. A value
below 4 witnesses that the quasitorus is nontoral; the representatives inside
the reflection subgroup (and the exceptional toral case) reach the full rank 4.
"""
from d4fine.gradings import (GradingContext, QuasitorusSpec, compute_grading,
                             identity_component_dim)
from d4fine.weyl import TABLE2_INDICES


def main():
    ctx = GradingContext()
    weyl = ctx.group.weyl_subgroup()
    print(f"{'index':<7} {'order':<6} {'in W':<5} {'dim L_e':<8} verdict")
    print("-" * 40)
    for j in TABLE2_INDICES:
        fam = ctx.q_family_of_index(j)
        finite = [a for a in fam if a.kind == "matrix"]
        cont = [a for a in fam if a.kind == "diagonal-monomial"]
        g = compute_grading(ctx.alg, QuasitorusSpec(finite, cont, name=f"Q({j},id)"))
        d = identity_component_dim(g)
        verdict = "nontoral" if d < 4 else "toral"
        print(f"{j:<7} {ctx.group[j].order():<6} "
              f"{'yes' if j in weyl else 'no':<5} {d:<8} {verdict}")


if __name__ == "__main__":
    main()
