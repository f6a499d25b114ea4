"""Explicit isomorphisms between presentations of different levels.

B(N,p) and B(M,p) are isomorphic whenever both levels are admissible for
the same discriminant and prime.  The map fixes j and sends i to
beta*i + delta*k, where (beta, delta) is a rational point on the conic
M*x^2 - p*M*y^2 = N.  When M divides N the map also carries the level-N
order into the level-M order with index N/M, with closed-form coordinates.
"""

from quatorder import (
    build_psi,
    inclusion_coordinate_formulas,
    pretty,
    solve_conic,
    verify_psi,
    verify_psi_inclusion,
)


def main():
    print("levels 3 -> 17 at discriminant 35 (no divisibility, pure isomorphism):")
    beta, delta = solve_conic(17, 13, 3)
    print(f"  conic 17x^2 - 221y^2 = 3: smallest point (beta, delta) = ({beta}, {delta})")
    psi = build_psi(35, 3, 17)
    print(f"  psi(i) = {pretty(psi.image_i())}")
    print(f"  psi(j) = {pretty(psi.image_j())}")
    print(f"  psi(k) = {pretty(psi.image_k())}")
    report = verify_psi(psi)
    print(f"  isomorphism certificate: {len(report.checks)} checks, "
          + ("all pass" if report.passed else "FAILED"))

    print("\nlevels 9 -> 3 at discriminant 35 (3 divides 9, order inclusion):")
    psi = build_psi(35, 9, 3)
    print(f"  (beta, delta) = ({psi.beta}, {psi.delta})"
          "   [sign of beta pinned by a_9 * beta = a_3 mod p]")
    formulas = inclusion_coordinate_formulas(psi)
    print("  closed-form image coordinates of the order basis:")
    print(f"    e3 -> {[str(formulas[key]) for key in ('A3', 'B3', 'C3', 'D3')]}")
    print(f"    e4 -> {[str(formulas[key]) for key in ('A4', 'B4', 'C4', 'D4')]}")
    report = verify_psi_inclusion(psi)
    print(f"  inclusion certificate: {len(report.checks)} checks, "
          + ("all pass" if report.passed else "FAILED"))

    print("\nsplit algebra (discriminant 1): closed form for any pair of levels:")
    for src, dst in ((6, 3), (3, 17)):
        psi = build_psi(1, src, dst)
        print(f"  {src} -> {dst}: beta = {psi.beta}, delta = {psi.delta}, "
              f"verified: {verify_psi(psi).passed}")


if __name__ == "__main__":
    main()
