"""Construct the order R(N) of B(N,p) and inspect its arithmetic.

Walks the running example of the library: discriminant 35, level 3.  The
prime search lands on p = 13, the residue a on 5, and the order basis on
1, (1+j)/2, (i+k)/2, (525j+k)/13.  Everything below is exact rational
arithmetic; nothing is floating point.
"""

from quatorder import (
    AlgebraParams,
    QuatElem,
    coords_in_hashimoto,
    find_a,
    find_hashimoto_prime,
    hashimoto_basis,
    one,
    order_discriminant,
    phi_membership,
    pretty,
)


def main():
    delta, level = 35, 3
    p = find_hashimoto_prime(delta, level)
    a = find_a(delta, level, p)
    print(f"discriminant {delta}, level {level}")
    print(f"smallest admissible prime p = {p}, residue a = {a} (a^2*{delta}*{level} = -1 mod {p})")
    print(f"  check: a^2 * dn mod p = {(a * a * delta * level) % p} = {p - 1}")

    params = AlgebraParams(delta, level, p, a)
    basis = hashimoto_basis(params)
    print("\norder basis:")
    for idx, e in enumerate(basis, start=1):
        print(f"  e{idx} = {pretty(e)}   norm {e.reduced_norm()}, trace {e.reduced_trace()}")

    print(f"\nreduced discriminant of the basis: {order_discriminant(params)} = delta * level")

    u = basis[1] * basis[2]
    print(f"\na product: e2 * e3 = {pretty(u)}")
    print(f"  coordinates over the basis: {[str(c) for c in coords_in_hashimoto(u)]}")

    print("\nnorm-one group membership:")
    for v in (one(params), -one(params), basis[1]):
        print(f"  {pretty(v):>12}  norm {v.reduced_norm()}  member: {phi_membership(v)}")

    w = QuatElem(params, 1, 0, 0, 0) * 3
    print(f"  {pretty(w):>12}  norm {w.reduced_norm()}  member: {phi_membership(w)}")


if __name__ == "__main__":
    main()
