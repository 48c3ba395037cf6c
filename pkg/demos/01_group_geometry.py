"""Tour of the group layer: products, dilations, and the two distances.

The state space is R^2 x R with the polarized product

    (v1, z1) * (v2, z2) = (v1 + v2, z1 + z2 + omega(v1, v2) / 2),

where omega is the standard symplectic form on the plane. The vertical
coordinate picks up signed area, so the group is non-commutative and the
natural scaling weights the plane once and the center twice. This script
walks through the basic identities and then shows why the homogeneous
distance is the right yardstick: vertical displacements cost their square
root, not their absolute value.
"""

import numpy as np

from heis import (
    IDENTITY,
    AlgebraElement,
    GroupElement,
    bracket,
    cc_upper_bound,
    coordinate_distance,
    dilate,
    group_distance,
    group_mul,
    homogeneous_norm,
    inverse,
)


def fmt(g: GroupElement) -> str:
    return f"({g.x:+.3f}, {g.y:+.3f}, {g.z:+.3f})"


def main():
    g = GroupElement(1.0, 0.0, 0.0)
    h = GroupElement(0.0, 1.0, 0.0)

    print("products pick up signed area:")
    print(f"  g * h = {fmt(group_mul(g, h))}")
    print(f"  h * g = {fmt(group_mul(h, g))}")

    comm = group_mul(group_mul(g, h), inverse(group_mul(h, g)))
    print(f"  commutator g h (h g)^-1 = {fmt(comm)}  (purely vertical)")

    lie = bracket(AlgebraElement(1.0, 0.0, 0.0), AlgebraElement(0.0, 1.0, 0.0))
    print(f"  bracket [X1, X2] = ({lie.a1}, {lie.a2}, {lie.c})  (the center)")

    print()
    print("dilation scales the plane once and the center twice:")
    k = GroupElement(0.3, -1.2, 0.7)
    for lam in (0.5, 2.0, 3.0):
        d = dilate(lam, k)
        n_ratio = homogeneous_norm(d) / homogeneous_norm(k)
        print(f"  lambda={lam:>3}: z scales by {d.z / k.z:6.2f}, "
              f"|.| scales by {n_ratio:6.3f}")

    print()
    print("inverses are exact in floating point:")
    e = group_mul(k, inverse(k))
    print(f"  k * k^-1 = {fmt(e)}  vs identity {fmt(IDENTITY)}")

    print()
    print("vertical gaps cost their square root:")
    print(f"  {'eps':>8}  {'coordinate':>12}  {'group':>12}")
    base = GroupElement(0.0, 0.0, 0.0)
    for eps in (1e-2, 1e-4, 1e-8):
        up = GroupElement(0.0, 0.0, eps)
        cd = coordinate_distance(base, up)
        gd = group_distance(base, up)
        print(f"  {eps:8.0e}  {cd:12.2e}  {gd:12.2e}")
    print("  (both distances reduce to sqrt(eps) on vertical gaps: short")
    print("   vertical hops are expensive because admissible motion must")
    print("   swing planar area to climb)")

    print()
    print("the homogeneous norm is dominated by the explicit join bound:")
    rng = np.random.default_rng(0)
    worst = 0.0
    for _ in range(5):
        x, y = rng.uniform(-2, 2, size=2)
        z = rng.uniform(-3, 3)
        p = GroupElement(x, y, z)
        hn = homogeneous_norm(p)
        ub = cc_upper_bound(p)
        worst = max(worst, hn / ub)
        print(f"  g={fmt(p)}: |g| = {hn:.4f}, join length <= {ub:.4f}")
    print(f"  max ratio norm/bound over the draws = {worst:.4f}")


if __name__ == "__main__":
    main()
