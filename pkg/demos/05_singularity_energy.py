"""Why the diffusion is singular on horizontal curves: energy blows up.

The Dirichlet energy of a Brownian path interpolated at mesh h is about
2/h (each of the 1/h increments contributes E|dB|^2 / h = 2h / h^2).
Refining the mesh therefore sends the energy of the piecewise-linear
reading to infinity: Brownian motion is not an energy-finite curve, and
no fixed-energy tube can carry its law. Freezing the smoothing at a fixed
delta while refining the sampling mesh leaves the energy flat, which is
the control experiment separating the two limits.
"""

from heis import RngSpec, energy_divergence_experiment

TRIALS = 256
SEED = 1


def main():
    steps = [2.0 ** -6, 2.0 ** -7, 2.0 ** -8, 2.0 ** -9, 2.0 ** -10]
    table = energy_divergence_experiment(steps, TRIALS, RngSpec(SEED))

    raw = [r for r in table.rows if r[0] == r[4]]      # delta == h: raw reading
    frozen = [r for r in table.rows if r[0] != r[4]]   # delta fixed at 1/8

    print(f"piecewise-linear energy of {TRIALS} Brownian paths:")
    print(f"  {'h':>10}  {'E[energy]':>10}  {'stderr':>8}  {'2/h':>8}")
    for h, est, se, _, _, _ in raw:
        print(f"  {h:10g}  {est:10.2f}  {se:8.2f}  {2.0 / h:8.1f}")

    print()
    print("same paths, smoothing frozen at delta = 1/8 while h refines:")
    print(f"  {'h':>10}  {'E[energy]':>10}  {'stderr':>8}")
    for _, est, se, _, h, _ in frozen:
        print(f"  {h:10g}  {est:10.4f}  {se:8.4f}")

    ests = [r[1] for r in frozen]
    print(f"  spread across the plateau: {max(ests) - min(ests):.2e}")
    print("  (identical because the frozen-delta functional only reads the")
    print("   coarse nodes, which the trial-keyed coupling holds fixed)")


if __name__ == "__main__":
    main()
