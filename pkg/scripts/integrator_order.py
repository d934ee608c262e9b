"""Empirical convergence order of the midpoint-exponential integrator.

Uses a two-term family whose terms commute neither with each other nor with
the base, so the commuting shortcut does not apply. Errors are measured
against a run with an eight times smaller step.

    python3 scripts/integrator_order.py --dt 0.4 0.2 0.1 0.05
"""

import argparse
import math

import numpy as np

from kreinqm import EvolutionConfig, FundamentalSymmetry, HamiltonianFamily, Profile, evolve

K = np.array([[0, 1], [-1, 0]], dtype=complex)
L = np.array([[0, 1j], [1j, 0]])


def final_state(family, j, dt, t_end):
    return evolve(family, [1, 0], j, EvolutionConfig(t_end=t_end, dt=dt)).states[-1]


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--dt", type=float, nargs="+", default=[0.4, 0.2, 0.1, 0.05])
    parser.add_argument("--t-end", type=float, default=2.0)
    args = parser.parse_args()

    j = FundamentalSymmetry(1, 1)
    family = HamiltonianFamily(
        np.diag([1.0, -1.0]),
        ((Profile.sine(2.0, 0.3), 0.8 * K), (Profile.polynomial([0.0, 0.5]), L)),
    )
    prev = None
    print(f"{'dt':>8}  {'error':>10}  {'ratio':>6}  {'order':>6}")
    for dt in args.dt:
        err = np.max(np.abs(final_state(family, j, dt, args.t_end) - final_state(family, j, dt / 8, args.t_end)))
        if prev is None:
            print(f"{dt:8.4g}  {err:10.3e}")
        else:
            ratio = prev[1] / err
            print(f"{dt:8.4g}  {err:10.3e}  {ratio:6.3f}  {math.log(ratio, prev[0] / dt):6.3f}")
        prev = (dt, err)


if __name__ == "__main__":
    main()
