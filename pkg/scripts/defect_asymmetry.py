"""Unitarity defects of H(t) = amplitude * f(t) * K for K = [[0, 1], [-1, 0]].

The family commutes with itself at all times, so the exact state is
exp(-i F(t) K) psi0 with F the antiderivative of the profile. The indefinite
norm stays put while the Dirac norm grows like cosh(2 F).

    python3 scripts/defect_asymmetry.py --t-end 3.14159 --dt 1e-3
"""

import argparse
import math

import numpy as np

from kreinqm import EvolutionConfig, FundamentalSymmetry, HamiltonianFamily, Profile, evolve

K = np.array([[0, 1], [-1, 0]], dtype=complex)


def exact(t, amplitude):
    s = amplitude * (1 - math.cos(t))
    return np.array([math.cosh(s), 1j * math.sinh(s)])


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--t-end", type=float, default=math.pi)
    parser.add_argument("--dt", type=float, default=1e-3)
    parser.add_argument("--amplitude", type=float, nargs="+", default=[0.25, 0.5, 1.0])
    args = parser.parse_args()

    j = FundamentalSymmetry(1, 1)
    config = EvolutionConfig(t_end=args.t_end, dt=args.dt)
    print(f"{'amplitude':>9}  {'j_defect':>10}  {'dirac_defect':>12}  {'max error':>10}")
    for amp in args.amplitude:
        family = HamiltonianFamily(np.zeros((2, 2)), ((Profile.sine(1.0, 0.0), amp * K),))
        trace = evolve(family, [1, 0], j, config)
        err = max(np.max(np.abs(psi - exact(t, amp))) for t, psi in zip(trace.times, trace.states))
        print(f"{amp:9.3g}  {trace.j_unitarity_defect:10.2e}  {trace.dirac_unitarity_defect:12.4f}  {err:10.2e}")


if __name__ == "__main__":
    main()
