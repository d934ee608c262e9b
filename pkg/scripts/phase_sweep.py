"""Text phase map of the traceless family [[a, b], [-conj(b), -a]].

R marks RealSpectrum, B Broken and x Exceptional. Rows run over |b| from the
top down, columns over a. The exceptional points sit on the diagonal a = |b|.

    python3 scripts/phase_sweep.py --steps 21
"""

import argparse

from kreinqm import FundamentalSymmetry, classify_phase, traceless_2x2

SYMBOL = {"RealSpectrum": "R", "Broken": "B", "Exceptional": "x"}


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--a-max", type=float, default=2.0)
    parser.add_argument("--b-max", type=float, default=2.0)
    parser.add_argument("--steps", type=int, default=21)
    args = parser.parse_args()

    j = FundamentalSymmetry(1, 1)
    n = args.steps
    counts = dict.fromkeys(SYMBOL, 0)
    for ib in reversed(range(n)):
        b = args.b_max * ib / (n - 1)
        row = []
        for ia in range(n):
            a = args.a_max * ia / (n - 1)
            phase = str(classify_phase(traceless_2x2(a, b), j))
            counts[phase] += 1
            row.append(SYMBOL[phase])
        print(f"{b:6.3f} | {' '.join(row)}")
    print(" " * 9 + "a ->")
    print(", ".join(f"{k}: {v}" for k, v in counts.items()))


if __name__ == "__main__":
    main()
