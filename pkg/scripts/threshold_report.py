"""How the located critical field depends on the negativity threshold.

Above the delta_1 / delta_3 level crossing the negativity decays like a
Boltzmann tail instead of vanishing, so a small threshold measures the tail.
"""
from nidimer.model import PAPER_PARAMS, level_crossing_field
from nidimer.sweep import find_critical_field, find_vanishing_temperature


def main():
    p = PAPER_PARAMS
    print(f"level crossing: {level_crossing_field(p):.3f} T")
    for b in (0.0, 45.0, 90.0, 150.0):
        print(f"T*(b={b:g} T) = {find_vanishing_temperature(p, b):.2f} K")
    for t in (5.0, 10.0, 20.0):
        row = []
        for thr in (1e-2, 1e-4, 1e-6, 1e-8):
            row.append(f"{thr:g}: {find_critical_field(p, t, threshold=thr):.2f}")
        print(f"B_c(t={t:g} K)  " + "  ".join(row))


if __name__ == "__main__":
    main()
