"""Compare the brute-force scenario entropies with their binary-entropy closed forms.

Prints the largest absolute discrepancy for each experiment over an s grid
(and an e grid for the cloning experiments).
"""
import math
import sys

import numpy as np

from nogolab import experiments as ex


def h2(p):
    return -sum(x * math.log2(x) for x in (p, 1 - p) if x > 0)


def main(steps=101):
    grid = np.linspace(0.0, 1.0, steps)
    worst = {"delete-sweep": 0.0, "entangle-delete": 0.0, "clone-sweep": 0.0, "entangle-clone": 0.0}
    for s in grid:
        r = ex.sharper_deleting_entropies(ex.DeletingScenario(s))
        worst["delete-sweep"] = max(worst["delete-sweep"], abs(r["S_in"] - h2((1 + s * s) / 2)),
                                    abs(r["S_out"] - h2((1 + s) / 2)))
        r = ex.entanglement_deleting(ex.DeletingScenario(s))
        worst["entangle-delete"] = max(worst["entangle-delete"], abs(r["E_before"] - h2((1 + s * s) / 2)),
                                       abs(r["E_after"] - h2((1 + s) / 2)))
        for e in np.linspace(0.0, 1.0, 11):
            eff = 1.0 if s == 1.0 else e
            r = ex.cloning_holevo(ex.CloningScenario(s, e))
            worst["clone-sweep"] = max(worst["clone-sweep"], abs(r["chi_out"] - h2((1 + s * s * eff) / 2)))
            r = ex.entanglement_cloning(ex.CloningScenario(s, e))
            worst["entangle-clone"] = max(worst["entangle-clone"], abs(r["E_after"] - h2((1 + s * s * eff) / 2)))
    for name, err in worst.items():
        print(f"{name:16s} max |brute force - closed form| = {err:.3e}")
    return 0 if max(worst.values()) < 1e-6 else 1


if __name__ == "__main__":
    sys.exit(main())
