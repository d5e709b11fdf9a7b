"""Regenerate the embedded Sobol' direction-number table.

Source: Joe & Kuo, new-joe-kuo-6.21201, as shipped inside scipy.
Output rows: ``dim degree coeff m_1 ... m_degree``. Dimension 1 is the
van der Corput sequence and is written with degree 0.
"""
import os
import sys

import numpy as np
import scipy.stats

N_DIMS = 1024


def main(path):
    npz = np.load(os.path.join(os.path.dirname(scipy.stats.__file__),
                               "_sobol_direction_numbers.npz"))
    poly, vinit = npz["poly"], npz["vinit"]
    lines = ["# dim degree coeff m_1 .. m_degree (Joe & Kuo new-joe-kuo-6.21201)"]
    lines.append("1 0 0")
    for j in range(1, N_DIMS):
        p = int(poly[j])
        s = p.bit_length() - 1
        a = (p >> 1) & ((1 << (s - 1)) - 1)
        m = " ".join(str(int(v)) for v in vinit[j, :s])
        lines.append(f"{j + 1} {s} {a} {m}")
    with open(path, "w", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "src/nbdisc/data/direction_numbers.txt")
