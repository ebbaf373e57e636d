#!/usr/bin/env python3
"""Render a sharpness-sweep CSV (columns n,quotient,limit_constant,gap) to a
figure.  The CLI deliberately stops at the CSV; this consumer is the
external plotting hand-off:

    fraclap sharpness --form killed --alpha 1.5 --n-list 4,16,64,256,1024 \
        --out sweep.csv
    python scripts/plot_sweep.py sweep.csv sweep.png
"""

import csv
import sys


def main():
    if len(sys.argv) != 3:
        print(__doc__)
        return 2
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    src, dst = sys.argv[1], sys.argv[2]
    ns, quotients, limits = [], [], []
    with open(src) as fh:
        for row in csv.DictReader(fh):
            ns.append(int(row["n"]))
            quotients.append(float(row["quotient"]))
            limits.append(float(row["limit_constant"]))

    fig, ax = plt.subplots(figsize=(5.5, 3.8))
    ax.semilogx(ns, quotients, "o-", label="quotient along the cutoff sequence")
    ax.axhline(limits[0], color="k", ls="--", lw=1, label="sharp constant")
    ax.set_xlabel("cutoff index n")
    ax.set_ylabel("Rayleigh quotient")
    ax.legend(frameon=False)
    fig.tight_layout()
    fig.savefig(dst, dpi=160)
    print(f"wrote {dst}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
