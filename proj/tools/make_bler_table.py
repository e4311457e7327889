#!/usr/bin/env python3
# Copyright (c) 2026 the mmwavesim authors
# SPDX-License-Identifier: Apache-2.0
#
# Generates data/bler_calibration.csv: per-(MCS, code-block-size-class)
# Gaussian-CDF parameters (b, c) for the code-block error model
#
#   CBLER(g) = 0.5 * (1 - erf((g - b) / (sqrt(2) * c)))
#
# with g the effective SINR in linear scale. The mean b is anchored where the
# per-coded-bit mutual information of the MCS's modulation equals the code
# rate scaled by a block-length-dependent decoding loss (longer blocks decode
# closer to the MI limit); the spread c models the waterfall width, which
# narrows with block length. The file format is one row per (mcs, class):
#
#   mcs,modulation,cb_max_bits,b_linear,c_linear

import csv

MCS_TABLE = [
    # (modulation, bits/symbol, code_rate_x1024)
    *[("qpsk", 2, r) for r in (120, 157, 193, 251, 308, 379, 449, 526, 602, 679)],
    *[("qam16", 4, r) for r in (340, 378, 434, 490, 553, 616, 658)],
    *[("qam64", 6, r) for r in (440, 466, 517, 567, 616, 666, 719, 772, 822, 873, 910, 948)],
]

# (max code block bits, rate loss multiplier, relative waterfall width)
CB_CLASSES = [
    (256, 1.060, 0.24),
    (512, 1.050, 0.19),
    (1024, 1.040, 0.15),
    (2048, 1.030, 0.115),
    (4096, 1.025, 0.088),
    (6144, 1.020, 0.068),
]


def load_mi_curves(path="data/mi_tables.csv"):
    curves = {}
    with open(path) as f:
        for row in csv.DictReader(f):
            curves.setdefault(row["modulation"], []).append(
                (float(row["snr_db"]), float(row["mi_per_coded_bit"]))
            )
    return curves


def invert_mib(curve, target):
    # linear interpolation in (linear snr, mib), matching the C++ lookup
    prev_db, prev_mib = curve[0]
    for snr_db, mib in curve[1:]:
        if mib >= target:
            lo, hi = 10 ** (prev_db / 10), 10 ** (snr_db / 10)
            if mib == prev_mib:
                return lo
            frac = (target - prev_mib) / (mib - prev_mib)
            return lo + frac * (hi - lo)
        prev_db, prev_mib = snr_db, mib
    raise ValueError(f"target {target} above curve range")


def main():
    curves = load_mi_curves()
    rows = []
    for mcs, (mod, bits, rate_x1024) in enumerate(MCS_TABLE):
        rate = rate_x1024 / 1024.0
        for cb_bits, loss, width in CB_CLASSES:
            target_mib = min(rate * loss, 0.9995)
            b = invert_mib(curves[mod], target_mib)
            c = b * width
            rows.append((mcs, mod, cb_bits, b, c))
    with open("data/bler_calibration.csv", "w") as f:
        f.write("mcs,modulation,cb_max_bits,b_linear,c_linear\n")
        for mcs, mod, cb_bits, b, c in rows:
            f.write(f"{mcs},{mod},{cb_bits},{b:.9g},{c:.9g}\n")
    print(f"wrote {len(rows)} rows")


if __name__ == "__main__":
    main()
