#!/usr/bin/env python3
"""Convergence study backing the numeric tolerances used by `pb ode compare`.

Runs the built `pb` binary over a grid of series orders, tower windows and
integrator tolerances and prints the resulting deviation metrics, so the
acceptance bounds (zeta deviation 1e-6 at order >= 12, window >= 4; pairing
deviation 1e-8; third-order-form residual 1e-5) can be re-derived rather than
trusted.

Usage: scripts/convergence_study.py [path-to-pb]   (default: build/pb)
"""

import json
import subprocess
import sys


def run(pb, *args):
    out = subprocess.run([pb, *args], capture_output=True, text=True)
    if out.returncode not in (0, 1):
        sys.exit(f"pb failed ({out.returncode}): {out.stderr}")
    return json.loads(out.stdout)


def main():
    pb = sys.argv[1] if len(sys.argv) > 1 else "build/pb"

    print("# series order / tower window sweep (sigma=3/10, stilde=1, z in [0.01, 0.25])")
    print(f"{'order':>5} {'window':>6} {'zeta_dev':>12} {'pair_dev':>12} {'zeta3':>12} {'trunc_est':>12}")
    for order, window in [(6, 2), (8, 3), (10, 3), (12, 4), (14, 4), (16, 5)]:
        j = run(pb, "ode", "compare", "--sigma", "3/10", "--z0", "0.01", "--z1", "0.25",
                "--order", str(order), "--window", str(window))
        m = j["metrics"]
        print(f"{order:>5} {window:>6} {m['zeta_dev']:>12.3e} {m['pair_dev']:>12.3e} "
              f"{m['zeta3_resid']:>12.3e} {m['trunc_estimate']:>12.3e}")

    print()
    print("# integrator tolerance sweep on the algebraic solution (z in [0.01, 1])")
    print(f"{'rtol':>9} {'w_dev':>12} {'zeta_form_dev':>14} {'fixed_point_dev':>16}")
    for rtol in (1e-6, 1e-8, 1e-10, 1e-12):
        j = run(pb, "ode", "algebraic", "--sign", "+", "--rtol", f"{rtol:g}")
        m = j["metrics"]
        print(f"{rtol:>9.0e} {m['w_dev']:>12.3e} {m['zeta_form_dev']:>14.3e} "
              f"{m['fixed_point_dev']:>16.3e}")


if __name__ == "__main__":
    main()
