"""Tabulate certified Green brackets against truncation depth.

Prints one row per depth with the exact partial sum, the tail bound and the
bracket endpoints in natural-log units.
"""

import argparse
from dataclasses import dataclass

from padic_greens import green_hat, make_point
from padic_greens.cli import load_map, parse_coords


@dataclass
class ConvergenceConfig:
    map: str = "corpus:X2_3Y2@3"
    point: str = "0,1"
    max_depth: int = 20
    step: int = 2


def table(cfg: ConvergenceConfig) -> list[tuple]:
    phi = load_map(cfg.map)
    P = make_point(parse_coords(cfg.point), phi.p)
    rows = []
    for n in range(0, cfg.max_depth + 1, cfg.step):
        est = green_hat(phi, P, n=n)
        rows.append((est.n_used, est.partial_sum.coeff, est.tail_bound.coeff, float(est.lower), float(est.upper)))
    return rows


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    defaults = ConvergenceConfig()
    parser.add_argument("--map", default=defaults.map)
    parser.add_argument("--point", default=defaults.point)
    parser.add_argument("--max-depth", type=int, default=defaults.max_depth)
    parser.add_argument("--step", type=int, default=defaults.step)
    args = parser.parse_args()
    cfg = ConvergenceConfig(args.map, args.point, args.max_depth, args.step)
    print(f"{'n':>3}  {'partial sum (x log p)':>24}  {'tail (x log p)':>16}  {'lower':>14}  {'upper':>14}")
    for n, s, t, lo, hi in table(cfg):
        print(f"{n:>3}  {str(s):>24}  {str(t):>16}  {lo:>14.10f}  {hi:>14.10f}")


if __name__ == "__main__":
    main()
