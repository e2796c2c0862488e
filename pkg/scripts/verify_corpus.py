"""Run every property suite on every corpus map and summarize.

Exits 1 if any property fails anywhere.
"""

import argparse
import json
import sys
import time
from dataclasses import dataclass
from pathlib import Path

from padic_greens.corpus import corpus
from padic_greens.harness import verify


@dataclass
class SweepConfig:
    samples: int = 500
    seed: int = 7
    threads: int | None = None
    report_dir: Path | None = None


def sweep(cfg: SweepConfig) -> bool:
    all_ok = True
    total = 0.0
    for key, phi in corpus().items():
        start = time.perf_counter()
        rep = verify(phi, samples=cfg.samples, seed=cfg.seed, threads=cfg.threads)
        elapsed = time.perf_counter() - start
        total += elapsed
        all_ok &= rep.ok
        bad = [r.name for r in rep.properties if r.failures]
        print(f"{key:<20} v_res={phi.v_res:<2} ok={rep.ok!s:<5} {elapsed:6.2f}s {' '.join(bad)}")
        if cfg.report_dir:
            cfg.report_dir.mkdir(parents=True, exist_ok=True)
            (cfg.report_dir / f"{key}.json").write_text(json.dumps(rep.to_json(), indent=2) + "\n")
    print(f"total {total:.2f}s, {'all properties hold' if all_ok else 'FAILURES'}")
    return all_ok


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--samples", type=int, default=SweepConfig.samples)
    parser.add_argument("--seed", type=int, default=SweepConfig.seed)
    parser.add_argument("--threads", type=int)
    parser.add_argument("--report-dir", type=Path)
    args = parser.parse_args()
    ok = sweep(SweepConfig(args.samples, args.seed, args.threads, args.report_dir))
    sys.exit(0 if ok else 1)


if __name__ == "__main__":
    main()
