"""Write every bundled corpus map to a JSON file usable with ``--map``."""

import argparse
import json
from dataclasses import dataclass
from pathlib import Path

from padic_greens.corpus import corpus
from padic_greens.morphism import map_to_json


@dataclass
class ExportConfig:
    out_dir: Path = Path("maps")


def file_name(key: str) -> str:
    name, p = key.split("@")
    return f"{name.lower().replace('+', 'p')}_p{p}.json"


def export(cfg: ExportConfig) -> list[Path]:
    cfg.out_dir.mkdir(parents=True, exist_ok=True)
    written = []
    for key, phi in corpus().items():
        path = cfg.out_dir / file_name(key)
        path.write_text(json.dumps(map_to_json(phi), indent=2) + "\n")
        written.append(path)
    return written


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out-dir", type=Path, default=ExportConfig.out_dir)
    args = parser.parse_args()
    for path in export(ExportConfig(args.out_dir)):
        print(path)


if __name__ == "__main__":
    main()
