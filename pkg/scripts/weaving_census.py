"""Classify the weaving knots W(p, q) over a grid and write the table.

    python3 scripts/weaving_census.py --max-p 10 --max-q 10 --out census.csv
"""

from __future__ import annotations

import argparse
import time
from dataclasses import dataclass
from pathlib import Path

from checkerlinks.classify import census_to_csv, census_to_json, weaving_census


@dataclass(frozen=True)
class CensusConfig:
    max_p: int = 8
    max_q: int = 8
    out: Path | None = None


def main(cfg: CensusConfig) -> None:
    t0 = time.perf_counter()
    rows = weaving_census(cfg.max_p, cfg.max_q)
    elapsed = time.perf_counter() - t0
    counts: dict[str, int] = {}
    for r in rows:
        key = str(r.verdict)
        counts[key] = counts.get(key, 0) + 1
    for key, k in sorted(counts.items()):
        print(f"{k:4d}  {key}")
    print(f"{len(rows)} diagrams in {elapsed:.2f} s")
    if cfg.out is not None:
        text = census_to_json(rows) if cfg.out.suffix == ".json" else census_to_csv(rows)
        cfg.out.write_text(text)
        print(f"wrote {cfg.out}")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-p", type=int, default=CensusConfig.max_p)
    ap.add_argument("--max-q", type=int, default=CensusConfig.max_q)
    ap.add_argument("--out", type=Path, help="write .csv or .json")
    a = ap.parse_args()
    main(CensusConfig(a.max_p, a.max_q, a.out))
