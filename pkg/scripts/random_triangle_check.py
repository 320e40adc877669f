"""Sample random bigon-free alternating diagrams and look for 3-gons.

Also reports how the sampled diagrams classify, which should never be
BothTotallyGeodesic away from 6, 12 and 30 crossings.
"""

from __future__ import annotations

import argparse
from collections import Counter
from dataclasses import dataclass

from checkerlinks.classify import classify
from checkerlinks.diagram import random_alternating_diagram, trace_faces


@dataclass(frozen=True)
class SampleConfig:
    samples: int = 500
    n_min: int = 8
    n_max: int = 30
    seed: int = 0


def main(cfg: SampleConfig) -> None:
    sizes = [n for n in range(cfg.n_min, cfg.n_max + 1) if n >= 6 and n != 7]
    without_triangle = 0
    smallest = Counter()
    verdicts = Counter()
    for i in range(cfg.samples):
        n = sizes[i % len(sizes)]
        d = random_alternating_diagram(n, cfg.seed + i, bigon_free=True)
        face_sizes = [f.size for f in trace_faces(d)]
        smallest[min(face_sizes)] += 1
        without_triangle += 3 not in face_sizes
        verdicts[str(classify(d))] += 1
    print(f"{cfg.samples} diagrams, {without_triangle} without a 3-gon")
    print("smallest face:", dict(sorted(smallest.items())))
    for key, k in verdicts.most_common():
        print(f"{k:5d}  {key}")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--samples", type=int, default=SampleConfig.samples)
    ap.add_argument("--n-min", type=int, default=SampleConfig.n_min)
    ap.add_argument("--n-max", type=int, default=SampleConfig.n_max)
    ap.add_argument("--seed", type=int, default=SampleConfig.seed)
    a = ap.parse_args()
    main(SampleConfig(a.samples, a.n_min, a.n_max, a.seed))
