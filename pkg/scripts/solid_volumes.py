"""Realise the three right-angled solids and tabulate checks and volumes.

For every solid the volume is recomputed from every apex and several fan
roots; the spread is the consistency bound quoted next to each value.
"""

from __future__ import annotations

import argparse
import json
from dataclasses import dataclass

from checkerlinks.realize import inscribe_solid, polyhedron_volume, realize_solid
from checkerlinks.solids import Solid


@dataclass(frozen=True)
class VolumeConfig:
    tol: float = 1e-9
    fan_roots: int = 3
    as_json: bool = False


def main(cfg: VolumeConfig) -> None:
    rows = []
    for solid in Solid:
        report = realize_solid(solid, tol=cfg.tol)
        p = inscribe_solid(solid)
        vols = [
            polyhedron_volume(p, apex=a, fan_root=r)
            for a in range(solid.vertex_count)
            for r in range(cfg.fan_roots)
        ]
        rows.append({
            "solid": solid.label,
            "volume": report.volume,
            "vol_perp": report.vol_perp,
            "spread": max(vols) - min(vols),
            "conings": len(vols),
            "checks": report.checks,
        })
    if cfg.as_json:
        print(json.dumps(rows, indent=2))
        return
    print(f"{'solid':<18}{'vol(P)':>16}{'vol_perp':>16}{'spread':>10}  checks")
    for r in rows:
        passed = sum(r["checks"].values())
        print(f"{r['solid']:<18}{r['volume']:>16.10f}{r['vol_perp']:>16.10f}"
              f"{r['spread']:>10.1e}  {passed}/{len(r['checks'])}")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--tol", type=float, default=VolumeConfig.tol)
    ap.add_argument("--fan-roots", type=int, default=VolumeConfig.fan_roots)
    ap.add_argument("--json", action="store_true")
    a = ap.parse_args()
    main(VolumeConfig(a.tol, a.fan_roots, a.json))
