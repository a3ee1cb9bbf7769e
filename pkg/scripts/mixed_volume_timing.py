"""Time the three mixed-volume algorithms on random lattice collections.

    python scripts/mixed_volume_timing.py --dims 2 3 --count 50
"""

from __future__ import annotations

import argparse
import random
import statistics
from dataclasses import dataclass, field

from mixvol.mixed import METHODS, mixed_volume
from mixvol.sampling import random_collection


@dataclass
class TimingConfig:
    dims: list[int] = field(default_factory=lambda: [2, 3])
    box: int = 3
    count: int = 50
    seed: int = 0


def run(cfg: TimingConfig) -> dict[int, dict[str, list[float]]]:
    rng = random.Random(cfg.seed)
    out: dict[int, dict[str, list[float]]] = {}
    for n in cfg.dims:
        times: dict[str, list[float]] = {m: [] for m in METHODS}
        for _ in range(cfg.count):
            r = mixed_volume(random_collection(rng, n, cfg.box), "all", cfg.seed)
            for m, t in r.timings.items():
                times[m].append(t)
        out[n] = times
    return out


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--dims", type=int, nargs="+", default=[2, 3])
    p.add_argument("--box", type=int, default=3)
    p.add_argument("--count", type=int, default=50)
    p.add_argument("--seed", type=int, default=0)
    a = p.parse_args()
    res = run(TimingConfig(a.dims, a.box, a.count, a.seed))
    print(f"{'n':>2}  {'method':<13}{'median ms':>10}{'max ms':>10}")
    for n, times in res.items():
        for m, ts in times.items():
            print(f"{n:>2}  {m:<13}{1000 * statistics.median(ts):>10.2f}{1000 * max(ts):>10.2f}")


if __name__ == "__main__":
    main()
