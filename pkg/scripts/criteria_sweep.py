"""Sweep random nested instances and compare both criteria against direct mixed volumes.

    python scripts/criteria_sweep.py --n 2 --box 5 --count 200 --seed 0
"""

from __future__ import annotations

import argparse
import json
import random
import time
from dataclasses import asdict, dataclass

from mixvol.criteria import main3_essential_direction, strict_monotonicity_equal, strict_monotonicity_general
from mixvol.mixed import mixed_volume
from mixvol.sampling import random_equal_instance, random_nested_instance


@dataclass
class SweepConfig:
    n: int = 2
    box: int = 5
    count: int = 200
    seed: int = 0


@dataclass
class SweepResult:
    config: SweepConfig
    equal_agree: int = 0
    equal_strict: int = 0
    general_agree: int = 0
    general_strict: int = 0
    equivalence_agree: int = 0
    seconds: float = 0.0


def run(cfg: SweepConfig) -> SweepResult:
    rng = random.Random(cfg.seed)
    res = SweepResult(cfg)
    t0 = time.perf_counter()
    for _ in range(cfg.count):
        Ps, Q = random_equal_instance(rng, cfg.n, cfg.box)
        v = strict_monotonicity_equal(Ps, Q)
        truth = mixed_volume(Ps, "inductive").normalized < Q.normalized_volume
        res.equal_agree += v.strict == truth
        res.equal_strict += truth

        Ps, Qs = random_nested_instance(rng, cfg.n, cfg.box)
        g = strict_monotonicity_general(Ps, Qs)
        truth = mixed_volume(Ps, "inductive").normalized < mixed_volume(Qs, "inductive").normalized
        res.general_agree += g.strict == truth
        res.general_strict += truth
        res.equivalence_agree += main3_essential_direction(Ps, Qs).strict == g.strict
    res.seconds = time.perf_counter() - t0
    return res


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    for f, v in asdict(SweepConfig()).items():
        p.add_argument(f"--{f}", type=type(v), default=v)
    p.add_argument("--out", help="write the result as JSON")
    args = p.parse_args()
    cfg = SweepConfig(**{k: getattr(args, k) for k in asdict(SweepConfig())})
    res = run(cfg)
    c = cfg.count
    print(f"n={cfg.n} box={cfg.box} count={c} seed={cfg.seed}  ({res.seconds:.1f}s)")
    print(f"  equal-Q criterion    agrees {res.equal_agree}/{c}   strict in {res.equal_strict}")
    print(f"  nested criterion     agrees {res.general_agree}/{c}   strict in {res.general_strict}")
    print(f"  truncation criterion agrees with touch sets {res.equivalence_agree}/{c}")
    if args.out:
        with open(args.out, "w") as fh:
            json.dump(asdict(res), fh, indent=2)


if __name__ == "__main__":
    main()
