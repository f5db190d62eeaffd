#!/usr/bin/env python3
"""Smallest overflow-free word length per scheme for a given fraction width and input range.

    python3 scripts/width_sweep.py --frac-bits 8 --radius 4 --schemes mul_eq7 mul_direct
"""

import argparse
import json
from dataclasses import asdict, dataclass, field

from squarer_schemes import builtin, list_builtins
from squarer_schemes.evaluate import FixedPointConfig, sweep_fixed


@dataclass
class Config:
    frac_bits: int = 8
    radius: int = 4
    workers: int = 1
    schemes: list = field(default_factory=list_builtins)
    json: bool = False


def minimal_width(name: str, cfg: Config) -> dict:
    s = builtin(name).scheme
    # a wide run gives the per-wire maxima; the narrowest safe word follows from them
    wide = sweep_fixed(s, FixedPointConfig(128, cfg.frac_bits), cfg.radius, workers=cfg.workers)
    w = max(wide.widths.required_word_bits(), cfg.frac_bits + 1)
    at_w = sweep_fixed(s, FixedPointConfig(w, cfg.frac_bits), cfg.radius, workers=cfg.workers)
    assert not at_w.overflow_points, name
    below = sweep_fixed(s, FixedPointConfig(w - 1, cfg.frac_bits), cfg.radius, workers=cfg.workers) \
        if w - 1 > cfg.frac_bits else None
    layers = wide.widths.by_layer()
    worst_layer = max(layers, key=lambda k: max(layers[k]))
    return {
        "scheme": name,
        "min_word_bits": w,
        "overflows_at_w_minus_1": len(below.overflow_points) if below else None,
        "max_error": str(at_w.max_error),
        "widest_layer": worst_layer,
        "widest_layer_bits": max(layers[worst_layer]),
    }


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--frac-bits", type=int, default=Config.frac_bits)
    ap.add_argument("--radius", type=int, default=Config.radius)
    ap.add_argument("--workers", type=int, default=Config.workers)
    ap.add_argument("--schemes", nargs="+", default=list_builtins())
    ap.add_argument("--json", action="store_true")
    cfg = Config(**vars(ap.parse_args(argv)))

    rows = [minimal_width(n, cfg) for n in cfg.schemes]
    if cfg.json:
        print(json.dumps({"config": asdict(cfg), "results": rows}, indent=2))
        return 0
    print(f"f={cfg.frac_bits}, inputs in [-{cfg.radius}, {cfg.radius}]")
    print(f"{'scheme':<24} {'min W':>6} {'ovf@W-1':>8} {'widest layer':>13}  max error")
    for r in rows:
        print(f"{r['scheme']:<24} {r['min_word_bits']:>6} {str(r['overflows_at_w_minus_1']):>8} "
              f"{r['widest_layer']:>8} ({r['widest_layer_bits']:>2}b)  {r['max_error']}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
