#!/usr/bin/env python3
"""Reproduce the unit-count tables and the correctness verdicts for every built-in.

    python3 scripts/reproduce_tables.py --radius 4 --out results/
"""

import argparse
import json
import time
from dataclasses import asdict, dataclass
from pathlib import Path

from squarer_schemes import audit, builtin, compare_tables, list_builtins
from squarer_schemes.verify import verify_exhaustive, verify_symbolic


@dataclass
class Config:
    radius: int = 4
    out: Path | None = None


def verdict_rows(cfg: Config):
    rows = []
    for name in list_builtins():
        e = builtin(name)
        t0 = time.perf_counter()
        sym = verify_symbolic(e.scheme, e.reference)
        exh = verify_exhaustive(e.scheme, e.reference, cfg.radius)
        rows.append({
            "scheme": name,
            "reference": e.reference.kind,
            "symbolic": sym.verdict,
            "exhaustive": exh.verdict,
            "tested": exh.points_tested,
            "skipped": exh.points_skipped,
            "expected": e.expected_verdict,
            "residuals": [str(r) for r in sym.residuals if not r.is_zero()],
            "cost": audit(e.scheme).as_dict(),
            "seconds": round(time.perf_counter() - t0, 3),
        })
    return rows


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--radius", type=int, default=Config.radius, help="exhaustive grid radius")
    ap.add_argument("--out", type=Path, help="directory for tables.json / verdicts.json")
    cfg = Config(**vars(ap.parse_args(argv)))

    cmp = compare_tables()
    print(cmp.to_text())
    rows = verdict_rows(cfg)
    print(f"{'scheme':<24} {'ref':<8} {'symbolic':<9} {'R=' + str(cfg.radius):<9} {'tested':>7} {'skip':>5}  cost")
    for r in rows:
        flag = "" if r["symbolic"] == r["expected"] else "  UNEXPECTED"
        cost = " ".join(f"{k}={v}" for k, v in r["cost"].items() if v)
        print(f"{r['scheme']:<24} {r['reference']:<8} {r['symbolic']:<9} {r['exhaustive']:<9} "
              f"{r['tested']:>7} {r['skipped']:>5}  {cost}{flag}")
        for res in r["residuals"]:
            print(f"{'':<26}residual {res}")

    if cfg.out:
        cfg.out.mkdir(parents=True, exist_ok=True)
        (cfg.out / "tables.json").write_text(cmp.to_json() + "\n")
        (cfg.out / "verdicts.json").write_text(json.dumps(
            {"config": {**asdict(cfg), "out": str(cfg.out)}, "schemes": rows}, indent=2) + "\n")
        print(f"\nwrote {cfg.out / 'tables.json'} and {cfg.out / 'verdicts.json'}")
    ok = cmp.all_match and all(r["symbolic"] == r["expected"] == r["exhaustive"] for r in rows)
    return 0 if ok else 1


if __name__ == "__main__":
    raise SystemExit(main())
