"""Run the identification pipeline over catalog entries and write one report per entry.

    python scripts/verify_all.py --entries gr3:8 --report-dir reports/
"""
import argparse
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import List, Optional

from qcluster import catalog
from qcluster.verify import verify_entry


def _schubert(nmax=8):
    return [f"schubert:{n}:{t}:{s}" for n in range(4, nmax + 1) for t in range(2, n - 1) for s in range(2, t + 1)]


@dataclass
class VerifyConfig:
    entries: List[str] = field(default_factory=lambda: [f"gr2:{n}" for n in range(4, 9)] + ["gr3:6", "gr3:7"] + _schubert())
    method: Optional[str] = None  # "phi" or "exchange"; None picks per entry
    budget: int = 50_000
    report_dir: str = ""


def main():
    d = VerifyConfig()
    p = argparse.ArgumentParser()
    p.add_argument("--entries", nargs="+", default=d.entries)
    p.add_argument("--method", choices=["phi", "exchange"], default=d.method)
    p.add_argument("--budget", type=int, default=d.budget)
    p.add_argument("--report-dir", default=d.report_dir)
    cfg = VerifyConfig(**vars(p.parse_args()))
    ok = True
    for name in cfg.entries:
        rep = verify_entry(catalog.load(name), budget=cfg.budget, method=cfg.method)
        ok &= rep.passed
        print(f"{'ok  ' if rep.passed else 'FAIL'} {name:>16} {rep.type:>4} clusters={rep.clusters} "
              f"variables={rep.variables} {rep.method} {rep.runtime_ms / 1000:.1f}s")
        for f in rep.failures:
            print("     ", f)
        if cfg.report_dir:
            out = Path(cfg.report_dir)
            out.mkdir(parents=True, exist_ok=True)
            (out / (name.replace(":", "_") + ".json")).write_text(json.dumps(rep.to_json(), indent=1))
    sys.exit(0 if ok else 1)


if __name__ == "__main__":
    main()
