"""Enumerate exchange graphs for a list of catalog entries and print a census table.

    python scripts/run_enumeration.py gr2:8 gr3:7 --threads 2 --out census.json
"""
import argparse
import json
import time
from dataclasses import asdict, dataclass, field
from typing import List

from qcluster import catalog
from qcluster.quivers import classify_finite_type
from qcluster.seeds import MutationCache
from qcluster.verify import commutative_oracle
from qcluster.xgraph import census, enumerate_graph


@dataclass
class EnumerationConfig:
    entries: List[str] = field(default_factory=lambda: ["gr2:5", "gr2:8", "gr3:6", "gr3:7"])
    max_nodes: int = 50_000
    threads: int = 1
    with_oracle: bool = True
    out: str = ""


def run(cfg: EnumerationConfig) -> List[dict]:
    rows = []
    for name in cfg.entries:
        e = catalog.load(name)
        t0 = time.perf_counter()
        g = enumerate_graph(e.seed, max_nodes=cfg.max_nodes, workers=cfg.threads, cache=MutationCache(e.seed.frame))
        cen = census(g)
        row = {
            "name": name,
            "type": classify_finite_type(e.seed.B, e.seed.mutable),
            "clusters": cen["num_clusters"],
            "edges": len(g.edges),
            "mutable_variables": cen["num_mutable_variables"],
            "seconds": round(time.perf_counter() - t0, 2),
        }
        if cfg.with_oracle:
            cg = commutative_oracle(e, max_nodes=cfg.max_nodes)
            row["oracle_clusters"] = len(cg.nodes)
        rows.append(row)
        print("{name:>16} {type:>4} {clusters:>7} {edges:>7} {mutable_variables:>5} {seconds:>8}s".format(**row)
              + (f"  oracle {row['oracle_clusters']}" if cfg.with_oracle else ""))
    return rows


def main():
    p = argparse.ArgumentParser()
    d = EnumerationConfig()
    p.add_argument("entries", nargs="*", default=d.entries)
    p.add_argument("--max-nodes", type=int, default=d.max_nodes)
    p.add_argument("--threads", type=int, default=d.threads)
    p.add_argument("--no-oracle", dest="with_oracle", action="store_false")
    p.add_argument("--out", default=d.out)
    cfg = EnumerationConfig(**vars(p.parse_args()))
    rows = run(cfg)
    if cfg.out:
        with open(cfg.out, "w") as fh:
            json.dump({"config": asdict(cfg), "rows": rows}, fh, indent=1)


if __name__ == "__main__":
    main()
