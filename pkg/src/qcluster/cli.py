"""Command-line front end.

    qcluster seed gr3:6
    qcluster mutate gr2:5 --seq 14,13
    qcluster enumerate gr3:8 --max-nodes 30000 --threads 4
    qcluster classify seed.json        # or "-" for stdin, or a catalog name
    qcluster verify gr3:6 --report out.json
    qcluster oracle-l gr3:7

``--seq`` is applied left to right.  Each token names a position by its
current label (``14``, ``[14]``, ``(21)``), by its initial label, or by
index as ``#k``.  A composition written right to left, such as
``mu_4 mu_2 mu_1 mu_3``, is therefore entered as ``--seq 3,1,2,4`` when
using positions.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from typing import List, Optional, Sequence

from . import catalog
from .qarith import InexactDivision, NotQuasiCommuting
from .quivers import Quiver, classify_finite_type, quiver_to_b
from .seeds import Incompatible, MutationCache, QSeed, mutate_seed
from .verify import commutative_oracle, label_variable, verify_entry
from .xgraph import NodeBudgetExceeded, enumerate_graph
from .qmatrix import build_L_oracle


class UsageError(ValueError):
    pass


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def _read_json(target: str):
    if target == "-":
        return json.load(sys.stdin)
    with open(target) as fh:
        return json.load(fh)


def resolve(target: str):
    """``(entry or None, seed)`` for a catalog name, a seed file or ``-``."""
    if target == "-" or os.path.exists(target):
        data = _read_json(target)
        if "vars" not in data:
            raise UsageError(f"{target} is not a seed file")
        return None, QSeed.from_json(data)
    entry = catalog.load(target)
    return entry, entry.seed


def _strip(label: str) -> str:
    return label.strip("[]()")


def resolve_position(token: str, seed: QSeed, initial: Sequence[str]) -> int:
    token = token.strip()
    if token.startswith("#"):
        k = int(token[1:])
        if not 0 <= k < seed.r:
            raise UsageError(f"position {k} out of range")
        return k
    for labels in (seed.labels, initial):
        exact = [i for i, l in enumerate(labels) if l == token]
        if len(exact) == 1:
            return exact[0]
        loose = [i for i, l in enumerate(labels) if _strip(l) == _strip(token)]
        if len(loose) == 1:
            return loose[0]
        if len(loose) > 1:
            raise UsageError(f"label {token!r} is ambiguous; write it with brackets")
    raise UsageError(f"no position labelled {token!r}")


def cmd_seed(args) -> int:
    _, seed = resolve(args.target)
    print(seed.dumps())
    return 0


def cmd_mutate(args) -> int:
    entry, seed = resolve(args.target)
    initial = entry.seed.labels if entry else seed.labels
    cache = MutationCache(seed.frame)
    for tok in [t for t in args.seq.split(",") if t.strip()]:
        k = resolve_position(tok, seed, initial)
        new = mutate_seed(seed, k, cache)
        name = label_variable(entry, new.vars[k]) if entry else None
        if name is not None:
            new = mutate_seed(seed, k, cache, label=name)
        seed = new
    print(seed.dumps())
    return 0


def cmd_enumerate(args) -> int:
    entry, seed = resolve(args.target)
    kind = classify_finite_type(seed.B, seed.mutable)
    code = 0
    try:
        g = enumerate_graph(seed, max_nodes=args.max_nodes, workers=args.threads)
    except NodeBudgetExceeded as exc:
        g, code = exc.graph, 1
    out = g.report(kind)
    if args.q1:
        if entry is None:
            entry = catalog.CatalogEntry("file", seed, ())
        cg = commutative_oracle(entry, max_nodes=args.max_nodes)
        out["q1"] = {"nodes": len(cg.nodes), "edges": cg.edges, "mutable_variables": len(cg.variables)}
    if args.no_timing:
        out.pop("runtime_ms")
    print(dumps(out))
    return code


def cmd_classify(args) -> int:
    target = args.target
    if target == "-" or os.path.exists(target):
        data = _read_json(target)
        if "vars" in data or "B" in data:
            kind = classify_finite_type(data["B"], data["mutable"])
        elif "arrows" in data:
            q = Quiver.from_json(data)
            mut = [i for i, f in enumerate(q.frozen) if not f]
            kind = classify_finite_type(quiver_to_b(q, mut), mut)
        else:
            raise UsageError("expected a seed or quiver JSON document")
    else:
        seed = catalog.load(target).seed
        kind = classify_finite_type(seed.B, seed.mutable)
    print(dumps({"type": kind}))
    return 0


def cmd_verify(args) -> int:
    entry = catalog.load(args.target)
    rep = verify_entry(entry, budget=args.max_nodes, workers=args.threads)
    data = rep.to_json()
    if args.no_timing:
        data.pop("runtime_ms")
    if args.report:
        with open(args.report, "w") as fh:
            fh.write(dumps(data) + "\n")
    summary = {k: data[k] for k in ("name", "clusters", "edges", "variables", "type", "passed", "failures")}
    summary["unidentified"] = len(data["unidentified"])
    print(dumps(summary))
    return 0 if rep.passed else 1


def cmd_oracle_l(args) -> int:
    entry = catalog.load(args.target)
    L = build_L_oracle(entry.assignment, entry.seed.labels)
    print(dumps({"labels": list(entry.seed.labels), "L": L}))
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="qcluster", description="Quantum cluster seeds, mutation and verification.")
    sub = p.add_subparsers(dest="verb", required=True)

    def common(sp, budget=False):
        sp.add_argument("target", help="catalog name (gr2:n, gr3:n, schubert:n:t:s), seed JSON file or -")
        if budget:
            sp.add_argument("--max-nodes", type=int, default=50_000)
            sp.add_argument("--threads", type=int, default=1)
            sp.add_argument("--no-timing", action="store_true", help="omit runtime_ms for byte-stable output")
        return sp

    common(sub.add_parser("seed", help="emit the seed JSON")).set_defaults(func=cmd_seed)
    sp = common(sub.add_parser("mutate", help="apply a mutation sequence, left to right"))
    sp.add_argument("--seq", required=True, help="comma-separated labels or #positions")
    sp.set_defaults(func=cmd_mutate)
    sp = common(sub.add_parser("enumerate", help="enumerate the exchange graph"), budget=True)
    sp.add_argument("--q1", action="store_true", help="also run the commutative oracle")
    sp.set_defaults(func=cmd_enumerate)
    common(sub.add_parser("classify", help="Dynkin type of the mutable part")).set_defaults(func=cmd_classify)
    sp = common(sub.add_parser("verify", help="identify every cluster variable"), budget=True)
    sp.add_argument("--report", help="write the full report JSON here")
    sp.set_defaults(func=cmd_verify)
    common(sub.add_parser("oracle-l", help="quasi-commutation matrix from quantum minors")).set_defaults(func=cmd_oracle_l)
    return p


def run(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if getattr(args, "threads", 1) < 1 or getattr(args, "max_nodes", 1) < 1:
        print("qcluster: --threads and --max-nodes must be positive", file=sys.stderr)
        return 2
    try:
        return args.func(args)
    except (Incompatible, InexactDivision, NotQuasiCommuting) as exc:
        # a seed that fails its own invariants
        print(f"qcluster: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    except (ValueError, KeyError, OSError) as exc:
        print(f"qcluster: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
