"""Diff catalog seeds against the reference matrices in tests/fixtures.

Prints the first mismatching entry per matrix, or "match".
"""
import json
from pathlib import Path

from qcluster import catalog

REF = Path(__file__).resolve().parents[1] / "tests" / "fixtures" / "reference_matrices.json"

CASES = {
    "gr2_8_B": ("gr2:8", "B"),
    "gr2_8_L": ("gr2:8", "L"),
    "gr3_6_L": ("gr3:6", "L"),
    "schubert_7_6_B": ("schubert:9:7:6", "B"),
    "schubert_7_6_L": ("schubert:9:7:6", "L"),
}


def first_diff(a, b):
    if len(a) != len(b) or len(a[0]) != len(b[0]):
        return f"shape {len(a)}x{len(a[0])} vs {len(b)}x{len(b[0])}"
    for i, (ra, rb) in enumerate(zip(a, b)):
        for j, (x, y) in enumerate(zip(ra, rb)):
            if x != y:
                return f"({i},{j}): {x} vs {y}"
    return None


def main():
    ref = json.loads(REF.read_text())
    for key, (name, which) in CASES.items():
        seed = catalog.load(name).seed
        ours = getattr(seed, which).tolist()
        diff = first_diff(ours, ref[key]["M"])
        rows = list(seed.labels)
        label_note = "" if rows == ref[key]["rows"] else "  (row labels differ: " + ", ".join(
            f"{a}/{b}" for a, b in zip(rows, ref[key]["rows"]) if a != b) + ")"
        print(f"{key:>16}: {'match' if diff is None else diff}{label_note}")


if __name__ == "__main__":
    main()
