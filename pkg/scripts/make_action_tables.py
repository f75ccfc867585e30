#!/usr/bin/env python3
"""Regenerate the shipped worked-instance action tables.

The files under src/torsiongen/data/ are double-entry bookkeeping: the
tests require the programmatic generator to reproduce them byte-for-byte,
so a transcription bug in either place fails loudly.
"""

import json
from pathlib import Path

from torsiongen.curves import actions_to_json, build_action_four, build_action_three
from torsiongen.genus import decompose

DATA = Path(__file__).resolve().parents[1] / "src" / "torsiongen" / "data"

INSTANCES = [
    ("action_k5_g18_four.json", build_action_four, 5, 18),
    ("action_k8_g21_three.json", build_action_three, 8, 21),
]


def main():
    for name, builder, k, g in INSTANCES:
        dec = decompose(k, g)
        data = actions_to_json(k, dec, builder(k, dec))
        path = DATA / name
        path.write_text(json.dumps(data, indent=2, sort_keys=True) + "\n")
        print(f"wrote {path} ({len(data['generators'])} generators)")


if __name__ == "__main__":
    main()
