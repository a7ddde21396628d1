#!/usr/bin/env python3
"""Regenerate the frozen oracle-scene golden files under tests/golden/."""

import pathlib

from singlink.diagoracle import diagram_to_text, scene

GOLDEN = pathlib.Path(__file__).resolve().parent.parent / "tests" / "golden"

SCENES = {
    "hopf": ("hopf", {}),
    "split": ("split", {}),
    "torus24": ("torus24", {}),
    "band-belt": ("band-belt", {}),
    "clasp-finger": ("clasp-finger", {}),
    "band-sum-p1-q1": ("band-sum", {"p": 1, "q": 1}),
    "band-sum-p2-qm1": ("band-sum", {"p": 2, "q": -1}),
    "meridians-k0-m2": ("meridians-with-twist", {"k": 0, "m": 2}),
    "meridians-k1-m2": ("meridians-with-twist", {"k": 1, "m": 2}),
    "meridians-k2-m3": ("meridians-with-twist", {"k": 2, "m": 3}),
}


def main():
    GOLDEN.mkdir(parents=True, exist_ok=True)
    for fname, (name, params) in sorted(SCENES.items()):
        path = GOLDEN / f"{fname}.txt"
        path.write_text(diagram_to_text(scene(name, **params)))
        print("wrote", path)


if __name__ == "__main__":
    main()
