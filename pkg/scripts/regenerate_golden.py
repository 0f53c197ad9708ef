"""Rewrite the golden torsion-equation files from the current generator."""

from pathlib import Path

from licstruct.cli import RunConfig, render, run
from licstruct.serialize import GOLDEN_STEMS as NAMES
from licstruct.serialize import parse_algebra

GOLDEN = Path(__file__).resolve().parents[1] / "src" / "licstruct" / "data" / "golden"


def main():
    GOLDEN.mkdir(parents=True, exist_ok=True)
    for name, stem in NAMES.items():
        _, report = run(RunConfig("gen-torsion", parse_algebra(name)))
        path = GOLDEN / f"torsion_{stem}.json"
        path.write_text(render(report), encoding="utf-8")
        print(f"{path.name}: {report['count']} equations, {report['nonzero_count']} nonzero")


if __name__ == "__main__":
    main()
