#!/usr/bin/env python3
"""Regenerate the committed 5-country toy pipeline goldens.

Run after any intentional change to output formats or scoring defaults, then
inspect the diff before committing.
"""

import shutil
import subprocess
import sys
import tempfile
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent
DATA = ROOT / "tests" / "data" / "trade_toy"


def main() -> int:
    with tempfile.TemporaryDirectory() as tmp:
        tmp_path = Path(tmp)
        for f in ("flows.csv", "indicators.csv", "indicator_spec.csv"):
            shutil.copy(DATA / f, tmp_path / f)
        subprocess.run(
            [sys.executable, "-m", "harmnet.cli", "trade",
             "--flows", "flows.csv", "--indicators", "indicators.csv",
             "--indicator-spec", "indicator_spec.csv", "--year", "2020",
             "--outdir", "out"],
            cwd=tmp_path,
            check=True,
        )
        golden = DATA / "golden"
        golden.mkdir(exist_ok=True)
        for old in golden.iterdir():
            old.unlink()
        for produced in sorted((tmp_path / "out").iterdir()):
            shutil.copy(produced, golden / produced.name)
            print(f"wrote {golden / produced.name}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
