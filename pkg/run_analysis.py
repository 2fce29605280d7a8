#!/usr/bin/env python3
"""
Quick runner: reproduce the worked examples, then run the proposition harness.
"""
import sys
from pathlib import Path

from src.cli import main as cli_main


def main() -> int:
    print("=" * 70)
    print("Cumulative inaccuracy measures - worked examples and harness")
    print("=" * 70)
    print()

    out = Path(__file__).parent / "results"
    status = 0
    for example in ("example1", "example2.1", "example3.1"):
        print(f"Reproducing {example}...")
        status = max(status, cli_main(["reproduce", example, "--out", str(out / example.replace(".", "_"))]))
        print()

    print("Running the proposition harness (20 trials per entry)...")
    status = max(status, cli_main(["verify", "all", "--trials", "20", "--seed", "1", "--out", str(out / "verify")]))
    print()
    print("=" * 70)
    print("Done" if status == 0 else f"Finished with exit status {status}")
    print("=" * 70)
    return status


if __name__ == "__main__":
    sys.exit(main())
