"""
Write the data behind the three figures as CSV (rendering is left to the reader's tool of choice).
"""
import sys
from pathlib import Path

from src.cli import main as cli_main

OUTPUT_DIR = Path("results/figures")


def main() -> int:
    status = 0
    for fig in ("fig1", "fig2", "fig3"):
        status = max(status, cli_main(["reproduce", fig, "--out", str(OUTPUT_DIR / fig)]))
    return status


if __name__ == "__main__":
    sys.exit(main())
