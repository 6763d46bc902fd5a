"""Entrypoint for the knotconc command line."""

import sys

from knotconc.cli import main

if __name__ == "__main__":
    sys.exit(main())
