"""Module entry point so ``python3 -m biopt`` mirrors the console script."""

import sys

from biopt.cli import main

if __name__ == "__main__":
    sys.exit(main())
