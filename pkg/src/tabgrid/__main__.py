"""Allow `python -m tabgrid` as an alternative to the `tabgrid` script."""

import sys

from tabgrid.cli import main

if __name__ == "__main__":
    sys.exit(main())
