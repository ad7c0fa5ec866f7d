# Copyright 2025 nonrep-grids contributors.
# See LICENSE file for licensing details.

"""`python -m nonrep` entry point."""

import sys

from nonrep.cli import main

sys.exit(main())
