# Copyright 2025 nonrep-grids contributors.
# See LICENSE file for licensing details.

"""Non-repetitive colorings of path products, rook graphs and biclique products."""

__version__ = "0.1.0"
