#!/usr/bin/env python3
"""
Minimal surfaces of H²×R from the command line.

    python h2r.py height --family catenoid
    python h2r.py verify --suite geometry
"""

import sys

from src.cli import main

if __name__ == "__main__":
    sys.exit(main())
