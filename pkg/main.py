#!/usr/bin/env python3
"""
Thermal lab - main entry point.

Runs one experiment subcommand; see ``python main.py --help``.
"""

import os
import sys

# Make ``src`` importable when run from any directory
sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

from src.cli import main

if __name__ == "__main__":
    sys.exit(main())
