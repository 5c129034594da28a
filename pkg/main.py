#!/usr/bin/env python3
"""
matroid-forge entry point.

Usage:
    python main.py field 9
    python main.py equiv --relation geometric data/examples/B.mat data/examples/C.mat --witness
    python main.py coordinatize --matroid data/examples/q6.mtr --field 5 --ones 1:4,2:4,2:5,3:5,1:6
    python main.py extend builtin:F7minus@5 --json
"""
import sys

from app.main import main

if __name__ == "__main__":
    sys.exit(main())
