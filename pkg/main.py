#!/usr/bin/env python3
"""
ratio-bounds - Main CLI entry point.

Verifies bounds for contiguous ratios of special functions against rigorous enclosures.
"""

from ratio_bounds.cli import main

if __name__ == '__main__':
    main()
