"""
ratio-bounds: bounds for contiguous ratios of parabolic cylinder, modified
Bessel, Kummer and Gauss functions, checked against rigorous enclosures.
"""

try:
    from ._version import __version__
except ImportError:  # source tree without setuptools-scm metadata
    __version__ = "0.0.0"

__all__ = ["__version__"]
