"""Enclosure oracles for contiguous ratios."""

from .dispatch import OracleCache, evaluate_ratio
from .recurrences import (
    bessel_i_ratio_enclosure,
    bessel_i_ratio_result,
    bessel_k_ratio_enclosure,
    bessel_k_ratio_result,
    gauss_H_enclosure,
    gauss_ratio_enclosure,
    gauss_ratio_result,
    k_down_enclosure,
    kummer_H_enclosure,
    kummer_a1b2_result,
    kummer_a1b_result,
    kummer_ratio_enclosure,
    kummer_ratio_result,
    pcf_ratio_enclosure,
    pcf_ratio_result,
    product_enclosure,
    reseeded_result,
)
from .series import gauss_series, kummer_series

__all__ = [
    "OracleCache",
    "evaluate_ratio",
    "bessel_i_ratio_enclosure",
    "bessel_i_ratio_result",
    "bessel_k_ratio_enclosure",
    "bessel_k_ratio_result",
    "gauss_H_enclosure",
    "gauss_ratio_enclosure",
    "gauss_ratio_result",
    "k_down_enclosure",
    "kummer_H_enclosure",
    "kummer_a1b2_result",
    "kummer_a1b_result",
    "kummer_ratio_enclosure",
    "kummer_ratio_result",
    "pcf_ratio_enclosure",
    "pcf_ratio_result",
    "product_enclosure",
    "reseeded_result",
    "gauss_series",
    "kummer_series",
]
