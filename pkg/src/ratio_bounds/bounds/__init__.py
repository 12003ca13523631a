"""Closed-form bounds per function family."""

from . import bessel, confluent, gauss, pcf

__all__ = ["bessel", "confluent", "gauss", "pcf"]
