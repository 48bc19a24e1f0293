"""Capacity-region bounds for multiple-access channels with strictly-causal state information."""

__version__ = "0.1.0"
