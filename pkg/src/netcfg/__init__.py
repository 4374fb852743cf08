"""Closed-loop network configuration from natural-language intents."""

__version__ = "0.1.0"
