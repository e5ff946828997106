"""Visa-page stamp detection, recognition and travel pattern extraction."""

__version__ = "0.1.0"
