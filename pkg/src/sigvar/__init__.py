"""Signature varieties: axis-path signatures, det-square identities, rough Veronese polytopes."""

__version__ = "0.1.0"
