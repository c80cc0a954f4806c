"""Exact certificates for slice-volume bounds on infinitesimal Newton-Okounkov bodies."""

__version__ = "0.1.0"
