"""Exact and modular verification of the Apery/Franel supercongruences mod p^3."""

__version__ = "0.1.0"
REPORT_SCHEMA_VERSION = 1
