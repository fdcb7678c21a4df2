"""Executable realizability toolkit: combinatory evaluation, bracket abstraction,
formula translations, a bounded ground model and a proof-to-realizer compiler."""

__version__ = "0.1.0"
