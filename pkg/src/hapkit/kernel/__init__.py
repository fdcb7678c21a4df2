"""Hilbert-style proofs: scheme catalogue, checker, proof files and realizer extraction."""
