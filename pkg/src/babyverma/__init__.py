"""Graded characters of baby Verma modules for restricted rational Cherednik algebras."""

__version__ = "0.1.0"
