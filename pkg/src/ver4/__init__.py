"""Group schemes, distributions and restricted Lie algebras in Ver4+ over F2."""

__version__ = "0.1.0"
