"""polyflow: translation-invariant evolution of real-rooted polynomials."""

__version__ = "0.1.0"
