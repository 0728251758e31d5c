"""Vieta jumping on x^2 - p xy + y^2 = q, Pell conics and small norms in real quadratic rings."""

__version__ = "0.1.0"
