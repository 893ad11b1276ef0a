"""Joint position-momentum entropy of squeezed Gaussian wave packets in quadratic systems."""

__version__ = "0.1.0"
