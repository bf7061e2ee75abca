"""VoltProbe - spectral verification toolkit for Volterra composition operators."""

__version__ = "0.1.0"
