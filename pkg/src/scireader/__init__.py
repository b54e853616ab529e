"""Backend toolkit for an intelligent scientific-paper reader."""

__version__ = "0.1.0"
