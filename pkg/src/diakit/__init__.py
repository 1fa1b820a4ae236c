"""diakit: corpus preparation, complexity metrics, and evaluation for diacritized text."""

__version__ = "0.1.0"
