"""Code/comment inconsistency detection and docstring generation."""

__version__ = "0.1.0"

from .languages import LanguageId

__all__ = ["LanguageId", "__version__"]
