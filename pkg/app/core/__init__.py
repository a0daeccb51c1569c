"""Core components: configuration and error types."""

from app.core.config import Settings, settings
from app.core.exceptions import (
    DenominatorNotInvertibleError,
    NotInvertibleError,
    TypeMismatchError,
    WittResidueError,
)

__all__ = [
    "DenominatorNotInvertibleError",
    "NotInvertibleError",
    "Settings",
    "TypeMismatchError",
    "WittResidueError",
    "settings",
]
