from .main import EXIT_DATA, EXIT_OK, EXIT_USAGE, main

__all__ = ["EXIT_DATA", "EXIT_OK", "EXIT_USAGE", "main"]
