"""Factor birational maps of projective space into involutions, exactly."""

__version__ = "0.1.0"
