"""Generic initial systems of homogeneous ideals, computed exactly."""

__version__ = "0.1.0"
