"""Imaginary quadratic fields with 2-class group (2, 2, 2) and their 2-class field towers."""

__version__ = "0.1.0"
