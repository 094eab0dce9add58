"""critval: exact verification of multi-integral and critical-value determinant identities."""
__version__ = "1.0.0"
