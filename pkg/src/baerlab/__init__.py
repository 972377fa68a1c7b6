"""Decision procedures for annihilator conditions on finite rings and modules."""

__version__ = "0.1.0"
