"""CODATA SI values of the constants used throughout the package."""

from dataclasses import dataclass, field


@dataclass(frozen=True)
class PhysicalConstants:
    # init=False keeps the values fixed: PhysicalConstants(hbar=...) is a TypeError.
    hbar: float = field(default=1.054571817e-34, init=False)  # J s
    c: float = field(default=2.99792458e8, init=False)  # m/s
    k_B: float = field(default=1.380649e-23, init=False)  # J/K


CONSTANTS = PhysicalConstants()

HBAR = CONSTANTS.hbar
C = CONSTANTS.c
K_B = CONSTANTS.k_B
HBAR_C = HBAR * C
