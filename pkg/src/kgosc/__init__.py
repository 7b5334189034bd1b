"""Spectra and momentum-space states of the 2D Klein-Gordon oscillator,
with and without a minimal-length deformation, plus a numerical oracle."""

from .errors import KGOscError
from .model import (EnergyLevel, Mode, ModelParams, QuantumNumbers, Source, Variant,
                    make_params, make_quantum_numbers, params_from_dimensionless)
from .spectrum import (PTParams, gup_energy_chain, gup_energy_eq70_printed, no_gup_energy,
                       pt_parameters, spectrum_table)

__all__ = [
    "KGOscError", "EnergyLevel", "Mode", "ModelParams", "QuantumNumbers", "Source", "Variant",
    "make_params", "make_quantum_numbers", "params_from_dimensionless", "PTParams",
    "gup_energy_chain", "gup_energy_eq70_printed", "no_gup_energy", "pt_parameters",
    "spectrum_table",
]
