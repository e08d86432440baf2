"""pencode: subsystem-code penalty Hamiltonians at desk scale.

Construct generalized Bacon-Shor codes and the two-local [[6k,2k,2]] chain
family, build their penalty Hamiltonians, calibrate the gauge rescaling
ratios, and verify the spectral, dynamical and no-go claims numerically.
"""

__version__ = "0.1.0"

from .paulis import PauliOp
from .codes import (SubsystemCode, CodeStructure, WeightCapExceeded,
                    centralizer_basis, code_distance, derive_structure,
                    is_css_two_local, min_weight_bare_representative,
                    min_weight_dressed_representative)
from .bacon_shor import (chain_code, chain_gauge_pairs, chain_logicals,
                         chain_matrix, chain_stabilizers, code_from_matrix,
                         code_params)
from .hamiltonians import (BathSpec, PauliSum, ProblemSpec, assemble_total,
                           bare_encoded_hamiltonian, gauge_residues,
                           penalty_hamiltonian, physical_encoded_hamiltonian)
from .spectral import (PenaltyCalibration, SpectralResult, calibrate,
                       diagonalize, error_detection_check, sector_analysis,
                       verify_lemma1)
from .dynamics import (EvolutionConfig, decoupling_experiment, default_config,
                       encoded_computation_fidelity, evolve, theorem_bound)
from .nogo import check_theorem, enumerate_bare_logicals, scan_matrices

__all__ = [
    "PauliOp", "SubsystemCode", "CodeStructure", "WeightCapExceeded",
    "centralizer_basis", "code_distance", "derive_structure",
    "is_css_two_local", "min_weight_bare_representative",
    "min_weight_dressed_representative",
    "chain_code", "chain_gauge_pairs", "chain_logicals", "chain_matrix",
    "chain_stabilizers", "code_from_matrix", "code_params",
    "BathSpec", "PauliSum", "ProblemSpec", "assemble_total",
    "bare_encoded_hamiltonian", "gauge_residues", "penalty_hamiltonian",
    "physical_encoded_hamiltonian",
    "PenaltyCalibration", "SpectralResult", "calibrate", "diagonalize",
    "error_detection_check", "sector_analysis", "verify_lemma1",
    "EvolutionConfig", "decoupling_experiment", "default_config",
    "encoded_computation_fidelity", "evolve", "theorem_bound",
    "check_theorem", "enumerate_bare_logicals", "scan_matrices",
]
