"""Covariant Hamiltonian mode dynamics for classical fields with point sources."""

__version__ = "0.1.0"

from covham.brackets import (
    BracketConfig,
    GeneralObservable,
    QuadraticObservable,
    StateLayout,
    bracket_observable,
    canonical_pair_bracket,
    coordinate_observable,
    dw_conservation_check,
    jacobi_defect,
    momentum_vector_observable,
    poisson_bracket,
    product,
)
from covham.canonical import (
    CanonicalGauge,
    CanonicalMode,
    canonical_at_point,
    constant_amplitudes,
    from_canonical,
    gradient_consistency,
    hamilton_residual,
    history_amplitudes,
    mode_hamiltonian,
    mode_hamiltonian_canonical,
    mode_hamiltonian_gradients,
    to_canonical,
)
from covham.dirac import (
    DiracCoupling,
    clifford_defect,
    projector_defects,
    shell_projector,
    slash,
)
from covham.dynamics import (
    AmplitudeHistory,
    evolve_amplitudes,
    mode_equation_residual,
    reconstruct_field,
    source_rate,
)
from covham.errors import (
    CanonicalStructureError,
    CovhamError,
    CrossingError,
    GridDomainError,
    ModeBudgetError,
    ScenarioError,
    ZeroModeError,
)
from covham.fields import (
    FieldSpec,
    contract_full,
    em_field,
    scalar_field,
    spinor_field,
    tensor_field,
)
from covham.green import em_potential, green_oracle, scalar_yukawa
from covham.minkowski import (
    METRIC_DIAG,
    four_vector,
    lower_index,
    mass_shell_energy,
    minkowski_dot,
    on_shell_k,
)
from covham.modes import ModeGrid, box_mode_grid, build_mode_grid
from covham.position import parseval_check
from covham.scenario import Scenario, load_scenario, scenario_from_dict
from covham.verify import (
    DEFAULT_TOLERANCES,
    Report,
    averaged_profile,
    run_verification,
    write_report,
)
from covham.worldlines import (
    Worldline,
    circular_worldline,
    static_worldline,
    uniform_worldline,
)

__all__ = [
    "AmplitudeHistory",
    "BracketConfig",
    "CanonicalGauge",
    "CanonicalMode",
    "CanonicalStructureError",
    "CovhamError",
    "CrossingError",
    "DEFAULT_TOLERANCES",
    "DiracCoupling",
    "FieldSpec",
    "GeneralObservable",
    "GridDomainError",
    "METRIC_DIAG",
    "ModeBudgetError",
    "ModeGrid",
    "QuadraticObservable",
    "Report",
    "Scenario",
    "ScenarioError",
    "StateLayout",
    "Worldline",
    "ZeroModeError",
    "averaged_profile",
    "box_mode_grid",
    "bracket_observable",
    "build_mode_grid",
    "canonical_at_point",
    "canonical_pair_bracket",
    "circular_worldline",
    "clifford_defect",
    "constant_amplitudes",
    "contract_full",
    "coordinate_observable",
    "dw_conservation_check",
    "em_field",
    "em_potential",
    "evolve_amplitudes",
    "four_vector",
    "from_canonical",
    "gradient_consistency",
    "green_oracle",
    "hamilton_residual",
    "history_amplitudes",
    "jacobi_defect",
    "load_scenario",
    "lower_index",
    "mass_shell_energy",
    "minkowski_dot",
    "mode_equation_residual",
    "mode_hamiltonian",
    "mode_hamiltonian_canonical",
    "mode_hamiltonian_gradients",
    "momentum_vector_observable",
    "on_shell_k",
    "parseval_check",
    "poisson_bracket",
    "product",
    "projector_defects",
    "reconstruct_field",
    "run_verification",
    "scalar_field",
    "scalar_yukawa",
    "scenario_from_dict",
    "shell_projector",
    "slash",
    "source_rate",
    "spinor_field",
    "static_worldline",
    "tensor_field",
    "to_canonical",
    "uniform_worldline",
    "write_report",
]
