"""Quasiparticle band preparation and analysis for the (twisted) transverse-field Ising chain.

Symmetry-preserving variational circuits prepare localized Wannier states of
magnon and soliton quasiparticles; a dense exact-diagonalization oracle with
momentum/parity labeling validates everything; analysis routines extract band
dispersions, gaps, bandwidths, quasiparticle weights, and phase statistics.
"""

__version__ = "0.1.0"

from .errors import CapabilityError, ConsistencyError, DegenerateChannelError
from .statevector import (
    StateVector,
    apply_layer,
    apply_symmetry,
    inner_product,
    new_product_state,
    parity_expectation,
    site_x_expectation,
)
from .hamiltonian import (
    BandIntegrals,
    ModelSpec,
    apply_hamiltonian,
    energy,
    thermodynamic_band_integrals,
)
from . import states
from .exact_diag import (
    BandEnergies,
    ExactWeights,
    LabeledSpectrum,
    SpectrumEntry,
    band_extract,
    cached_spectrum,
    dense_hamiltonian,
    exact_weights,
    full_labeled_spectrum,
)
from .vqe import (
    AnsatzParams,
    InitScheme,
    InitialState,
    VqeConfig,
    VqeResult,
    cost_and_gradient,
    depth_sweep,
    optimize,
    prepare_state,
)
from .analysis import (
    BandReport,
    MomentumDecomposition,
    PhaseStatistics,
    WeightPhases,
    band_scalars,
    dispersion_from_wannier,
    magnetization_profile,
    momentum_decompose,
    phase_statistics_experiment,
    post_select,
    weight_and_phases,
    wrap_angle,
)
from .experiments import (
    ExperimentConfig,
    ResultTable,
    Row,
    default_config,
    emit,
    reproduce,
    run_experiment,
)
