"""qlight: desk-scale quantum-optics numerics.

Classical laser-noise spectra, single-mode phase-space states and
detection simulation, operator-ordering calculus for g2(0), and two-mode
Bogoliubov channel algebra, with a CLI that emits the closed-form results
as machine-checkable tables.
"""

from .classical import (
    ComplexTimeSeries,
    CorrelationFunction,
    FieldError,
    SpectralDensity,
    absorption_rate,
    amplitude_corr_from_intensity,
    coherence_factor,
    correlation,
    field_spectrum,
    gaussian_even_moment,
    lineshape_from_noise,
    spectral_density,
    synthesize_field,
    white_fm_linewidth,
)
from .detection import (
    QuadratureSamples,
    TomographyDataset,
    reconstruct_wigner,
    sample_direct,
    sample_heterodyne,
    sample_homodyne,
    simulate_tomography,
)
from .multimode import (
    BeamSplitter,
    BogoliubovMap,
    SidebandState,
    apply_beam_splitter,
    apply_channel,
    epr_commutator_check,
    make_beam_splitter,
    make_channel,
    noise_figure,
    noise_figure_numeric,
    sideband_state,
    time_reverse,
    unbalanced_interferometer,
)
from .ordering import (
    OrderingMoments,
    g2_zero,
    g2_zero_fock,
    ordering_energy_table,
    sym_moments_fock,
    sym_moments_gaussian,
)
from .states import (
    FockVector,
    GaussianState,
    PhotonDistribution,
    StateError,
    WignerGrid,
    displace,
    gaussian_p_function,
    make_state,
    marginal,
    parity_wigner_origin,
    photon_distribution,
    to_husimi,
    wigner,
)

__version__ = "0.1.0"
