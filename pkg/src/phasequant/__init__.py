"""Coherent-state quantization on the unit circle and the resulting phase operators."""

__version__ = "0.1.0"

from .observables import (
    AliasingError,
    ClassicalObservable,
    Constant,
    Exponential,
    FourierSpectrum,
    QuadratureGrid,
    Sampled,
    Sawtooth,
    SawtoothSquared,
    TrigPolynomial,
    fourier_coefficient,
    fourier_spectrum,
    parse_observable,
)
from .operators import (
    OperatorMatrix,
    PhaseStateVector,
    commutator,
    commutator_number_phase,
    number_operator,
    overlap,
    phase_operator,
    phase_state,
    quantize,
)
from .symbols import (
    ScanReport,
    allones_matrix,
    allones_spectrum,
    comb_pairing,
    commutator_lower_symbol,
    convergence_scan,
    fejer_kernel,
    lower_symbol,
    resolution_identity_residual,
)
from .baselines import (
    LadderPair,
    PeggBarnettBasis,
    cosine_sine,
    ladder_commutator,
    ladder_from_quantization,
    operator_distance,
    pegg_barnett_operator,
    pegg_barnett_states,
    sg_shift,
)
