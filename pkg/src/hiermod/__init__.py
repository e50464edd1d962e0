"""Capacity of labeled constellations and hierarchical bit-streams on the AWGN
channel, and capacity-based prediction of coded link performance."""

from .capacity import (
    CapacityCurve,
    NoiseModel,
    QuadratureConfig,
    capacity_curve,
    joint_capacity,
    mc_capacity,
    normalized_capacity,
    stream_capacity,
    transition_density,
)
from .constellation import (
    Constellation,
    StreamSpec,
    make_nonuniform_16qam,
    make_qam16,
    make_qpsk,
    measure_alpha,
    normalize_energy,
    subset_chi,
)
from .errors import ConvergenceError, DomainError, ParseError, RateNotFound
from .inversion import InversionResult, required_esn0
from .io_formats import load_constellation, load_reference_table, save_constellation
from .prediction import (
    HP,
    LP,
    PredictionResult,
    ReferenceTable,
    equivalent_ideal_rate,
    predict_stream,
    spectral_efficiency_points,
    sweep_alpha,
    sweep_rate,
)

__version__ = "0.1.0"
