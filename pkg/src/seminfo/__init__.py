"""Semantic information measures, semantic channel capacity, and sparse sampling planning."""

__version__ = "0.1.0"

from .capacity import (
    BlahutArimoto,
    CapacityResult,
    Channel,
    CodingStrategy,
    OptimizerConfig,
    SemanticCapacityOptimizer,
    ambiguity,
    avg_received_logical_info,
    capacity_objective,
    mutual_information,
    optimize_capacity,
    shannon_capacity,
)
from .cognition import AccuracyProfile, cognitive_curve, cognitive_entropy, cognitive_information
from .compression import CompressionSpec, LossDecomposition, Verdict, decompose_loss
from .exceptions import (
    CapabilityError,
    DomainError,
    InfeasibleError,
    NumericalError,
    SemInfoError,
    StructuralError,
)
from .sampling import (
    OrthogonalMatchingPursuit,
    SamplingScenario,
    SelectionMatrix,
    SelectionSampler,
    SparseBasis,
    SparseSignal,
    build_selection_matrix,
    calibrated_scenario,
    crlb,
    make_basis,
    make_spectrum_scenario,
    min_measurements,
    monte_carlo_crlb,
    omp_recover,
    sample,
    sampling_cognitive_entropy,
)
from .world import (
    FiniteWorld,
    FuzzyConcept,
    SemanticMessage,
    SemanticMessageSet,
    fuzzy_semantic_entropy,
    logical_probability,
    semantic_entropy,
    semantic_information,
)
