"""Novelty-search exploration lab on an Archimedean spiral benchmark.

The behavior space is a planar spiral whose arc length has a closed form,
which makes it possible to compare Euclidean and geodesic novelty metrics,
linear and non-linear genotype parametrizations, and a range of archive
policies against exact geometric ground truth.
"""

__version__ = "0.1.0"

from .spiral import (
    BehaviorPoint,
    Genotype,
    GenotypeSpace,
    SpiralParams,
    arc_length,
    arc_length_from_origin,
    clamp_genotype,
    euclidean_distance,
    geodesic_distance,
    genotype_at_curve_parameter,
    genotype_bounds,
    invert_arc_length,
    map_genotype,
    spiral_point,
)
from .archives import (
    GridArchive,
    SamplingMode,
    SamplingStrategy,
    UnstructuredArchive,
    cell_index,
    grid_insert,
    sample_parents,
    unstructured_update,
    update_discovery_scores,
)
from .evolution import (
    EvolutionConfig,
    EvolutionState,
    Individual,
    LineageEntry,
    Metric,
    init_population,
    mutate,
    novelty_score,
    step_generation,
)
from .analysis import (
    CoverageAccumulator,
    CoverageReport,
    MutationDeltaRecord,
    OscillatorFit,
    Phase,
    PhaseKind,
    coverage,
    fit_damped_oscillator,
    median_history,
    mutation_deltas,
    segment_phases,
)
from .experiments import (
    ArchiveKind,
    BatchResult,
    ConfigError,
    ExperimentConfig,
    GenerationRow,
    RunTelemetry,
    Scenario,
    effective_config_items,
    emit_summary,
    evaluation_count,
    execute_batch,
    parse_config,
    run_batch,
    run_single,
)
from .svgplot import emit_svg, render_svg

__all__ = [
    "__version__",
    "BehaviorPoint",
    "Genotype",
    "GenotypeSpace",
    "SpiralParams",
    "arc_length",
    "arc_length_from_origin",
    "clamp_genotype",
    "euclidean_distance",
    "geodesic_distance",
    "genotype_at_curve_parameter",
    "genotype_bounds",
    "invert_arc_length",
    "map_genotype",
    "spiral_point",
    "GridArchive",
    "SamplingMode",
    "SamplingStrategy",
    "UnstructuredArchive",
    "cell_index",
    "grid_insert",
    "sample_parents",
    "unstructured_update",
    "update_discovery_scores",
    "EvolutionConfig",
    "EvolutionState",
    "Individual",
    "LineageEntry",
    "Metric",
    "init_population",
    "mutate",
    "novelty_score",
    "step_generation",
    "CoverageAccumulator",
    "CoverageReport",
    "MutationDeltaRecord",
    "OscillatorFit",
    "Phase",
    "PhaseKind",
    "coverage",
    "fit_damped_oscillator",
    "median_history",
    "mutation_deltas",
    "segment_phases",
    "ArchiveKind",
    "BatchResult",
    "ConfigError",
    "ExperimentConfig",
    "GenerationRow",
    "RunTelemetry",
    "Scenario",
    "effective_config_items",
    "emit_summary",
    "evaluation_count",
    "execute_batch",
    "parse_config",
    "run_batch",
    "run_single",
    "emit_svg",
    "render_svg",
]
