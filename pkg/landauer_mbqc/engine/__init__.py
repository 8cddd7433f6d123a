"""MBQC pattern engine."""

from landauer_mbqc.engine.builtin import (
    BUILTIN_PATTERNS,
    builtin_pattern,
    compile_layered_pattern,
    j_gate,
    layered_unitary,
    list_builtin_patterns,
    restrict_to_prefix,
)
from landauer_mbqc.engine.pattern import (
    LoadedPattern,
    MeasurementPattern,
    OutcomeRecord,
    PatternStep,
    PauliFrame,
    dump_pattern_file,
    frame_from_outcomes,
    load_pattern_file,
    pattern_from_dict,
)
from landauer_mbqc.engine.runner import (
    PatternRun,
    Trajectory,
    TrajectoryEnsemble,
    adapted_angle,
    byproduct_of,
    enumerate_trajectories,
    run_pattern,
)

__all__ = [
    'PatternStep',
    'MeasurementPattern',
    'OutcomeRecord',
    'PauliFrame',
    'LoadedPattern',
    'load_pattern_file',
    'dump_pattern_file',
    'pattern_from_dict',
    'frame_from_outcomes',
    'PatternRun',
    'Trajectory',
    'TrajectoryEnsemble',
    'adapted_angle',
    'run_pattern',
    'enumerate_trajectories',
    'byproduct_of',
    'BUILTIN_PATTERNS',
    'builtin_pattern',
    'compile_layered_pattern',
    'restrict_to_prefix',
    'layered_unitary',
    'list_builtin_patterns',
    'j_gate',
]
