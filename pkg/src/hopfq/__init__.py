"""Hopf-fibration geometry of one-, two- and three-qubit pure states."""

__version__ = "0.1.0"

from .algebra import (
    OCTONION_TABLE,
    Octonion,
    Quaternion,
    oct_inv,
    oct_mul,
    quat_exp_decompose,
    quat_inv,
    quat_mul,
)
from .checks import CheckReport, check_suite
from .entanglement import (
    BlochRadii,
    DensityMatrix2,
    GeneralizedConcurrences,
    LeafDescriptor,
    LeafLabel,
    classify_leaf,
    concurrence,
    generalized_concurrences,
    partial_bloch_radii,
    reduced_density,
    separability_check,
)
from .errors import ConsistencyError, HopfqError, PoleError, ValidationError, ZeroDivisorError
from .fibers import (
    FiberFrame,
    Ray,
    epsilon_path,
    fiber_frame,
    fiber_point_s7,
    fiber_point_s15,
    mes_state,
    projective_equal,
)
from .foliation import FoliationRow, foliation_sample
from .hopf import (
    BasePoint,
    Infinity,
    entanglor_expectation,
    h1_ratio,
    hopf_s3,
    hopf_s7,
    hopf_s15,
    inverse_stereographic,
    stereo_project_s3,
)
from .scene import FibrationScene, render_fibration_scene
from .states import (
    Grouping,
    OctonionPair,
    PureState,
    QuaternionPair,
    encode_three_qubit,
    encode_two_qubit,
    random_pure_state,
)

__all__ = [
    "BasePoint",
    "BlochRadii",
    "check_suite",
    "CheckReport",
    "classify_leaf",
    "concurrence",
    "ConsistencyError",
    "DensityMatrix2",
    "encode_three_qubit",
    "encode_two_qubit",
    "entanglor_expectation",
    "epsilon_path",
    "fiber_frame",
    "fiber_point_s15",
    "fiber_point_s7",
    "FiberFrame",
    "FibrationScene",
    "foliation_sample",
    "FoliationRow",
    "generalized_concurrences",
    "GeneralizedConcurrences",
    "Grouping",
    "h1_ratio",
    "hopf_s15",
    "hopf_s3",
    "hopf_s7",
    "HopfqError",
    "Infinity",
    "inverse_stereographic",
    "LeafDescriptor",
    "LeafLabel",
    "mes_state",
    "oct_inv",
    "oct_mul",
    "Octonion",
    "OCTONION_TABLE",
    "OctonionPair",
    "partial_bloch_radii",
    "PoleError",
    "projective_equal",
    "PureState",
    "quat_exp_decompose",
    "quat_inv",
    "quat_mul",
    "Quaternion",
    "QuaternionPair",
    "random_pure_state",
    "Ray",
    "reduced_density",
    "render_fibration_scene",
    "separability_check",
    "stereo_project_s3",
    "ValidationError",
    "ZeroDivisorError",
]
