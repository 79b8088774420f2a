"""Fixed-point localization of equivariant integrals over characteristic cycles.

Torus actions with isolated fixed points are described by GKM data (tangent
weights and Hamiltonian values at each fixed point).  Sheaves are described by
Euler data on a stratification.  The library computes chambers,
Bialynicki-Birula cells, characteristic-cycle multiplicities and the
localized integrals, and ships numerical oracles to check them.
"""

from .bb import BBCell, BBDecomposition, bb_decompose, cell_intersection_table
from .errors import (
    DegenerateActionError,
    DimensionError,
    DomainWarning,
    IncompatibleStratificationError,
    InconsistencyError,
    InconsistentSheafError,
    InputError,
    InvalidInputError,
    OnWallError,
    SheaflocError,
    SingularEvaluationError,
    UnsupportedSheafError,
)
from .localize import (
    CALIBRATION,
    ChamberRow,
    GaussBonnet,
    LocalizationResult,
    Prefactor,
    bv_localize,
    chamber_scan,
    dh_fourier,
    gauss_bonnet,
    main_localize,
)
from .models import (
    FixedPoint,
    FixedPointClass,
    GKMModel,
    build_cpn,
    build_custom,
    build_flag3,
    build_product,
    euler_form_class,
    exp_hamiltonian_class,
    inverse_den_sum,
    one_class,
)
from .oracle import (
    QuadratureSpec,
    dh_inversion_check,
    dh_pushforward_cp1,
    gaussian_fiber_integral,
    quadrature_cp1,
)
from .scene import Scene, load_scene, loads_scene, parse_X, scene_to_json
from .sheaves import (
    ConstructibleSheaf,
    MultiplicityVector,
    Stratum,
    add,
    constant_sheaf,
    cp1_upper_halfplane,
    euler_characteristic,
    extension_by_zero,
    multiplicities,
    multiplicities_local,
    orbit_sheaf,
    preset,
    shift,
    validate,
)
from .weights import (
    CartanElement,
    CRational,
    Weight,
    chamber_id,
    chamber_label,
    enumerate_chambers,
    eval_class,
    eval_class_exact,
    eval_weight,
    is_regular,
)

__version__ = "0.1.0"
