"""Computational ergodic theory: joinings of group rotations, discrete
spectra and Kronecker disjointness, Folner averaging, and strongly
q-multiplicative weight sequences, verified exactly on finite systems and
numerically on tori and nilmanifolds."""

from .frequency import GOLDEN, ONE, SQRT2, SQRT3, Frequency, parse_frequency
from .systems import (
    ArcIndicator,
    Character,
    FiniteElem,
    FiniteRotation,
    Heisenberg,
    HeisenbergPoint,
    Product,
    ProductPoint,
    QMultShift,
    SkewPoint,
    SkewProduct,
    SymbolicWindow,
    SymbolValue,
    TensorProduct,
    TorusPoint,
    TorusRotation,
    apply,
    evaluate,
    iterate,
    product_point,
    product_system,
)
from .folner import Boxes, Custom, Intervals, folner_ratio, tempered_bound
from .averaging import (
    CharacterWeight,
    Constant,
    ConvergenceReport,
    LevelSetIndicator,
    PointwiseProduct,
    QMultWeight,
    cesaro_limit,
    csum,
    ergodic_average,
    l2_product_average,
    multiple_average,
)
from .qmult import THUE_MORSE, QMultFunction, block_sum, level_set_density
from .spectrum import (
    FiniteCyclic,
    QDyadic,
    TorusGenerated,
    TrivialOnly,
    correlation_sequence,
    diag_orbit_spectrum,
    known_spectrum,
    kronecker_disjoint,
    spectral_point_mass,
    spectra_equal,
)
from .joinings import (
    bqd_check,
    common_factor,
    disjoint,
    ergodic_joinings,
    joint_kronecker_quotient,
    orbit_subgroup,
    product_system_ergodic,
    quasi_disjoint,
    verify_ergodic_decomposition,
)
from .errors import (
    ConfigError,
    HypothesisRefused,
    InvalidObservable,
    InvalidPoint,
    NonErgodicRotation,
    UndecidableSpectrum,
)

__version__ = "0.1.0"
