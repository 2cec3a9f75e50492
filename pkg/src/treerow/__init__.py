"""Rowmotion on rooted trees: orbits, cylinder tilings, statistics,
closed-form family profiles, and continuous (PL/birational) variants."""

from .errors import (
    BudgetExceededError,
    RetriesExhaustedError,
    SpecParseError,
    TreerowError,
    UnsupportedFamilyError,
    ZeroInFieldError,
)
from .poset import (
    IntervalSpec,
    Poset,
    RootedTree,
    chain_product,
    count_antichains,
    down_set,
    interval_partition,
    intervals,
    linear_extension,
    parse_tree,
)
from .rowmotion import (
    DEFAULT_ANTICHAIN_BUDGET,
    Orbit,
    all_orbits,
    enumerate_antichains,
    orbit_of,
    rho_antichain,
    rho_ideal,
    rho_via_toggles,
    toggle,
)
from .tiling import (
    Tile,
    Tiling,
    TilingReport,
    orbit_of_tiling,
    render_tiling,
    tile_counts,
    tiling_of_orbit,
    validate_tiling,
)
from .stats import (
    HomometryVerdict,
    HomomesyVerdict,
    Statistic,
    TilingSums,
    check_homomesy,
    check_homometry,
    eval_statistic,
    orbit_sum,
    orbit_sums_from_tiling,
    parse_statistic,
)
from .families import (
    Comb,
    CompleteBinary,
    ExtendedComb,
    ExtendedStar,
    FamilyDescriptor,
    FamilyReport,
    OrbitClass,
    OrbitProfile,
    Star,
    ThreeLeaf,
    Tk,
    Zipper,
    chain,
    combine_profiles,
    descriptor_string,
    extend_root_transfer,
    family_spec,
    graft,
    make_family,
    observed_profile,
    parse_family,
    predicted_profile,
    verify_family,
)
from .continuous import (
    DEFAULT_MAX_ITER,
    LabeledPoint,
    OrderSearchResult,
    birational_rowmotion,
    birational_toggle,
    ideal_of_indicator,
    indicator_point,
    order_search,
    pl_rowmotion,
    pl_toggle,
    random_birational_point,
    random_pl_point,
)

__version__ = "0.1.0"
