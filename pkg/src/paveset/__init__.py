"""Layer-cake integrals of monotone set functions and measurability on paved sets.

Finite ground sets are ``{0, ..., n-1}`` with subsets as int bitmasks; all
arithmetic is exact (:class:`fractions.Fraction` plus signed infinities).
"""

from .capacity import (
    Capacity,
    NatFilterCapacity,
    NatFilterKind,
    PartialCapacity,
    SetFunction,
    ZeroOneCapacity,
    agree_on,
    caratheodory_algebra,
    caratheodory_restriction,
    count_zero_one,
    enumerate_zero_one,
    inner_extension,
    is_modular,
    make_capacity,
    outer_extension,
    zero_one_from_family,
)
from .core import (
    Constant,
    HarmonicAbove,
    HarmonicBelow,
    LinearGrowth,
    NatFn,
    PointFn,
    Staircase,
    TwoPoint,
    indicator,
    mask_of,
    members,
    nat_eval,
    nat_liminf,
    nat_limsup,
    pointwise,
    scale,
    staircase_eval,
    truncate,
    upper_shift,
)
from .errors import PavesetError
from .extrat import INF, NEG_INF, ext, fmt
from .insertion import PavingPair, has_property_N, insert, rel_ll, urysohn, verify_theorem45
from .integral import UNDEFINED, choquet, choquet_over, choquet_signed, nat_filter_integral, staircase_integral
from .measurable import (
    MonotoneMap,
    compose_monotone,
    is_measurable,
    is_measurable_algebra,
    is_measurable_signed,
    nonmeasurability_witness,
    oracle_is_measurable,
    staircase_approx,
    t3_partition,
)
from .nat import nat_is_measurable, nat_ultrafilter_limits
from .paving import (
    NatPavingKind,
    NatSet,
    Paving,
    atoms,
    close_under,
    is_algebra,
    is_paving,
    is_stable,
    nat_member,
    nat_semicompact,
)
from .serialize import parse_instance
from .suites import verify_prop2, verify_remark1, verify_remark5, verify_theorem2_nat

__version__ = "0.1.0"
