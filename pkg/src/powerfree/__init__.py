"""Power-free product sets: rho_d(N), its bounds, constructions and verifiers."""

from .bounds import (
    BoundReport,
    bound_report,
    corollary_derived,
    corollary_upper,
    exact_value_if_applicable,
    main_term,
    remark_identity_lhs_rhs,
    remark_inequality,
    thm4_upper,
    thm5_upper,
    threshold,
)
from .construction import ConstructionCertificate, build, choose_j_set, verify_certificate
from .davenport import (
    GroupSpec,
    davenport_exact,
    davenport_search,
    davenport_upper_bound,
    olson_davenport,
    parse_group_spec,
)
from .errors import (
    CapacityError,
    IncompleteTable,
    InvalidArgument,
    NotApplicable,
    OutOfRange,
    PowerFreeError,
    ResourceLimit,
    ThresholdNotMet,
)
from .expvec import (
    ExponentVector,
    VectorMultiset,
    ZeroSumReport,
    add,
    eliminate,
    find_zero_sum,
    subset_sum_closure,
    to_vector,
)
from .primes import Factorization, PrimeTable, build_table, factorize, nth_prime, omega, pi
from .solver import SolveFailure, SolveResult, solve, solve_range

__version__ = "0.1.0"
