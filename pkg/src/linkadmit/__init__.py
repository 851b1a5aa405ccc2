"""Exact admission control for link demands on wireless conflict graphs.

Localized admission tests, an exact minimum-schedule oracle, worst-case
factor analysis, primary-interference specializations, first-fit interval
scheduling and an online admission simulator, all over exact rationals.
"""

from .analysis import (
    PerformanceReport,
    beta_degree_lp,
    beta_mixed_formula,
    beta_mixed_lp,
    beta_row_lp,
    imperfection_ratio,
    induced_star_number,
    report,
    strengthened_row_factor,
)
from .conditions import (
    CONDITIONS,
    Verdict,
    check_clique_necessary,
    check_clique_scaled,
    check_degree,
    check_mixed,
    check_row,
    check_row_strengthened,
    check_row_strengthened_auto,
    check_row_strengthened_designated,
)
from .errors import (
    CapacityError,
    ConsistencyError,
    DomainError,
    LinkAdmitError,
    PreconditionError,
    RejectionError,
)
from .graphs import (
    ConflictGraph,
    DemandVector,
    NetworkGraph,
    RawDemandSpec,
    complete_graph,
    cycle_graph,
    demand_sum,
    enumerate_maximal_cliques,
    enumerate_maximal_independent_sets,
    induced_subgraph,
    neighbors,
    normalize_demands,
    path_graph,
    star_graph,
)
from .oracle import (
    ActivationSchedule,
    OracleResult,
    is_feasible,
    minimum_duration,
    t_clique,
    verify_schedule,
)
from .primary import (
    check_clique_network,
    check_row_network,
    check_shannon_network,
    line_conflict_graph,
)
from .scheduling import IntervalSchedule, build_schedule_row, first_fit_insert, to_activation
from .simulation import SimEvent, SimTrace, metrics, simulate

__version__ = "0.1.0"
