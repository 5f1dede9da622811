"""Security rating metrics for distributed systems.

Quantitative security assessment built from expert elicitation: pairwise
prioritization weighting with a concordance-validated panel, damage
estimation in two variants, a staged attack model with scenario
enumeration, and a normalized comprehensive score that makes heterogeneous
systems comparable.
"""

__version__ = "0.1.0"

from .attack import (
    STAGES,
    AttackAction,
    AttackCatalog,
    AttackModelError,
    AttackTree,
    Exploit,
    ExploitSource,
    SubTarget,
    ZombieCampaign,
    build_attack_tree,
    count_scenarios,
    enumerate_scenarios,
    load_catalog,
    zombie_efficiency,
)
from .concordance import (
    ConcordanceError,
    ConcordanceReport,
    GridPoint,
    concordance,
    concordance_grid,
    panel_adequacy,
    rank_sums,
    verify_rank_total,
)
from .damage import (
    DamageCoefficients,
    DamageError,
    DamageGridRow,
    DamageInput,
    DamageVariant,
    IncidentStats,
    TanhParams,
    coefficients_piecewise,
    coefficients_tanh,
    damage_grid,
    expected_damage,
    incident_stats,
)
from .model import (
    AggregationRule,
    AssessmentProject,
    Characteristic,
    IncidentRecord,
    MembershipMode,
    PairwiseJudgment,
    ProjectConfig,
    ProjectError,
    RankTable,
    Relation,
    SystemProfile,
    load_project,
    loads_project,
    project_from_dict,
    validate_project,
)
from .report import Report, SystemScores, build_report
from .scoring import (
    NormalizedScore,
    ScoreFunction,
    ScoringError,
    average_score,
    build_score_function,
    compare_systems,
    comprehensive_score,
    degree_of_security,
    integrate_score,
    membership_security,
    normalized_g,
    normalized_w,
)
from .weighting import (
    ComparisonMatrix,
    WeightingError,
    WeightVector,
    aggregate_judgments,
    first_order_weights,
    prioritize,
    second_order_weights,
)

__all__ = [
    "__version__",
    # model
    "AggregationRule", "AssessmentProject", "Characteristic", "IncidentRecord",
    "MembershipMode", "PairwiseJudgment", "ProjectConfig", "ProjectError",
    "RankTable", "Relation", "SystemProfile", "load_project", "loads_project",
    "project_from_dict", "validate_project",
    # weighting
    "ComparisonMatrix", "WeightVector", "WeightingError", "aggregate_judgments",
    "first_order_weights", "second_order_weights", "prioritize",
    # concordance
    "ConcordanceError", "ConcordanceReport", "GridPoint", "concordance",
    "concordance_grid", "panel_adequacy", "rank_sums", "verify_rank_total",
    # scoring
    "NormalizedScore", "ScoreFunction", "ScoringError", "average_score",
    "build_score_function", "compare_systems", "comprehensive_score",
    "degree_of_security", "integrate_score", "membership_security",
    "normalized_g", "normalized_w",
    # damage
    "DamageCoefficients", "DamageError", "DamageGridRow", "DamageInput",
    "DamageVariant", "IncidentStats", "TanhParams", "coefficients_piecewise",
    "coefficients_tanh", "damage_grid", "expected_damage", "incident_stats",
    # attack
    "STAGES", "AttackAction", "AttackCatalog", "AttackModelError", "AttackTree",
    "Exploit", "ExploitSource", "SubTarget", "ZombieCampaign",
    "build_attack_tree", "count_scenarios", "enumerate_scenarios",
    "load_catalog", "zombie_efficiency",
    # report
    "Report", "SystemScores", "build_report",
]
