"""Decision deliberation as defeasible argumentation.

Knowledge bases declare properties, acts, states and exact-rational
valuations; reason schemata compile into ground rule instances; the
argument engine resolves conflicts by specificity defeat and grounded
reinstatement; the model layer turns justified utility comparisons into
act recommendations under incremental refinement.
"""

from .core import (
    DEFAULT_CONFIG,
    DuplicateEntryError,
    EngineConfig,
    Kind,
    KnowledgeBase,
    Literal,
    MalformedFormulaError,
    ModelError,
    PropFormula,
    Rule,
    RuleInstance,
    Strength,
    VocabularyError,
    Vocabulary,
    achieves,
    assess_eq,
    conj_normalize,
    contr_eq,
    desir,
    do,
    format_rational,
    formula,
    holds,
    not_do,
    parse_rational,
    prob_eq,
    undesir,
    utility_eq,
)
from .engine import (
    Argument,
    ArgumentWorkspace,
    AttackEdge,
    BruteArgument,
    ConstructionResult,
    EdgeKind,
    Label,
    OracleScaleError,
    Relation,
    SpecificityResult,
    Trace,
    Verdict,
    construct_arguments,
    counterarguments,
    enumerate_all_arguments,
    evaluate_contribution,
    evaluate_utility,
    justify,
    label_arguments,
    more_specific,
)
from .logic import consistent, entails
from .model import (
    DecisionModel,
    Expansion,
    Recommendation,
    RollupError,
    SalientResult,
    expand_event,
    recommend,
    refine_basis,
    rollup_oracle,
    salient_paths,
)
from .schemata import (
    AssessedUtility,
    ContributionTable,
    ProbabilityFact,
    comparison_instance,
    contribution_arguments,
    expected_utility_instance,
    practical_instances,
    state_utility_instances,
)

__version__ = "0.1.0"
