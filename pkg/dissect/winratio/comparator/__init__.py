from dissect.winratio.comparator.adjudicate import (
    PairVerdict,
    Verdict,
    adjudicate,
    adjudicate_all,
    attribution,
    compare_on_outcome,
    count_verdicts,
    tally,
)
from dissect.winratio.comparator.hierarchy import (
    Direction,
    OutcomeHierarchy,
    OutcomeKind,
    OutcomeSpec,
    parse_hierarchy,
)
from dissect.winratio.comparator.matching import greedy_match
from dissect.winratio.comparator.records import (
    Arm,
    MatchedPair,
    SubjectRecord,
    parse_pairs,
    read_pairs,
)

__all__ = [
    "Arm",
    "Direction",
    "MatchedPair",
    "OutcomeHierarchy",
    "OutcomeKind",
    "OutcomeSpec",
    "PairVerdict",
    "SubjectRecord",
    "Verdict",
    "adjudicate",
    "adjudicate_all",
    "attribution",
    "compare_on_outcome",
    "count_verdicts",
    "greedy_match",
    "parse_hierarchy",
    "parse_pairs",
    "read_pairs",
    "tally",
]
