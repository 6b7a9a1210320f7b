from __future__ import annotations

from dissect.winratio.comparator.records import Arm, MatchedPair, SubjectRecord


def greedy_match(treated: list[SubjectRecord], controls: list[SubjectRecord]) -> list[MatchedPair]:
    """Match treated and control subjects 1:1 on their risk scores.

    Treated subjects are visited in increasing score order, each claiming the unclaimed control with the nearest
    score. Equal distances are broken by the smaller subject id, which makes the result deterministic.
    """
    for record in [*treated, *controls]:
        if record.risk_score is None:
            raise ValueError(f"Subject {record.subject_id} has no risk score")
    for record in treated:
        if record.arm != Arm.TREATMENT:
            raise ValueError(f"Subject {record.subject_id} is not in the treatment arm")
    for record in controls:
        if record.arm != Arm.CONTROL:
            raise ValueError(f"Subject {record.subject_id} is not in the control arm")

    available = sorted(controls, key=lambda record: record.subject_id)
    pairs = []
    for subject in sorted(treated, key=lambda record: (record.risk_score, record.subject_id)):
        if not available:
            break

        match = min(available, key=lambda record: (abs(record.risk_score - subject.risk_score), record.subject_id))
        available.remove(match)
        pairs.append(MatchedPair(subject, match, f"{subject.subject_id}-{match.subject_id}"))

    return pairs
