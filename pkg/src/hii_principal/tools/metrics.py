"""
Suite Metrics
=============
Pass/fail bookkeeping for the randomized identity sweep. Trials record
one outcome per identity; the tracker keeps counts, the first
counterexample per identity, and renders the summary.
"""

import json
import time
from dataclasses import asdict, dataclass, field
from typing import Any, Dict, List, Optional


PASSED = "passed"
FAILED = "failed"
FLAGGED = "flagged"
SKIPPED = "skipped"

_STATUSES = (PASSED, FAILED, FLAGGED, SKIPPED)


@dataclass
class TrialOutcome:
    """Result of one identity on one random input."""
    identity: str
    status: str
    datum: str
    lattice: str
    trial: int
    detail: str = ""
    context: Dict[str, Any] = field(default_factory=dict)


@dataclass
class IdentityStats:
    """Aggregated counts for one identity."""
    identity: str
    passed: int = 0
    failed: int = 0
    flagged: int = 0
    skipped: int = 0
    first_counterexample: Optional[Dict[str, Any]] = None
    first_flag: Optional[Dict[str, Any]] = None

    @property
    def evaluated(self) -> int:
        return self.passed + self.failed + self.flagged


@dataclass
class SuiteMetrics:
    """Complete summary of a verify run."""
    options: Dict[str, Any] = field(default_factory=dict)
    data_checked: List[str] = field(default_factory=list)
    total_trials: int = 0
    identities: Dict[str, IdentityStats] = field(default_factory=dict)
    total_failures: int = 0
    total_flags: int = 0
    all_passed: bool = True


class SuiteTracker:
    """Collects TrialOutcomes and produces a deterministic summary."""

    def __init__(self, options: Optional[Dict[str, Any]] = None):
        self.suite_metrics = SuiteMetrics(options=dict(options or {}))
        self.start_time = time.time()
        self.duration_seconds = 0.0

    def add_datum(self, label: str):
        self.suite_metrics.data_checked.append(label)

    def record(self, outcome: TrialOutcome) -> IdentityStats:
        """Fold one outcome into the counts."""
        if outcome.status not in _STATUSES:
            raise ValueError(f"unknown status {outcome.status!r}")
        stats = self.suite_metrics.identities.setdefault(
            outcome.identity, IdentityStats(outcome.identity)
        )
        setattr(stats, outcome.status, getattr(stats, outcome.status) + 1)

        example = {
            "datum": outcome.datum,
            "lattice": outcome.lattice,
            "trial": outcome.trial,
            "detail": outcome.detail,
            **outcome.context,
        }
        if outcome.status == FAILED and stats.first_counterexample is None:
            stats.first_counterexample = example
        if outcome.status == FLAGGED and stats.first_flag is None:
            stats.first_flag = example
        return stats

    def record_trial(self, outcomes: List[TrialOutcome]):
        self.suite_metrics.total_trials += 1
        for outcome in outcomes:
            self.record(outcome)

    def finalize(self) -> SuiteMetrics:
        m = self.suite_metrics
        self.duration_seconds = time.time() - self.start_time
        m.total_failures = sum(s.failed for s in m.identities.values())
        m.total_flags = sum(s.flagged for s in m.identities.values())
        m.all_passed = m.total_failures == 0
        return m

    def to_dict(self) -> Dict:
        """Summary as a dictionary; wall-clock time is left out so runs compare equal."""
        data = asdict(self.suite_metrics)
        data["identities"] = {name: data["identities"][name] for name in sorted(data["identities"])}
        return data

    def to_json(self, indent: int = 2) -> str:
        return json.dumps(self.to_dict(), indent=indent, default=str, sort_keys=True)

    def print_summary(self):
        """Print a human-readable summary of the sweep."""
        m = self.suite_metrics

        print("\n" + "=" * 60)
        print("📊 IDENTITY SWEEP SUMMARY")
        print("=" * 60)

        print(f"\n📋 Data: {', '.join(m.data_checked) or '(none)'}")
        print(f"🎲 Trials: {m.total_trials}")
        print(f"🎯 Result: {'PASS' if m.all_passed else 'FAIL'}")

        print(f"\n📈 IDENTITIES:")
        for name in sorted(m.identities):
            s = m.identities[name]
            line = f"   {name}: {s.passed} passed, {s.failed} failed"
            if s.flagged:
                line += f", {s.flagged} flagged"
            if s.skipped:
                line += f", {s.skipped} skipped"
            print(line)

        failing = [s for s in m.identities.values() if s.first_counterexample]
        if failing:
            print(f"\n✗ FIRST COUNTEREXAMPLES:")
            for s in sorted(failing, key=lambda x: x.identity):
                ex = s.first_counterexample
                print(f"   {s.identity}: {ex['datum']} ({ex['lattice']}) trial {ex['trial']}: {ex['detail']}")

        flagged = [s for s in m.identities.values() if s.first_flag]
        if flagged:
            print(f"\n⚠️ FLAGS:")
            for s in sorted(flagged, key=lambda x: x.identity):
                ex = s.first_flag
                print(f"   {s.identity}: first at {ex['datum']} ({ex['lattice']}) trial {ex['trial']}: {ex['detail']}")

        print(f"\n⏱️ TIMING:")
        print(f"   Duration: {self.duration_seconds:.1f}s")
        print("=" * 60)
