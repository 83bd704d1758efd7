"""Check reports for the randomized verification harness.

A CheckReport is the outcome of one randomized check: how many trials ran,
how many violated the tolerance, the most negative margin seen, and a digest
of the instance that produced it.  The digest is a sha256 over a canonical
JSON serialization, so two runs with the same seed produce byte-identical
reports, and a failing instance can be re-materialized from the stored
payload (kept on the report object, not in the summary).
"""

from __future__ import annotations

import hashlib
import json
import math
from dataclasses import dataclass, field


def canonical_json(payload) -> str:
    return json.dumps(payload, sort_keys=True, separators=(",", ":"))


def canonical_digest(payload) -> str:
    return hashlib.sha256(canonical_json(payload).encode("utf-8")).hexdigest()


def check_hash(check_id: str) -> int:
    """Stable 32-bit hash of a check id for seed derivation.

    hashlib, not hash(): the builtin is salted per process and would break
    run-to-run determinism.
    """
    digest = hashlib.sha256(check_id.encode("utf-8")).digest()
    return int.from_bytes(digest[:4], "big")


@dataclass
class CheckReport:
    check_id: str
    seed: int
    trials: int
    failures: int
    worst_slack: float
    instance_digest: str
    worst_instance: dict | None = field(default=None, repr=False)

    @property
    def passed(self) -> bool:
        return self.failures == 0

    def summary_row(self) -> dict:
        return {
            "check_id": self.check_id,
            "seed": self.seed,
            "trials": self.trials,
            "failures": self.failures,
            "worst_slack": self.worst_slack,
            "instance_digest": self.instance_digest,
        }


class SlackTracker:
    """Accumulates per-trial slacks for one check.

    Slack is the signed margin of the property under test (negative means
    violated beyond round-off); a trial counts as a failure when its slack
    falls below -tolerance.  The tracker keeps the single worst instance
    payload for the report digest.  NaN slack is treated as a failure with
    slack -inf so it can never hide inside a passing report.
    """

    def __init__(self, tolerance: float):
        if tolerance < 0.0:
            raise ValueError("tolerance must be nonnegative")
        self.tolerance = tolerance
        self.trials = 0
        self.failures = 0
        self.worst_slack = math.inf
        self.worst_payload: dict | None = None

    def add(self, slack: float, payload: dict) -> None:
        slack = float(slack)
        if math.isnan(slack):
            slack = -math.inf
        self.trials += 1
        if slack < -self.tolerance:
            self.failures += 1
        if slack < self.worst_slack:
            self.worst_slack = slack
            self.worst_payload = payload

    def report(self, check_id: str, seed: int) -> CheckReport:
        if self.trials == 0:
            raise ValueError("check ran zero trials")
        payload = self.worst_payload if self.worst_payload is not None else {}
        return CheckReport(
            check_id=check_id,
            seed=seed,
            trials=self.trials,
            failures=self.failures,
            worst_slack=self.worst_slack,
            instance_digest=canonical_digest(payload),
            worst_instance=payload,
        )


def summarize(reports: list[CheckReport]) -> dict:
    rows = [r.summary_row() for r in sorted(reports, key=lambda r: r.check_id)]
    return {"checks": rows, "pass": all(r.failures == 0 for r in reports)}
