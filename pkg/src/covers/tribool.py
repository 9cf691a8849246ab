"""
Three-valued answers for semi-decidable checks.
"""

from dataclasses import dataclass, replace
from enum import Enum
from typing import Any, Iterable


class Verdict(str, Enum):
    YES = "yes"
    NO = "no"
    UNKNOWN = "unknown"


class Scope(str, Enum):
    """EXACT answers hold globally; PROBE answers were verified on probe sets only."""

    EXACT = "exact"
    PROBE = "probe"


@dataclass(frozen=True)
class TriBool:
    verdict: Verdict
    evidence: Any = None
    scope: Scope = Scope.EXACT

    @classmethod
    def yes(cls, evidence: Any = None, scope: Scope = Scope.EXACT) -> "TriBool":
        return cls(Verdict.YES, evidence, scope)

    @classmethod
    def no(cls, evidence: Any = None, scope: Scope = Scope.EXACT) -> "TriBool":
        return cls(Verdict.NO, evidence, scope)

    @classmethod
    def unknown(cls, reason: Any = None) -> "TriBool":
        return cls(Verdict.UNKNOWN, reason, Scope.PROBE)

    @property
    def is_yes(self) -> bool:
        return self.verdict is Verdict.YES

    @property
    def is_no(self) -> bool:
        return self.verdict is Verdict.NO

    @property
    def is_unknown(self) -> bool:
        return self.verdict is Verdict.UNKNOWN

    @classmethod
    def all_of(cls, results: Iterable["TriBool"]) -> "TriBool":
        """Conjunction: first No wins, then Unknown, else Yes with all evidence."""
        evidence = []
        scope = Scope.EXACT
        unknown = None
        for result in results:
            if result.is_no:
                return result
            if result.is_unknown and unknown is None:
                unknown = result
            if result.scope is Scope.PROBE:
                scope = Scope.PROBE
            evidence.append(result.evidence)
        if unknown is not None:
            return unknown
        return cls.yes(evidence, scope)

    def on_probe(self) -> "TriBool":
        """The same answer, claimed on probe sets only."""
        return replace(self, scope=Scope.PROBE)

    def __bool__(self) -> bool:
        return self.is_yes
