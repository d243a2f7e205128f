import logging
from dataclasses import dataclass, field

logger = logging.getLogger(__name__)


@dataclass
class Report:
    """Pass/fail bookkeeping shared by every verification routine."""

    suite: str
    rand_seed: object = None
    checks: int = 0
    failures: list = field(default_factory=list)

    def check(self, name, ok, path=(), detail=""):
        self.checks += 1
        if not ok:
            logger.warning("%s: check %s failed at %s: %s", self.suite, name, list(path), detail)
            self.failures.append({"check": name, "path": list(path), "detail": str(detail)})
        return ok

    def merge(self, other):
        self.checks += other.checks
        self.failures.extend(other.failures)
        return self

    @property
    def passed(self):
        return not self.failures

    def as_dict(self):
        return {
            "suite": self.suite,
            "rand_seed": self.rand_seed,
            "checks": self.checks,
            "failures": list(self.failures),
            "passed": self.passed,
        }
