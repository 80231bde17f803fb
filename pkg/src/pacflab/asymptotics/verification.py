"""
PACFLab Verification Service

Runs named verification scenarios and aggregates their results into
a single report.
"""

from pacflab.asymptotics.models import ScenarioResult, VerificationReport
from pacflab.asymptotics.scenarios import VerificationScenario, default_scenarios
from pacflab.coeffs.models import TruncationPolicy
from pacflab.core.errors import ConfigError, PacflabError
from pacflab.core.logging import LogContext, PacfEvents, get_logger

logger = get_logger(__name__)
events = PacfEvents()


class VerificationService:
    """Service for running verification scenarios."""

    def __init__(self, policy: TruncationPolicy | None = None):
        self._scenarios: dict[str, VerificationScenario] = {
            scenario.name: scenario for scenario in default_scenarios(policy)
        }

    def register(self, scenario: VerificationScenario) -> None:
        self._scenarios[scenario.name] = scenario

    def list_scenarios(self) -> list[str]:
        return list(self._scenarios)

    def evaluate(self, name: str) -> ScenarioResult:
        """
        Evaluate a single scenario.

        Numerical failures inside a scenario mark it failed instead of
        aborting the run.
        """
        scenario = self._scenarios.get(name)
        if scenario is None:
            raise ConfigError(
                f"Unknown scenario {name!r}. Available scenarios: {self.list_scenarios()}",
                scenario=name,
            )
        with LogContext(scenario=name):
            try:
                result = scenario.evaluate()
            except PacflabError as exc:
                logger.error("scenario_failed", error=str(exc), category=exc.category)
                result = ScenarioResult(name=name, passed=False, error=str(exc))
        events.scenario_evaluated(name, result.passed)
        return result

    def run(self, names: list[str] | None = None) -> VerificationReport:
        """Run the given scenarios, or all of them, in registration order."""
        selected = names or self.list_scenarios()
        for name in selected:
            if name not in self._scenarios:
                raise ConfigError(
                    f"Unknown scenario {name!r}. Available scenarios: {self.list_scenarios()}",
                    scenario=name,
                )
        report = VerificationReport(results=[self.evaluate(name) for name in selected])
        logger.info(
            "verification_completed",
            scenarios=len(report.results),
            passed=report.passed,
        )
        return report
