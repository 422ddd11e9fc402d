"""Verify command: run every numerical oracle at a config's parameters."""

from typing import Any

from stochimpact_cli.cli.commands import ExperimentCommand
from stochimpact_cli.cli.constants import EXIT_FAILURE, EXIT_SUCCESS, VERIFY_FILE
from stochimpact_cli.src.engine.reporting import verification_payload, write_json
from stochimpact_cli.src.engine.verify import run_suite


class VerifyCommand(ExperimentCommand):
    """Write ``verify.json``; exit 1 when any applicable check misses its tolerance."""

    def execute(self, config: str | None = None, out: str | None = None, **kwargs: Any) -> int:
        try:
            self.output.print_banner("Verify", "Closed forms against independent oracles")
            experiment, out_dir = self.load_experiment(config, out=out)
            reports = run_suite(
                experiment.build_model(), experiment.build_penalties(), experiment.build_init()
            )
            payload = verification_payload(reports)
            write_json(out_dir / VERIFY_FILE, payload)

            self.output.print_table(
                ["check", "max rel", "tolerance", "status"],
                [
                    [
                        r.name if not r.grid else f"{r.name} [{r.grid}]",
                        r.max_rel if r.applicable else None,
                        r.tolerance if r.applicable else None,
                        _status(r.applicable, r.passed),
                    ]
                    for r in reports
                ],
            )

            if not payload["passed"]:
                self.output.error(f"Failed checks: {', '.join(payload['failed'])}")
                return EXIT_FAILURE
            self.output.success(f"All applicable checks passed; wrote {out_dir / VERIFY_FILE}")
            return EXIT_SUCCESS

        except Exception as e:
            return self.handle_error(e)


def _status(applicable: bool, passed: bool) -> str:
    if not applicable:
        return "n/a"
    return "PASS" if passed else "FAIL"
