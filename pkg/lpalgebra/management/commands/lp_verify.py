from django.core.management.base import BaseCommand, CommandError


class Command(BaseCommand):
    help = "Run a verification suite and print its report; fails when any check fails"

    def add_arguments(self, parser):
        from lpalgebra.checks import SUITES
        from lpalgebra.utils import add_run_arguments

        parser.add_argument("suite", choices=sorted(SUITES) + ["all"])
        add_run_arguments(parser, formats=("json", "table"))

    def handle(self, *args, **options):
        from lpalgebra.checks import run_suite
        from lpalgebra.utils import DOMAIN_ERRORS, RunConfig, render_report, write_output

        try:
            config = RunConfig.from_options("verify", options)
            report = run_suite(options["suite"], config)
        except DOMAIN_ERRORS as e:
            raise CommandError(str(e))

        write_output(render_report(report, config.format), config.output, self.stdout)
        if not report.passed:
            raise CommandError(
                "Suite {} failed {} of {} checks".format(
                    report.suite, len(report.failures), report.checks
                )
            )
