import json

from django.core.management.base import BaseCommand, CommandError


class Command(BaseCommand):
    help = (
        "Explore the exchange graph of an LP seed or quiver, or the quasi-flip graph of a "
        "catalogue surface, and write it as JSON or DOT"
    )

    def add_arguments(self, parser):
        from lpalgebra.utils import add_run_arguments

        add_run_arguments(parser)

    def handle(self, *args, **options):
        from lpalgebra.lp import exchange_graph
        from lpalgebra.quiver import lp_seed_of_quiver
        from lpalgebra.surface import quasi_flip_graph
        from lpalgebra.utils import DOMAIN_ERRORS, RunConfig, load_start, write_output

        try:
            config = RunConfig.from_options("explore", options)
            kind, start = load_start(config)
            budget = dict(limit=config.max_nodes, depth=config.depth, jobs=config.jobs)
            if kind == "state":
                graph = quasi_flip_graph(start, **budget)
            elif kind == "quiver":
                graph = exchange_graph(lp_seed_of_quiver(start), **budget)
            else:
                graph = exchange_graph(start, **budget)
        except DOMAIN_ERRORS as e:
            raise CommandError(str(e))

        summary = graph.summary()
        line = "nodes: {nodes}, edges: {edges}, closed: {closed}, violations: {violations}"
        if config.format == "table":
            write_output(line.format(**summary), config.output, self.stdout)
        else:
            if config.format == "dot":
                text = graph.to_dot()
            else:
                text = json.dumps(dict(summary=summary, **graph.to_json()), indent=2)
            write_output(text, config.output, self.stdout)
            self.stderr.write(line.format(**summary))
        if not graph.closed:
            self.stderr.write(self.style.WARNING("Budget exhausted: the graph is partial"))
