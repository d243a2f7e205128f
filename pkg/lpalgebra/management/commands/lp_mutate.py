import json

from django.core.management.base import BaseCommand, CommandError


class Command(BaseCommand):
    help = (
        "Apply a mutation sequence such as b,a,c to an LP seed, a double mutation sequence to a "
        "quiver, or a flip sequence to a catalogue surface, and print the result"
    )

    def add_arguments(self, parser):
        from lpalgebra.utils import add_run_arguments

        parser.add_argument("sequence", nargs="?", default="", help="comma separated directions")
        add_run_arguments(parser, formats=("json", "table"))

    def handle(self, *args, **options):
        from lpalgebra.lp import mutate_sequence
        from lpalgebra.quiver import double_mutate
        from lpalgebra.surface import flip, lp_seed_of
        from lpalgebra.utils import (
            DOMAIN_ERRORS,
            RunConfig,
            load_start,
            parse_directions,
            quiver_to_dict,
            seed_to_dict,
            state_to_dict,
            write_output,
        )

        try:
            config = RunConfig.from_options("mutate", options)
            kind, start = load_start(config)
            directions = parse_directions(options["sequence"])
            if kind == "seed":
                seed = mutate_sequence(start, directions)
                data = {"seed": seed_to_dict(seed)}
            elif kind == "quiver":
                quiver = start
                for direction in directions:
                    i = direction if isinstance(direction, int) else _label_index(quiver, direction)
                    quiver = double_mutate(quiver, i)
                data = {"quiver": quiver_to_dict(quiver), "violations": quiver.violations()}
            else:
                state = start
                for direction in directions:
                    state = flip(state, direction)
                seed = lp_seed_of(state)
                data = {"state": state_to_dict(state), "seed": seed_to_dict(seed)}
        except DOMAIN_ERRORS as e:
            raise CommandError(str(e))

        if config.format == "table":
            text = _as_table(data)
        else:
            text = json.dumps(data, indent=2)
        write_output(text, config.output, self.stdout)


def _label_index(quiver, label):
    if label not in quiver.labels:
        raise ValueError("Unknown mutation direction {!r}".format(label))
    return quiver.labels.index(label)


def _as_table(data):
    lines = []
    if "seed" in data:
        seed = data["seed"]
        expressions = seed.get("expressions", {})
        for name, poly in seed["exchange"].items():
            line = "{}: {}".format(name, poly)
            if name in expressions:
                line += "    [{}]".format(expressions[name])
            lines.append(line)
    if "quiver" in data:
        quiver = data["quiver"]
        lines.append(" ".join(quiver["labels"]))
        lines.extend(" ".join("{:>3}".format(x) for x in row) for row in quiver["matrix"])
        lines.extend("violation: {}".format(v) for v in data["violations"])
    return "\n".join(lines)
