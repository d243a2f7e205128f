"""
Reading and writing seeds, quivers and states, and the run configuration shared by the
management commands.
"""
import json
from dataclasses import dataclass, field

import numpy as np

from .catalogue import build_catalogue
from .conf import get_lpalgebra_setting
from .laurent import (
    BOUNDARY,
    CLUSTER,
    IRREDUCIBLE,
    LAMINATION,
    LaurentPoly,
    VariableTable,
    parse,
)
from .lp import InvalidSeed, make_seed
from .quiver import AntiSymQuiver, InvalidQuiver
from .surface import OneSided, QuasiTriState

FORMATS = ("json", "dot", "table")

# what the commands turn into CommandError
DOMAIN_ERRORS = (ValueError, ArithmeticError, IndexError)


@dataclass
class RunConfig:
    """Options of one command run, with the ``LPALGEBRA_*`` settings filling the gaps."""

    command: str
    seed_file: str = None
    quiver_file: str = None
    surface: str = None
    params: dict = field(default_factory=dict)
    depth: int = None
    max_nodes: int = None
    format: str = "json"
    jobs: int = None
    rand_seed: int = None
    output: str = None

    def __post_init__(self):
        if self.max_nodes is None:
            self.max_nodes = get_lpalgebra_setting("LPALGEBRA_MAX_NODES")
        if self.depth is None:
            self.depth = get_lpalgebra_setting("LPALGEBRA_MAX_DEPTH")
        if self.jobs is None:
            self.jobs = get_lpalgebra_setting("LPALGEBRA_JOBS")
        if self.rand_seed is None:
            self.rand_seed = get_lpalgebra_setting("LPALGEBRA_RANDOM_SEED")
        for name in ("max_nodes", "depth", "jobs"):
            value = getattr(self, name)
            if value is not None and value < 1:
                option = "--" + name.replace("_", "-")
                raise ValueError("{} should be positive, got {}".format(option, value))
        if self.format not in FORMATS:
            raise ValueError(
                "Unknown format {!r}, choose from {}".format(self.format, ", ".join(FORMATS))
            )
        sources = [s for s in (self.seed_file, self.quiver_file, self.surface) if s]
        if len(sources) > 1:
            raise ValueError("Give at most one of --seed-file, --quiver-file and --surface")

    @classmethod
    def from_options(cls, command, options):
        return cls(
            command=command,
            seed_file=options.get("seed_file"),
            quiver_file=options.get("quiver_file"),
            surface=options.get("surface"),
            params=parse_params(options.get("params") or ()),
            depth=options.get("depth"),
            max_nodes=options.get("max_nodes"),
            format=options.get("format") or "json",
            jobs=options.get("jobs"),
            rand_seed=options.get("rand_seed"),
            output=options.get("output"),
        )


def parse_params(items):
    """``["k=6", "lamination=none"]`` -> ``{"k": "6", "lamination": "none"}``."""
    params = {}
    for item in items:
        key, sep, value = item.partition("=")
        if not sep or not key.strip():
            raise ValueError("Parameters look like KEY=VALUE, got {!r}".format(item))
        params[key.strip()] = value.strip()
    return params


def load_json(path):
    try:
        with open(path, encoding="utf-8") as f:
            return json.load(f)
    except OSError as e:
        raise ValueError("Cannot read {}: {}".format(path, e.strerror)) from None
    except json.JSONDecodeError as e:
        raise ValueError("{} is not valid JSON: {}".format(path, e)) from None


def _table_from_dict(data):
    if "variables" in data:
        return VariableTable(tuple(tuple(item) for item in data["variables"]))
    return VariableTable.build(
        data.get("cluster", ()), data.get("frozen", ()), data.get("lamination", ())
    )


def _table_to_dict(table):
    return {
        "cluster": [name for name, role in table.variables if role == CLUSTER],
        "frozen": [name for name, role in table.variables if role == BOUNDARY],
        "lamination": [name for name, role in table.variables if role == LAMINATION],
    }


def seed_from_dict(data):
    """
    Build a seed from its JSON form::

        {"cluster": ["a", "b"], "frozen": ["X"], "exchange": {"a": "1 + X*b", "b": "1 + a"}}

    ``lamination`` lists lamination-frozen variables. A mutated seed also carries ``initial``
    (the initial cluster names) and ``expressions`` (one Laurent polynomial per current cluster
    variable, written in the initial variables).
    """
    if not isinstance(data, dict) or "exchange" not in data:
        raise InvalidSeed("A seed file needs 'cluster' and 'exchange' entries")
    table = _table_from_dict(data)
    cluster = table.names[: len(table.cluster_positions)]
    exchange = data["exchange"]
    if set(exchange) != set(cluster):
        raise InvalidSeed(
            "Exchange polynomials are given for {}, expected {}".format(
                ", ".join(sorted(exchange)), ", ".join(cluster)
            )
        )
    polys = [parse(str(exchange[name]), table) for name in cluster]

    initial, expressions = table, None
    if "initial" in data:
        initial = VariableTable(
            tuple(zip(data["initial"], (CLUSTER,) * len(data["initial"])))
            + table.variables[len(cluster) :]
        )
        given = data.get("expressions", {})
        if set(given) != set(cluster):
            raise InvalidSeed("Expected one expression per cluster variable")
        expressions = [parse(str(given[name]), initial) for name in cluster]
    return make_seed(table, polys, initial=initial, expressions=expressions)


def seed_to_dict(seed):
    data = _table_to_dict(seed.table)
    data["exchange"] = {name: str(F) for name, F in zip(seed.cluster_names, seed.exchange)}
    initial_variables = tuple(
        LaurentPoly.variable(seed.initial, name) for name in seed.initial.names[: seed.n]
    )
    if seed.expressions != initial_variables:
        data["initial"] = list(seed.initial.names[: seed.n])
        data["expressions"] = {
            name: str(expression) for name, expression in zip(seed.cluster_names, seed.expressions)
        }
    invalid = [
        name for name, verdict in zip(seed.cluster_names, seed.verdicts) if verdict != IRREDUCIBLE
    ]
    if invalid:
        data["verdicts"] = dict(zip(seed.cluster_names, seed.verdicts))
    return data


def quiver_from_dict(data, strict=True):
    """
    ``{"labels": [...], "roles": [...], "matrix": [[...], ...]}``, with ``2m`` rows for ``m``
    labels. With ``strict`` a matrix that is not anti-symmetric is rejected.
    """
    try:
        labels, roles, matrix = data["labels"], data["roles"], data["matrix"]
    except (KeyError, TypeError):
        raise InvalidQuiver("A quiver file needs 'labels', 'roles' and 'matrix' entries") from None
    quiver = AntiSymQuiver(tuple(labels), tuple(roles), np.array(matrix, dtype=np.int64))
    problems = quiver.violations() if strict else ()
    if problems:
        raise InvalidQuiver("Invalid quiver: {}".format("; ".join(problems)))
    return quiver


def quiver_to_dict(quiver):
    return {
        "labels": list(quiver.labels),
        "roles": list(quiver.roles),
        "matrix": quiver.matrix.tolist(),
    }


def state_to_dict(state):
    data = quiver_to_dict(state.quiver)
    data["surface"] = state.surface
    data["initial"] = [list(item) for item in state.initial.variables]
    data["lengths"] = [str(length) for length in state.lengths]
    data["onesided"] = [[r.alpha, r.beta, r.alphastar] for r in state.onesided]
    return data


def state_from_dict(data):
    quiver = quiver_from_dict(data, strict=False)
    initial = VariableTable(tuple(tuple(item) for item in data["initial"]))
    lengths = tuple(parse(text, initial) for text in data["lengths"])
    if len(lengths) != quiver.n:
        raise InvalidQuiver("Expected {} lambda lengths, got {}".format(quiver.n, len(lengths)))
    onesided = tuple(OneSided(*record) for record in data.get("onesided", ()))
    return QuasiTriState(quiver, initial, lengths, onesided, data.get("surface", ""))


def render_report(report, format="json"):
    """A report dict as indented JSON, or as a plain-text table of its failures."""
    data = report if isinstance(report, dict) else report.as_dict()
    if format != "table":
        return json.dumps(data, indent=2, default=str)
    lines = [
        "suite      {}".format(data["suite"]),
        "rand_seed  {}".format(data["rand_seed"]),
        "checks     {}".format(data["checks"]),
        "failures   {}".format(len(data["failures"])),
        "passed     {}".format("yes" if data["passed"] else "no"),
    ]
    if data["failures"]:
        width = max(len(failure["check"]) for failure in data["failures"])
        lines.append("")
        for failure in data["failures"]:
            path = ",".join(str(step) for step in failure["path"]) or "-"
            lines.append(
                "{}  {}  {}".format(failure["check"].ljust(width), path, failure["detail"])
            )
    return "\n".join(lines)


def add_run_arguments(parser, formats=FORMATS):
    """The input, budget and output options shared by the ``lp_*`` management commands."""
    source = parser.add_mutually_exclusive_group()
    source.add_argument("--seed-file", help="LP seed in JSON form")
    source.add_argument("--quiver-file", help="anti-symmetric quiver in JSON form")
    source.add_argument(
        "--surface", help="catalogue surface: polygon, annulus, mobius or punctured-disk"
    )
    parser.add_argument(
        "--params",
        nargs="+",
        default=[],
        metavar="KEY=VALUE",
        help="surface parameters, for example k=6 lamination=none",
    )
    parser.add_argument("--depth", type=int, help="maximal exploration depth")
    parser.add_argument("--max-nodes", type=int, help="maximal number of explored nodes")
    parser.add_argument("--format", choices=formats, default=formats[0])
    parser.add_argument("--jobs", type=int, help="worker processes for graph exploration")
    parser.add_argument("--rand-seed", type=int, help="seed of the random property suites")
    parser.add_argument("--output", help="write the result to this file instead of stdout")


def load_start(config):
    """
    The object a command starts from: ``("seed", LPSeed)``, ``("quiver", AntiSymQuiver)`` or
    ``("state", QuasiTriState)``.
    """
    if config.seed_file:
        return "seed", seed_from_dict(load_json(config.seed_file))
    if config.quiver_file:
        return "quiver", quiver_from_dict(load_json(config.quiver_file))
    if config.surface:
        return "state", build_catalogue(config.surface, config.params)
    raise ValueError("Give one of --seed-file, --quiver-file or --surface")


def parse_directions(text):
    """``"b,a,2"`` -> ``["b", "a", 2]``; blank items are ignored."""
    items = [item.strip() for item in (text or "").split(",")]
    return [int(item) if item.isdigit() else item for item in items if item]


def write_output(text, path=None, stdout=None):
    if path:
        with open(path, "w", encoding="utf-8") as f:
            f.write(text if text.endswith("\n") else text + "\n")
    else:
        stdout.write(text)
