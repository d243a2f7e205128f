"""
Built-in triangulated surfaces.

Every entry returns a :class:`~lpalgebra.surface.SurfaceSpec` with a fixed initial triangulation;
:func:`build_catalogue` turns it into an initial state, by default carrying a principal lamination.
"""
from .surface import Edge, ExcludedSurface, InvalidSurface, SurfaceSpec, initial_state


def polygon(k):
    """Disk with ``k`` marked points, fan-triangulated from ``v0``."""
    if k < 4:
        raise ExcludedSurface("A polygon needs at least 4 marked points, got {}".format(k))
    arcs = [Edge("d{}".format(j), "v0", "v{}".format(j)) for j in range(2, k - 1)]
    boundary = [
        Edge("b{}".format(j), "v{}".format(j), "v{}".format((j + 1) % k), boundary=True)
        for j in range(k)
    ]
    triangles = []
    for j in range(1, k - 1):
        first = ("b0", True) if j == 1 else ("d{}".format(j), True)
        last = ("b{}".format(k - 1), True) if j + 1 == k - 1 else ("d{}".format(j + 1), False)
        triangles.append((first, ("b{}".format(j), True), last))
    return SurfaceSpec("polygon({})".format(k), arcs + boundary, triangles)


def annulus(a, b):
    """Annulus with ``a`` outer and ``b`` inner marked points; every arc joins the two sides."""
    if a < 1 or b < 1:
        raise ExcludedSurface("An annulus needs a marked point on each boundary component")
    size = a + b
    boundary = [
        Edge("o{}".format(j), "p{}".format(j), "p{}".format((j + 1) % a), boundary=True)
        for j in range(a)
    ] + [
        Edge("i{}".format(j), "q{}".format(j), "q{}".format((j + 1) % b), boundary=True)
        for j in range(b)
    ]
    ends, triangles = [(0, 0)], []
    p = q = 0
    for t in range(size):
        current, following = "c{}".format(t), "c{}".format((t + 1) % size)
        if t < a:
            triangles.append((("o{}".format(p), True), (following, True), (current, False)))
            p = (p + 1) % a
        else:
            triangles.append(((current, True), ("i{}".format(q), True), (following, False)))
            q = (q + 1) % b
        ends.append((p, q))
    arcs = [
        Edge("c{}".format(t), "p{}".format(ends[t][0]), "q{}".format(ends[t][1]))
        for t in range(size)
    ]
    return SurfaceSpec("annulus({},{})".format(a, b), arcs + boundary, triangles)


def mobius(k):
    """
    Möbius band with ``k + 1`` marked points on its boundary: ``P``, ``Q`` and ``k - 1`` points
    ``B1 .. B(k-1)`` between them. The triangulation is a fan at ``P``; the loop ``d`` crosses the
    cross-cap.
    """
    if k < 1:
        raise ExcludedSurface("The Möbius band needs at least 2 marked points")
    r = k - 1
    arcs = [Edge("e", "P", "Q"), Edge("d", "P", "P", parity=-1)]
    if r == 0:
        boundary = [
            Edge("b1", "P", "Q", parity=-1, boundary=True),
            Edge("b2", "Q", "P", parity=-1, boundary=True),
        ]
        triangles = [
            (("b1", True), ("e", False), ("d", True)),
            (("d", True), ("e", True), ("b2", True)),
        ]
        return SurfaceSpec("mobius(1)", arcs + boundary, triangles)

    arcs.append(Edge("f", "P", "Q", parity=-1))
    arcs.extend(Edge("g{}".format(j), "P", "B{}".format(j)) for j in range(2, r + 1))
    boundary = [Edge("b1", "P", "B1", boundary=True)]
    boundary.extend(
        Edge("b{}".format(j + 1), "B{}".format(j), "B{}".format(j + 1), boundary=True)
        for j in range(1, r)
    )
    boundary.append(Edge("b{}".format(r + 1), "B{}".format(r), "Q", parity=-1, boundary=True))
    boundary.append(Edge("b{}".format(r + 2), "Q", "P", parity=-1, boundary=True))

    def radial(j):
        return "b1" if j == 1 else "g{}".format(j)

    triangles = [
        ((radial(j), True), ("b{}".format(j + 1), True), (radial(j + 1), False))
        for j in range(1, r)
    ]
    triangles.append(((radial(r), True), ("b{}".format(r + 1), True), ("f", False)))
    triangles.append((("f", True), ("e", False), ("d", True)))
    triangles.append((("d", True), ("e", True), ("b{}".format(r + 2), True)))
    return SurfaceSpec("mobius({})".format(k), arcs + boundary, triangles)


def punctured_disk(k):
    """Once-punctured disk with ``k`` boundary marked points, star-triangulated at the puncture."""
    if k < 2:
        raise ExcludedSurface("The once-punctured monogon is excluded")
    arcs = [Edge("s{}".format(j), "v{}".format(j), "c") for j in range(k)]
    boundary = [
        Edge("b{}".format(j), "v{}".format(j), "v{}".format((j + 1) % k), boundary=True)
        for j in range(k)
    ]
    triangles = [
        (("b{}".format(j), True), ("s{}".format((j + 1) % k), True), ("s{}".format(j), False))
        for j in range(k)
    ]
    return SurfaceSpec("punctured-disk({})".format(k), arcs + boundary, triangles, punctures=("c",))


CATALOGUE = {
    "polygon": (polygon, ("k",)),
    "annulus": (annulus, ("a", "b")),
    "mobius": (mobius, ("k",)),
    "punctured-disk": (punctured_disk, ("k",)),
}


def _int_param(params, key):
    if key not in params:
        raise InvalidSurface("Missing parameter {}".format(key))
    try:
        return int(params[key])
    except (TypeError, ValueError):
        raise InvalidSurface("Parameter {} should be an integer, got {!r}".format(key, params[key]))


def surface_spec(name, params):
    if name not in CATALOGUE:
        raise InvalidSurface(
            "Unknown surface {!r}, choose from {}".format(name, ", ".join(sorted(CATALOGUE)))
        )
    builder, keys = CATALOGUE[name]
    return builder(*(_int_param(params, key) for key in keys))


def build_catalogue(name, params=None):
    """
    Initial state of a catalogue surface.

    Besides the surface parameters, ``params`` may carry ``lamination`` (``principal`` or
    ``none``) and ``sign`` (``1`` or ``-1``).
    """
    params = dict(params or {})
    lamination = params.pop("lamination", "principal")
    if lamination not in ("principal", "none"):
        raise InvalidSurface("lamination should be principal or none, got {!r}".format(lamination))
    sign = params.pop("sign", None)
    spec = surface_spec(name, params)
    signs = None if sign is None else _int_param({"sign": sign}, "sign")
    return initial_state(spec, lamination=lamination == "principal", signs=signs)
