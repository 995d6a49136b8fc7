"""
The three searches for 4-chromatic subgraphs of G(Q^3, sqrt t): the greedy
vertex-adding loop, the Grötzsch-type construction around a 5-cycle and the
H-device construction around a symmetric 5-cycle.

Every success is re-verified from its raw points before it is returned.
"""
import logging
import random
from dataclasses import dataclass, field
from itertools import islice, product
from math import isqrt, lcm

try:
    from itertools import batched
except ImportError:  # Python < 3.12
    def batched(iterable, n):
        it = iter(iterable)
        while batch := tuple(islice(it, n)):
            yield batch

from scavenger.core.certificate import (
    Certificate,
    CertificateKind,
    GrotzschTypeGraph,
    verify_certificate,
)
from scavenger.core.cycles import SymCycle, VectorPool, gen_vectors, symmetric_5cycles, validate_5cycle
from scavenger.core.geom import (
    CircleParam,
    apex_points,
    circle_param,
    circle_plane_points,
    equidistant_circle,
    farey_parameters,
    reflect_point,
)
from scavenger.core.graph import (
    AbstractGraph,
    Coloring,
    DistGraph,
    build_graph,
    grotzsch_type_abstract,
    h_device,
    k_colorable,
)
from scavenger.core.numtheory import antipodal_dist_sq, phi_criteria
from scavenger.core.qcore import QPoint3, QVec3, dist_sq, to_rational
from scavenger.errors import (
    CollinearError,
    ConsistencyError,
    DegenerateError,
    EmptyIntersectionError,
    PreconditionError,
)
from scavenger.workers import first_result, parallel_map

logger = logging.getLogger("scavenger")

__all__ = [
    "CandidateSpec",
    "GreedyState",
    "GreedyStep",
    "GreedyResult",
    "greedy_hunt",
    "audit_greedy",
    "farey_parameters",
    "parameter_tuples",
    "grotzsch_type_hunt",
    "grotzsch_subgraph_hunt",
    "h_device_hunt",
]


@dataclass(frozen=True)
class CandidateSpec:
    """Points p with lcm(denominators) * p integral, inside [-box, box]^3."""
    denominators: frozenset = frozenset({1, 3})
    box: int = 10

    @property
    def scale(self) -> int:
        return lcm(*self.denominators)

    def contains(self, p: QPoint3) -> bool:
        return all(abs(c) <= self.box and (c * self.scale).denominator == 1 for c in p)

    def steps(self, t: int) -> tuple[QVec3, ...]:
        """Every vector of squared norm t between two points of the set."""
        divisors = frozenset(k for k in range(1, self.scale + 1) if self.scale % k == 0)
        height = self.scale * (isqrt(t) + 1)
        return gen_vectors(t, divisors, height).vectors


@dataclass(frozen=True)
class GreedyStep:
    point: QPoint3
    neighbours: int
    distinct_colors: int


@dataclass
class GreedyState:
    t: int
    vertices: list
    spec: CandidateSpec
    cap: int = 1000
    edges: list = field(default_factory=list)
    stored_coloring: Coloring | None = None

    def abstract(self) -> AbstractGraph:
        return AbstractGraph(len(self.vertices), tuple(self.edges))

    def candidates(self, steps) -> dict:
        """V_h: candidate point -> indices of its neighbours already placed."""
        placed = set(self.vertices)
        found = {}
        for i, v in enumerate(self.vertices):
            for s in steps:
                p = v + s
                if p in placed or not self.spec.contains(p):
                    continue
                found.setdefault(p, []).append(i)
        return found


@dataclass(frozen=True)
class GreedyResult:
    success: bool
    graph: DistGraph
    coloring: Coloring | None
    history: tuple[GreedyStep, ...]
    reason: str = ""

    @property
    def order(self) -> int:
        return self.graph.order


def _choose(candidates: dict, coloring: Coloring) -> GreedyStep:
    def key(item):
        point, nbrs = item
        return (-len(nbrs), -len({coloring.color(i) for i in nbrs}), point)

    point, nbrs = min(candidates.items(), key=key)
    return GreedyStep(point, len(nbrs), len({coloring.color(i) for i in nbrs}))


def greedy_hunt(t: int, seed, spec: CandidateSpec = CandidateSpec(), cap: int = 1000) -> GreedyResult:
    """
    Grow a distance graph from a 5-cycle until it is not 3-colorable.

    Each round 3-colors the current graph from scratch; the next vertex is
    the candidate with the most neighbours already placed, then the most
    distinct colors among them, then the smallest point.

    Args:
        t (int): A member of T.
        seed (list[QPoint3]): A 5-cycle of G(Q^3, sqrt t).
        spec (CandidateSpec): The candidate set.
        cap (int): Largest number of vertices.

    Returns:
        GreedyResult: success with the final graph, or failure with the
            last coloring.
    """
    t = to_rational(t)
    if t.denominator != 1:
        raise PreconditionError(f"greedy search needs an integer t, got {t}")
    t = t.numerator
    seed = list(seed)
    problems = validate_5cycle(seed, t)
    if problems:
        raise PreconditionError(f"seed is not a 5-cycle: {problems[0]}")
    if cap < 5:
        raise PreconditionError(f"cap must be at least 5, got {cap}")
    outside = [p for p in seed if not spec.contains(p)]
    if outside:
        raise PreconditionError(f"seed point {outside[0]} is outside the candidate set")

    steps = spec.steps(t)
    state = GreedyState(t, seed, spec, cap, [(i, (i + 1) % 5) for i in range(5)])
    history = []
    while True:
        state.stored_coloring = k_colorable(state.abstract(), 3)
        if state.stored_coloring is None:
            graph = build_graph(state.vertices, t)
            if k_colorable(graph, 3) is not None:
                raise ConsistencyError("incremental graph and rebuilt graph disagree")
            logger.info(f"greedy_hunt t={t}: not 3-colorable at order {graph.order}")
            return GreedyResult(True, graph, None, tuple(history))
        if len(state.vertices) >= cap:
            logger.info(f"greedy_hunt t={t}: cap {cap} reached")
            return GreedyResult(False, build_graph(state.vertices, t), state.stored_coloring,
                                tuple(history), f"cap {cap} reached with a proper 3-coloring")
        candidates = state.candidates(steps)
        if not candidates:
            return GreedyResult(False, build_graph(state.vertices, t), state.stored_coloring,
                                tuple(history), "no candidate adjacent to the graph")
        step = _choose(candidates, state.stored_coloring)
        new_index = len(state.vertices)
        state.edges.extend((i, new_index) for i in candidates[step.point])
        state.vertices.append(step.point)
        history.append(step)
        if len(history) % 25 == 0:
            logger.info(f"greedy_hunt t={t}: order {len(state.vertices)}")


def audit_greedy(result: GreedyResult, spec: CandidateSpec, samples: int = 10, seed: int = 0) -> list[str]:
    """
    Recompute sampled rounds of a greedy run and report any round whose
    chosen vertex did not have the most placed neighbours.
    """
    t = int(result.graph.t)
    steps = spec.steps(t)
    rounds = list(range(len(result.history)))
    chosen = sorted(random.Random(seed).sample(rounds, min(samples, len(rounds))))
    problems = []
    for r in chosen:
        prefix = GreedyState(t, list(result.graph.vertices[:5 + r]), spec)
        counts = {p: len(nbrs) for p, nbrs in prefix.candidates(steps).items()}
        step = result.history[r]
        best = max(counts.values(), default=0)
        if counts.get(step.point) != step.neighbours or step.neighbours != best:
            problems.append(f"round {r}: chose {step.point} with {step.neighbours}, best was {best}")
    return problems


def parameter_tuples(count: int, arity: int = 3):
    """Index tuples over range(count), by largest index and then lexicographically."""
    for top in range(count):
        for combo in product(range(top + 1), repeat=arity):
            if max(combo) == top:
                yield combo


def _circle_points(param: CircleParam, parameters, exclude: QPoint3) -> list[QPoint3]:
    points = []
    for s in parameters:
        try:
            p = param.point(s)
        except DegenerateError:
            continue
        if p != exclude and p not in points:
            points.append(p)
    return points


def _apex_search(task):
    """
    Q_i over X_{i-1} on C_{i-1}, Y_i on C_i and Z_{i+1} on C_{i+1}.
    Returns (i, (X, Y, Z, Q) or None, tries).
    """
    i, t, cycle, parameters, max_tries = task
    lists = []
    for j in (i - 1, i, i + 1):
        circle = equidistant_circle(cycle[(j - 1) % 5], cycle[(j + 1) % 5], t)
        param = circle_param(circle, cycle[j % 5])
        lists.append(_circle_points(param, parameters, cycle[j % 5]))
    sizes = [len(points) for points in lists]
    tries = 0
    for a, b, c in islice(parameter_tuples(max(sizes)), max_tries):
        if a >= sizes[0] or b >= sizes[1] or c >= sizes[2]:
            continue
        tries += 1
        x, y, z = lists[0][a], lists[1][b], lists[2][c]
        if len({x, y, z}) < 3:
            continue
        try:
            apexes = apex_points(x, y, z, t)
        except CollinearError:
            continue
        for q in apexes:
            if all(q != v and dist_sq(q, v) != t for v in cycle):
                return i, (x, y, z, q), tries
    return i, None, tries


def grotzsch_type_hunt(t, cycle, parameters=None, max_tries: int = 1_500_000, workers: int = 1):
    """
    Build the order-25 Grötzsch-type graph around a 5-cycle.

    C_i is the circle of points at sqrt t from v_{i-1} and v_{i+1}; it passes
    through v_i, which seeds its parameterization. For each i the search
    looks for circle points X_{i-1}, Y_i, Z_{i+1} with a rational apex Q_i.
    The five searches are independent and run in parallel.

    Args:
        t (int): Squared edge length.
        cycle (list[QPoint3]): The 5-cycle v0..v4.
        parameters (list[Fraction] | None): Circle parameters; Farey order
            of height 12 by default.
        max_tries (int): Triples tried per i.
        workers (int): Processes for the five searches.

    Returns:
        tuple[GrotzschTypeGraph, Certificate] | None
    """
    t = to_rational(t)
    cycle = tuple(cycle)
    problems = validate_5cycle(cycle, t)
    if problems:
        raise PreconditionError(f"not a 5-cycle: {problems[0]}")
    parameters = list(farey_parameters(12) if parameters is None else parameters)
    if not parameters:
        return None

    tasks = [(i, t, cycle, parameters, max_tries) for i in range(5)]
    found = {}
    for i, hit, tries in parallel_map(_apex_search, tasks, workers):
        status = f"Q{i} = {hit[3]}" if hit else "no rational apex"
        logger.info(f"grotzsch_type_hunt t={t}: i={i} after {tries} triples: {status}")
        if hit:
            found[i] = hit
    if len(found) < 5:
        logger.info(f"grotzsch_type_hunt t={t}: {len(found)}/5 apexes found")
        return None

    X, Y, Z, Q = [None] * 5, [None] * 5, [None] * 5, [None] * 5
    for i, (x, y, z, q) in found.items():
        X[(i - 1) % 5], Y[i], Z[(i + 1) % 5], Q[i] = x, y, z, q
    graph = GrotzschTypeGraph(cycle, tuple(X), tuple(Y), tuple(Z), tuple(Q), t)
    extra = graph.apex_problems()
    if extra:
        logger.info(f"grotzsch_type_hunt t={t}: {extra[0]}")
        return None
    cert = Certificate(CertificateKind.GROTZSCH_TYPE, t, graph.points, grotzsch_type_abstract().edges)
    _self_verify(cert)
    return graph, cert


def _self_verify(cert: Certificate) -> None:
    report = verify_certificate(cert)
    if report.failed:
        raise ConsistencyError(f"search produced a certificate that fails verification: {report.lines()[-1]}")


def _partner(sym: SymCycle, near: QPoint3, apex_over) -> QPoint3 | None:
    """Mirror image of `near` when it fits, otherwise an apex over the three given points."""
    mirrored = reflect_point(near, sym.plane)
    if all(dist_sq(mirrored, p) == sym.t for p in apex_over):
        return mirrored
    try:
        apexes = apex_points(*apex_over, sym.t)
    except CollinearError:
        return None
    return apexes.points[0] if apexes.points else None


# Farey pairs handed to one worker at a time
_PAIR_BLOCK = 500


def _pair_block(task):
    """The first (position, certificate) in a block of (y0, y1) parameter pairs."""
    sym, c0, c1, s_circle, pairs = task
    for position, (a, b) in enumerate(pairs):
        try:
            y0, y1 = c0.point(a), c1.point(b)
        except DegenerateError:
            continue
        if y0 in sym.points or y1 in sym.points or y0 == y1:
            continue
        try:
            zs = circle_plane_points(equidistant_circle(y0, y1, sym.t), sym.plane)
        except EmptyIntersectionError:
            continue
        for z in zs:
            cert = _h_certificate(sym, y0, y1, z, s_circle)
            if cert is not None:
                return position, cert
    return None


def grotzsch_subgraph_hunt(t, sym: SymCycle, parameter_pairs=None, height: int = 12, max_pairs: int = 100_000,
                           workers: int = 1):
    """
    Complete a symmetric 5-cycle to the H device.

    y0 runs over C0 (at sqrt t from x4 and x1) and y1 over C1 (from x0 and
    x2). z must be at sqrt t from y0 and y1 and lie on the bisector plane
    of x0, x4. With h = |x2 - z|^2 the certificate closes either directly
    (h meets the closure criteria) or through the circle S of points at
    sqrt t from x1 and x3 when its radius^2 has denominator 2 (mod 4).
    Blocks of parameter pairs run in parallel; the first success in pair
    order wins.

    Returns:
        Certificate | None: An h-device certificate that verifies.
    """
    t = to_rational(t)
    if sym.t != t:
        raise PreconditionError(f"symmetric cycle is for t={sym.t}, not {t}")
    problems = sym.problems()
    if problems:
        raise PreconditionError(f"not a symmetric 5-cycle: {problems[0]}")
    x0, x1, x2, x3, x4 = sym.points

    c0 = circle_param(equidistant_circle(x4, x1, t), x0)
    c1 = circle_param(equidistant_circle(x0, x2, t), x1)
    if parameter_pairs is None:
        values = farey_parameters(height)
        parameter_pairs = ((values[a], values[b]) for a, b in parameter_tuples(len(values), 2))

    s_circle = equidistant_circle(x1, x3, t)
    blocks = batched(islice(parameter_pairs, max_pairs), _PAIR_BLOCK)
    found = first_result(_pair_block, ((sym, c0, c1, s_circle, block) for block in blocks), workers)
    if found is None:
        logger.info(f"grotzsch_subgraph_hunt t={t}: no certificate")
        return None
    block, (position, cert) = found
    tried = block * _PAIR_BLOCK + position + 1
    logger.info(f"grotzsch_subgraph_hunt t={t}: z = {cert.data['z']} after {tried} pairs")
    _self_verify(cert)
    return cert


def h_device_hunt(t, pool: VectorPool, d_bound: int = 100, height: int = 12, max_pairs: int = 100_000,
                  max_cycles: int = 20, workers: int = 1):
    """
    Try successive symmetric 5-cycles until one completes to an H device.

    Args:
        t (int): A member of T.
        pool (VectorPool): Vectors of squared norm t for the x1 search.
        d_bound (int): Largest integer d tried.
        height (int): Farey height of every circle parameter list.
        max_pairs (int): Parameter pairs tried per cycle.
        max_cycles (int): Symmetric cycles tried.
        workers (int): Processes for the pair search.

    Returns:
        tuple[SymCycle, Certificate] | None
    """
    cycles = islice(symmetric_5cycles(t, pool, d_bound, height), max_cycles)
    for n, sym in enumerate(cycles, start=1):
        logger.info(f"h_device_hunt t={t}: cycle {n} with d = {sym.d}, x1 = {sym.x1}, x2 = {sym.x2}")
        cert = grotzsch_subgraph_hunt(t, sym, height=height, max_pairs=max_pairs, workers=workers)
        if cert is not None:
            return sym, cert
    logger.info(f"h_device_hunt t={t}: no certificate from the first {max_cycles} symmetric cycles")
    return None


def _h_certificate(sym: SymCycle, y0: QPoint3, y1: QPoint3, z: QPoint3, s_circle) -> Certificate | None:
    x0, x1, x2, x3, x4 = sym.points
    if z in sym.points or z in (y0, y1):
        return None
    y3 = _partner(sym, y1, (x2, x4, z))
    y4 = _partner(sym, y0, (x3, x0, z))
    if y3 is None or y4 is None:
        return None
    vertices = (x0, x1, x2, x3, x4, y0, y1, y3, y4, z)
    if len(set(vertices)) != 10:
        return None
    h = dist_sq(x2, z)
    data = {"z": str(z), "h": str(h), "d": str(sym.d)}
    if phi_criteria(h):
        data["branch"] = "A"
    else:
        radius_sq = s_circle.radius_sq
        if radius_sq.denominator % 4 != 2:
            return None
        antipodal = antipodal_dist_sq(radius_sq)
        if not phi_criteria(antipodal):
            raise ConsistencyError(f"antipodal squared distance {antipodal} misses the closure criteria")
        data.update(branch="B", center=str(s_circle.center), radius_sq=str(radius_sq), antipodal=str(antipodal))
    return Certificate(CertificateKind.H_DEVICE, sym.t, vertices, h_device().edges, data)
