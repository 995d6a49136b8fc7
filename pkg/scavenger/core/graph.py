"""
Distance graphs and abstract graphs: exact k-colorability, chromatic
number, triangle-freeness, critical reduction and forced color relations.
"""
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations

from scavenger.core.qcore import QPoint3, dist_sq, to_rational
from scavenger.errors import PreconditionError

logger = logging.getLogger("scavenger")


class _Graph:
    """Shared adjacency helpers; subclasses provide `order` and `edges`."""

    @cached_property
    def adjacency(self) -> tuple[frozenset, ...]:
        neighbours = [set() for _ in range(self.order)]
        for u, v in self.edges:
            neighbours[u].add(v)
            neighbours[v].add(u)
        return tuple(frozenset(n) for n in neighbours)

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adjacency[u]


@dataclass(frozen=True)
class AbstractGraph(_Graph):
    order: int
    edges: tuple[tuple[int, int], ...]
    labels: tuple[str, ...] = field(default=())

    def __post_init__(self):
        cleaned = set()
        for u, v in self.edges:
            if u == v:
                raise PreconditionError(f"loop at vertex {u}")
            if not (0 <= u < self.order and 0 <= v < self.order):
                raise PreconditionError(f"edge ({u}, {v}) outside 0..{self.order - 1}")
            cleaned.add((min(u, v), max(u, v)))
        object.__setattr__(self, "edges", tuple(sorted(cleaned)))
        if not self.labels:
            object.__setattr__(self, "labels", tuple(str(i) for i in range(self.order)))

    def induced(self, indices) -> "AbstractGraph":
        indices = list(indices)
        position = {v: i for i, v in enumerate(indices)}
        edges = [(position[u], position[v]) for u, v in self.edges if u in position and v in position]
        return AbstractGraph(len(indices), tuple(edges), tuple(self.labels[i] for i in indices))

    def index(self, label: str) -> int:
        return self.labels.index(label)


@dataclass(frozen=True)
class DistGraph(_Graph):
    """Points of Q^3 joined when their squared distance is exactly t."""
    vertices: tuple[QPoint3, ...]
    t: Fraction
    edges: tuple[tuple[int, int], ...]
    duplicates: int = 0

    @property
    def order(self) -> int:
        return len(self.vertices)

    def induced(self, indices) -> "DistGraph":
        return build_graph([self.vertices[i] for i in indices], self.t)

    def to_abstract(self) -> AbstractGraph:
        return AbstractGraph(self.order, self.edges)

    def adjacency_problems(self) -> list[str]:
        """Full rescan: every stored edge and every non-edge against the predicate."""
        stored = set(self.edges)
        problems = []
        for u, v in combinations(range(self.order), 2):
            adjacent = dist_sq(self.vertices[u], self.vertices[v]) == self.t
            if adjacent != ((u, v) in stored):
                problems.append(f"pair ({u}, {v}) stored={((u, v) in stored)} actual={adjacent}")
        return problems


@dataclass(frozen=True)
class Coloring:
    assignment: tuple[int, ...]

    def color(self, v: int) -> int:
        return self.assignment[v]

    def is_proper(self, g) -> bool:
        return all(self.assignment[u] != self.assignment[v] for u, v in g.edges)

    @property
    def colors_used(self) -> int:
        return len(set(self.assignment))


def build_graph(points, t) -> DistGraph:
    """
    Distance graph on the given points; repeated points are merged.
    """
    t = to_rational(t)
    if t <= 0:
        raise PreconditionError(f"squared distance must be positive, got {t}")
    points = list(points)
    if not points:
        raise PreconditionError("cannot build a graph on no points")
    seen = set()
    vertices = []
    for p in points:
        if p in seen:
            continue
        seen.add(p)
        vertices.append(p)
    duplicates = len(points) - len(vertices)
    if duplicates:
        logger.warning(f"merged {duplicates} duplicate point(s)")
    edges = tuple(
        (u, v) for u, v in combinations(range(len(vertices)), 2)
        if dist_sq(vertices[u], vertices[v]) == t
    )
    return DistGraph(tuple(vertices), t, edges, duplicates)


def k_colorable(g, k: int) -> Coloring | None:
    """
    A proper coloring with colors 0..k-1, or None when none exists.

    Exact backtracking. The next vertex is the uncolored one with the most
    distinct neighbour colors, then the highest degree, then the lowest
    index. A vertex may only open one new color beyond those in use, which
    fixes the first vertex to 0 and its first neighbour to 1.
    """
    if k < 1:
        raise PreconditionError(f"k must be positive, got {k}")
    n = g.order
    adj = g.adjacency
    if n == 0:
        return Coloring(())
    colors = [-1] * n

    def pick():
        best, best_key = None, None
        for v in range(n):
            if colors[v] >= 0:
                continue
            saturation = len({colors[u] for u in adj[v] if colors[u] >= 0})
            key = (saturation, len(adj[v]), -v)
            if best_key is None or key > best_key:
                best, best_key = v, key
        return best

    def candidates(v):
        forbidden = {colors[u] for u in adj[v]}
        ceiling = min(k, max(colors) + 2)
        return [c for c in range(ceiling) if c not in forbidden]

    first = pick()
    stack = [[first, candidates(first), 0]]
    while stack:
        frame = stack[-1]
        v, options, pos = frame
        if pos == len(options):
            colors[v] = -1
            stack.pop()
            continue
        colors[v] = options[pos]
        frame[2] += 1
        if len(stack) == n:
            return Coloring(tuple(colors))
        nxt = pick()
        stack.append([nxt, candidates(nxt), 0])
    return None


def chromatic_number(g) -> int:
    k = 1
    while k_colorable(g, k) is None:
        k += 1
    return k


def is_triangle_free(g) -> bool:
    adj = g.adjacency
    return all(not (adj[u] & adj[v]) for u, v in g.edges)


def critical_reduce(g, k: int):
    """
    Delete vertices (ascending index, restarting after each deletion) while
    the chromatic number stays k. The result is vertex-k-critical.
    """
    if chromatic_number(g) != k:
        raise PreconditionError(f"graph does not have chromatic number {k}")
    keep = list(range(g.order))
    changed = True
    while changed:
        changed = False
        for pos in range(len(keep)):
            trial = keep[:pos] + keep[pos + 1:]
            if k_colorable(g.induced(trial), k - 1) is None:
                logger.debug(f"critical_reduce: dropped vertex {keep[pos]}")
                keep = trial
                changed = True
                break
    return g.induced(keep)


def all_colorings(g, k: int):
    """Every proper k-coloring with vertex 0 colored 0 (colors up to that symmetry)."""
    n = g.order
    adj = g.adjacency
    colors = [-1] * n

    def extend(v):
        if v == n:
            yield tuple(colors)
            return
        choices = [0] if v == 0 else range(k)
        for c in choices:
            if all(colors[u] != c for u in adj[v] if u < v):
                colors[v] = c
                yield from extend(v + 1)
        colors[v] = -1

    yield from extend(0)


def forced_relations(g, k: int, max_order: int = 20) -> tuple[set, set]:
    """
    Vertex pairs colored alike in every proper k-coloring, and pairs
    colored differently in every one.
    """
    if g.order > max_order:
        raise PreconditionError(f"order {g.order} exceeds the enumeration bound {max_order}")
    pairs = list(combinations(range(g.order), 2))
    same, different = set(pairs), set(pairs)
    count = 0
    for coloring in all_colorings(g, k):
        count += 1
        for u, v in pairs:
            if coloring[u] == coloring[v]:
                different.discard((u, v))
            else:
                same.discard((u, v))
    if count == 0:
        raise PreconditionError(f"graph is not {k}-colorable")
    logger.debug(f"forced_relations: {count} colorings enumerated")
    return same, different


def mod3_color(p) -> int:
    """The coloring x + y + z (mod 3) of the integer lattice."""
    coords = list(p)
    if any(Fraction(c).denominator != 1 for c in coords):
        raise PreconditionError(f"{p} is not an integer point")
    return int(sum(coords)) % 3


GROTZSCH_LABELS = tuple([f"x{i}" for i in range(5)] + [f"y{i}" for i in range(5)] + ["z"])


def grotzsch_graph() -> AbstractGraph:
    """Outer cycle x0..x4, y_i joined to x_{i-1} and x_{i+1}, z joined to every y_i."""
    edges = []
    for i in range(5):
        edges.append((i, (i + 1) % 5))
        edges.append((5 + i, (i - 1) % 5))
        edges.append((5 + i, (i + 1) % 5))
        edges.append((10, 5 + i))
    return AbstractGraph(11, tuple(edges), GROTZSCH_LABELS)


def h_device() -> AbstractGraph:
    """The Grötzsch graph without y2: x0..x4, y0, y1, y3, y4, z."""
    g = grotzsch_graph()
    return g.induced([i for i in range(11) if g.labels[i] != "y2"])


GROTZSCH_TYPE_LABELS = tuple(f"{name}{i}" for name in "vXYZQ" for i in range(5))


def grotzsch_type_abstract() -> AbstractGraph:
    """
    Order 25: cycle v0..v4; X_i, Y_i, Z_i joined to v_{i-1} and v_{i+1};
    Q_i joined to X_{i-1}, Y_i and Z_{i+1}. Vertex order v, X, Y, Z, Q.
    """
    edges = []
    for i in range(5):
        edges.append((i, (i + 1) % 5))
        for block in (5, 10, 15):
            edges.append((block + i, (i - 1) % 5))
            edges.append((block + i, (i + 1) % 5))
        edges.append((20 + i, 5 + (i - 1) % 5))
        edges.append((20 + i, 10 + i))
        edges.append((20 + i, 15 + (i + 1) % 5))
    return AbstractGraph(25, tuple(edges), GROTZSCH_TYPE_LABELS)
