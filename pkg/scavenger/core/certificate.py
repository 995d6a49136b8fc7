"""
Certificates of 4-chromatic subgraphs, their text format and the verifier.

A certificate is checked from its raw point list alone; nothing from the
search that produced it is trusted.

    certificate <kind> t=<int>
    [vertices]
    x y z
    [edges]
    u v
    [data]
    key=value
"""
import logging
import re
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction

from scavenger.core.cycles import SymCycle, validate_5cycle
from scavenger.core.geom import bisector_plane, equidistant_circle
from scavenger.core.graph import (
    build_graph,
    chromatic_number,
    forced_relations,
    grotzsch_type_abstract,
    h_device,
    is_triangle_free,
    k_colorable,
)
from scavenger.core.numtheory import antipodal_dist_sq, construct_chain, in_T, phi_criteria, rational_three_squares
from scavenger.core.qcore import QPoint3, QVec3, dist_sq, midpoint, parse_point, parse_rational
from scavenger.errors import (
    CertificateFormatError,
    ChainError,
    ConsistencyError,
    EmptyIntersectionError,
    ParseError,
    PreconditionError,
)

logger = logging.getLogger("scavenger")

PASS, FAIL, WARN = "PASS", "FAIL", "WARN"

_HEADER_RE = re.compile(r"^certificate (\S+) t=(\S+)$")
_SECTIONS = ("vertices", "edges", "data")


class CertificateKind(Enum):
    DIRECT = "direct-chromatic"
    GROTZSCH_TYPE = "grotzsch-type-structural"
    H_DEVICE = "h-device"


@dataclass(frozen=True)
class Certificate:
    kind: CertificateKind
    t: Fraction
    vertices: tuple[QPoint3, ...]
    edges: tuple[tuple[int, int], ...] = ()
    data: dict = field(default_factory=dict)


@dataclass(frozen=True)
class Check:
    name: str
    status: str
    detail: str = ""

    def __str__(self):
        return f"CHECK {self.name} {self.status} {self.detail}".rstrip()


@dataclass
class Report:
    kind: CertificateKind
    t: Fraction
    checks: list = field(default_factory=list)
    summary: str = ""

    def add(self, name: str, status: str, detail: str = "") -> Check:
        check = Check(name, status, detail)
        self.checks.append(check)
        if status == FAIL:
            logger.warning(f"{self.kind.value} t={self.t}: {check}")
        return check

    @property
    def failed(self) -> bool:
        return any(c.status == FAIL for c in self.checks)

    @property
    def warned(self) -> bool:
        return any(c.status == WARN for c in self.checks)

    @property
    def exit_code(self) -> int:
        if self.failed:
            return 1
        return 2 if self.warned else 0

    def lines(self) -> list[str]:
        status = FAIL if self.failed else PASS
        result = f"RESULT {status} {self.summary}".rstrip()
        return [str(c) for c in self.checks] + [result]


@dataclass(frozen=True)
class GrotzschTypeGraph:
    """Points of the order-25 graph, grouped as v, X, Y, Z, Q (five each)."""
    v: tuple[QPoint3, ...]
    X: tuple[QPoint3, ...]
    Y: tuple[QPoint3, ...]
    Z: tuple[QPoint3, ...]
    Q: tuple[QPoint3, ...]
    t: Fraction

    @classmethod
    def from_points(cls, points, t) -> "GrotzschTypeGraph":
        points = tuple(points)
        if len(points) != 25:
            raise PreconditionError(f"a Grötzsch-type graph has 25 points, got {len(points)}")
        return cls(*(points[5 * b:5 * b + 5] for b in range(5)), Fraction(t))

    @property
    def points(self) -> tuple[QPoint3, ...]:
        return self.v + self.X + self.Y + self.Z + self.Q

    def circle_problems(self) -> list[str]:
        """Each X_i, Y_i, Z_i must be at sqrt t from v_{i-1} and v_{i+1}."""
        found = []
        for i in range(5):
            try:
                circle = equidistant_circle(self.v[i - 1], self.v[(i + 1) % 5], self.t)
            except EmptyIntersectionError:
                found.append(f"circle C{i} is empty")
                continue
            for name, group in (("X", self.X), ("Y", self.Y), ("Z", self.Z)):
                if not circle.contains(group[i]):
                    found.append(f"{name}{i} is off C{i}")
        return found

    def edge_problems(self) -> list[str]:
        shape = grotzsch_type_abstract()
        points = self.points
        found = []
        for u, w in shape.edges:
            d = dist_sq(points[u], points[w])
            if d != self.t:
                found.append(f"{shape.labels[u]}-{shape.labels[w]} has squared distance {d}")
        return found

    def apex_problems(self) -> list[str]:
        """Among v, X, Y, Z each Q_i must meet exactly X_{i-1}, Y_i and Z_{i+1}."""
        labels = grotzsch_type_abstract().labels
        structure = {}
        for label, p in zip(labels, self.v + self.X + self.Y + self.Z):
            structure.setdefault(p, label)
        found = []
        for i, q in enumerate(self.Q):
            expected = {self.X[i - 1], self.Y[i], self.Z[(i + 1) % 5]}
            for p, label in structure.items():
                if p not in expected and dist_sq(p, q) == self.t:
                    found.append(f"Q{i} is also adjacent to {label}")
        return found

    def coincidences(self) -> list[str]:
        labels = grotzsch_type_abstract().labels
        first = {}
        found = []
        for label, p in zip(labels, self.points):
            if p in first:
                found.append(f"{label} = {first[p]}")
            else:
                first[p] = label
        return found


def dumps(cert: Certificate) -> str:
    lines = [f"certificate {cert.kind.value} t={cert.t}", "[vertices]"]
    lines += [str(p) for p in cert.vertices]
    if cert.edges:
        lines.append("[edges]")
        lines += [f"{u} {v}" for u, v in cert.edges]
    if cert.data:
        lines.append("[data]")
        lines += [f"{key}={value}" for key, value in cert.data.items()]
    return "\n".join(lines) + "\n"


def loads(text: str) -> Certificate:
    """
    Parse the certificate text format. `#` starts a comment.
    """
    header = None
    section = None
    vertices, edges, data = [], [], {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if header is None:
            match = _HEADER_RE.match(line)
            if not match:
                raise CertificateFormatError(f"line {lineno}: expected 'certificate <kind> t=<int>'")
            try:
                kind = CertificateKind(match.group(1))
            except ValueError:
                raise CertificateFormatError(f"line {lineno}: unknown certificate kind {match.group(1)!r}")
            header = (kind, parse_rational(match.group(2), lineno))
            continue
        if line.startswith("[") and line.endswith("]"):
            section = line[1:-1]
            if section not in _SECTIONS:
                raise CertificateFormatError(f"line {lineno}: unknown section [{section}]")
            continue
        if section == "vertices":
            vertices.append(parse_point(line, lineno))
        elif section == "edges":
            parts = line.split()
            if len(parts) != 2 or not all(p.isdigit() for p in parts):
                raise CertificateFormatError(f"line {lineno}: expected two vertex indices")
            edges.append((int(parts[0]), int(parts[1])))
        elif section == "data":
            if "=" not in line:
                raise CertificateFormatError(f"line {lineno}: expected key=value")
            key, value = line.split("=", 1)
            data[key.strip()] = value.strip()
        else:
            raise CertificateFormatError(f"line {lineno}: content outside any section")
    if header is None:
        raise CertificateFormatError("missing certificate header")
    if not vertices:
        raise CertificateFormatError("certificate has no vertices")
    for u, v in edges:
        if u >= len(vertices) or v >= len(vertices) or u == v:
            raise CertificateFormatError(f"edge ({u}, {v}) does not join two of the {len(vertices)} vertices")
    return Certificate(header[0], header[1], tuple(vertices), tuple(edges), data)


def _data_rational(cert: Certificate, key: str):
    if key not in cert.data:
        return None
    try:
        return parse_rational(cert.data[key])
    except ParseError as e:
        raise CertificateFormatError(f"data {key}: {e}")


def _data_point(cert: Certificate, key: str):
    if key not in cert.data:
        return None
    try:
        return parse_point(cert.data[key])
    except ParseError as e:
        raise CertificateFormatError(f"data {key}: {e}")


def _check_shape(report: Report, cert: Certificate, shape) -> None:
    if not cert.edges:
        return
    listed = {(min(u, v), max(u, v)) for u, v in cert.edges}
    if listed == set(shape.edges):
        report.add("shape", PASS, f"{len(listed)} listed edges match the expected graph")
    else:
        differ = len(listed ^ set(shape.edges))
        report.add("shape", FAIL, f"listed edges differ from the expected graph in {differ} place(s)")


def _verify_direct(report: Report, cert: Certificate) -> None:
    g = build_graph(cert.vertices, cert.t)
    if g.duplicates:
        report.add("vertices", WARN, f"{g.duplicates} duplicate point(s) merged, {g.order} vertices")
    else:
        report.add("vertices", PASS, f"{g.order} vertices")

    bad = [f"{u}-{v}" for u, v in cert.edges if dist_sq(cert.vertices[u], cert.vertices[v]) != cert.t]
    rescan = g.adjacency_problems()
    if bad or rescan:
        report.add("edges", FAIL, "; ".join(bad + rescan))
    else:
        report.add("edges", PASS, f"{len(g.edges)} edges, all at squared distance {cert.t}")

    triangle_free = is_triangle_free(g)
    report.add("triangle-free", PASS if triangle_free else FAIL, "" if triangle_free else "graph has a triangle")

    coloring = k_colorable(g, 3)
    if coloring is not None:
        report.add("3-coloring", FAIL, "a proper 3-coloring exists")
        report.summary = f"{g.order} vertices, 3-colorable"
        return
    report.add("3-coloring", PASS, "no proper 3-coloring")
    chi = chromatic_number(g)
    report.add("chromatic-number", PASS, f"chi = {chi}")
    shape = "triangle-free" if triangle_free else "with triangles"
    report.summary = f"chi = {chi}, {shape}, {g.order} vertices"


def _verify_grotzsch_type(report: Report, cert: Certificate) -> None:
    if len(cert.vertices) != 25:
        report.add("order", FAIL, f"expected 25 points, got {len(cert.vertices)}")
        return
    shape = grotzsch_type_abstract()
    report.add("order", PASS, "25 labeled vertices")
    _check_shape(report, cert, shape)
    degree3 = sum(1 for v in range(shape.order) if shape.degree(v) == 3)
    report.add("degrees", PASS, f"{len(shape.edges)} labeled edges, {degree3} vertices of degree 3")

    gt = GrotzschTypeGraph.from_points(cert.vertices, cert.t)
    premises = True
    for name, problems in (
        ("cycle", validate_5cycle(gt.v, cert.t)),
        ("circles", gt.circle_problems()),
        ("edges", gt.edge_problems()),
        ("apexes", gt.apex_problems()),
    ):
        if problems:
            premises = False
            report.add(name, FAIL, "; ".join(problems))
        else:
            report.add(name, PASS)

    same = gt.coincidences()
    distinct = len(set(gt.points))
    report.add("distinct", PASS, f"{distinct} distinct points" + (f" ({', '.join(same)})" if same else ""))

    if premises:
        report.add("structural", PASS, "every Q_i needs a fourth color")
    else:
        report.add("structural", FAIL, "construction premises do not hold")

    g = build_graph(gt.points, cert.t)
    coloring = k_colorable(g, 3)
    if coloring is None:
        report.add("solver", PASS, f"distance graph on {g.order} points has no proper 3-coloring")
    else:
        report.add("solver", FAIL, f"distance graph on {g.order} points is 3-colorable")
        if premises:
            raise ConsistencyError("structural argument and solver disagree on 3-colorability")
    report.summary = f"chi >= 4, {g.order} distinct points, 50 labeled edges"


def _chain_target(t: Fraction) -> QVec3:
    rep = rational_three_squares(t)
    if rep is None:
        raise PreconditionError(f"{t} is not a squared distance of Q^3")
    return QVec3(*rep)


def _verify_h_device(report: Report, cert: Certificate) -> None:
    h_graph = h_device()
    if len(cert.vertices) != h_graph.order:
        report.add("order", FAIL, f"expected {h_graph.order} points, got {len(cert.vertices)}")
        return
    report.add("order", PASS, f"{h_graph.order} vertices: {' '.join(h_graph.labels)}")
    t = cert.t
    if t.denominator == 1 and in_T(t.numerator):
        report.add("t", PASS, f"{t} is in T")
    else:
        report.add("t", FAIL, f"{t} is not in T")
        return
    _check_shape(report, cert, h_graph)
    pts = dict(zip(h_graph.labels, cert.vertices))

    bad = []
    for u, v in h_graph.edges:
        d = dist_sq(cert.vertices[u], cert.vertices[v])
        if d != t:
            bad.append(f"{h_graph.labels[u]}-{h_graph.labels[v]} has squared distance {d}")
    if bad:
        report.add("edges", FAIL, "; ".join(bad))
    else:
        report.add("edges", PASS, f"{len(h_graph.edges)} edges at squared distance {t}")

    same, different = forced_relations(h_graph, 3)
    x2z = (h_graph.index("x2"), h_graph.index("z"))
    x1x3 = (h_graph.index("x1"), h_graph.index("x3"))
    if x2z in same and x1x3 in different:
        report.add("forced", PASS, "x2 and z share a color, x1 and x3 differ, in every 3-coloring")
    else:
        report.add("forced", FAIL, "H does not force the expected relations")

    x0, x1, x2, x3, x4, z = (pts[k] for k in ("x0", "x1", "x2", "x3", "x4", "z"))
    if x0 == x4:
        report.add("symmetric", FAIL, "x0 = x4")
        return
    sym = SymCycle(x0, x1, x2, x3, x4, bisector_plane(x0, x4), t)
    problems = sym.problems()
    if problems:
        report.add("symmetric", FAIL, "; ".join(problems))
    else:
        mid = midpoint(x1, x3)
        report.add("symmetric", PASS,
                   f"d = {sym.d}, midpoint {mid} at squared distance {dist_sq(mid, x0)} from x0 and x4")

    claimed_z = _data_point(cert, "z")
    if claimed_z is not None and claimed_z != z:
        report.add("z", WARN, f"data z = {claimed_z} differs from vertex z = {z}")

    h = dist_sq(x2, z)
    claimed_h = _data_rational(cert, "h")
    if claimed_h is not None and claimed_h != h:
        report.add("h", WARN, f"claimed {claimed_h}, exact {h}")

    step = None
    if phi_criteria(h):
        report.add("branch", PASS, f"A: |x2 - z|^2 = {h} meets the closure criteria")
        step = h
    else:
        s_circle = equidistant_circle(x1, x3, t)
        radius_sq = s_circle.radius_sq
        claimed_center = _data_point(cert, "center")
        if claimed_center is not None and claimed_center != s_circle.center:
            report.add("center", WARN, f"claimed {claimed_center}, exact {s_circle.center}")
        claimed_radius = _data_rational(cert, "radius_sq")
        if claimed_radius is not None and claimed_radius != radius_sq:
            report.add("radius", WARN, f"claimed radius^2 {claimed_radius}, exact {radius_sq}")
        through = "passes through x2" if s_circle.contains(x2) else "misses x2"
        report.add("circle-s", PASS, f"center {s_circle.center}, radius^2 {radius_sq}, {through}")
        n = radius_sq.denominator
        if n % 4 == 2:
            antipodal = antipodal_dist_sq(radius_sq)
            if phi_criteria(antipodal):
                report.add("branch", PASS, f"B: |x2 - z|^2 = {h} is silent; radius^2 denominator {n} = 2 (mod 4), "
                                           f"antipodal squared distance {antipodal} meets the closure criteria")
                step = antipodal
            else:
                report.add("branch", FAIL, f"antipodal squared distance {antipodal} misses the closure criteria")
        else:
            report.add("branch", FAIL, f"|x2 - z|^2 = {h} is silent and radius^2 denominator {n} != 2 (mod 4)")

    if step is not None:
        try:
            chain = construct_chain(_chain_target(t), step)
            report.add("chain", PASS, f"{len(chain.steps)} vectors of squared length {step} sum to {chain.target}")
        except (PreconditionError, ChainError) as e:
            report.add("chain", FAIL, str(e))
    report.summary = f"h-device in G(Q^3, sqrt {t}) forces chi = 4"


_VERIFIERS = {
    CertificateKind.DIRECT: _verify_direct,
    CertificateKind.GROTZSCH_TYPE: _verify_grotzsch_type,
    CertificateKind.H_DEVICE: _verify_h_device,
}


def verify_certificate(cert: Certificate) -> Report:
    """
    Re-check every claim of a certificate with exact arithmetic.

    Returns:
        Report: Itemized checks; exit_code is 0 (pass), 1 (fail) or
            2 (pass with warnings).
    """
    report = Report(cert.kind, cert.t)
    if cert.t <= 0:
        report.add("t", FAIL, f"squared distance {cert.t} is not positive")
        return report
    _VERIFIERS[cert.kind](report, cert)
    logger.info(f"verified {cert.kind.value} t={cert.t}: exit {report.exit_code}")
    return report
