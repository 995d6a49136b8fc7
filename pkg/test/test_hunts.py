from fractions import Fraction

import pytest

from scavenger.core.certificate import Certificate, CertificateKind, GrotzschTypeGraph, verify_certificate
from scavenger.core.cycles import SymCycle, gen_vectors
from scavenger.core.geom import bisector_plane, circle_param, equidistant_circle, farey_parameters
from scavenger.core.graph import chromatic_number
from scavenger.core.hunts import (
    CandidateSpec,
    audit_greedy,
    greedy_hunt,
    grotzsch_subgraph_hunt,
    grotzsch_type_hunt,
    h_device_hunt,
    parameter_tuples,
)
from scavenger.core.qcore import QPoint3, dist_sq
from scavenger.errors import PreconditionError

F = Fraction


def test_candidate_spec():
    spec = CandidateSpec(frozenset({1, 3}), 2)
    assert spec.scale == 3
    assert spec.contains(QPoint3(F(1, 3), -2, F(5, 3)))
    assert not spec.contains(QPoint3(F(1, 2), 0, 0))
    assert not spec.contains(QPoint3(3, 0, 0))
    assert all(dist_sq(QPoint3(0, 0, 0), QPoint3(0, 0, 0) + s) == 22 for s in spec.steps(22))


def test_parameter_tuples():
    tuples = list(parameter_tuples(2, 3))
    assert len(tuples) == 8
    assert tuples[0] == (0, 0, 0)
    assert set(tuples) == {(a, b, c) for a in range(2) for b in range(2) for c in range(2)}
    assert list(parameter_tuples(3, 2))[:4] == [(0, 0), (0, 1), (1, 0), (1, 1)]


def test_greedy_hunt_stops_at_cap(t22_seed):
    spec = CandidateSpec()
    result = greedy_hunt(22, t22_seed, spec, cap=6)
    assert not result.success
    assert result.order == 6
    assert len(result.history) == 1
    assert result.coloring.is_proper(result.graph)
    assert "cap 6" in result.reason
    assert audit_greedy(result, spec) == []


def test_greedy_hunt_rejects_bad_seeds(t22_seed):
    with pytest.raises(PreconditionError):
        greedy_hunt(22, t22_seed[:4])
    with pytest.raises(PreconditionError):
        greedy_hunt(22, t22_seed, cap=4)
    with pytest.raises(PreconditionError):
        greedy_hunt(22, t22_seed, CandidateSpec(frozenset({1}), 10))
    with pytest.raises(PreconditionError):
        greedy_hunt(F(22, 9), t22_seed)


def _appendix_parameters(gt: GrotzschTypeGraph):
    parameters = []
    for i in range(5):
        circle = equidistant_circle(gt.v[i - 1], gt.v[(i + 1) % 5], gt.t)
        param = circle_param(circle, gt.v[i])
        for group in (gt.X, gt.Y, gt.Z):
            s = param.parameter_of(group[i])
            if s not in parameters:
                parameters.append(s)
    return parameters


def test_grotzsch_type_hunt_on_t34_cycle(t34_certificate):
    gt = GrotzschTypeGraph.from_points(t34_certificate.vertices, 34)
    found = grotzsch_type_hunt(34, gt.v, _appendix_parameters(gt))
    assert found is not None
    graph, cert = found
    assert graph.v == gt.v
    assert cert.kind == CertificateKind.GROTZSCH_TYPE
    report = verify_certificate(cert)
    assert report.exit_code == 0
    assert graph.circle_problems() == [] and graph.edge_problems() == []


def test_grotzsch_type_hunt_without_parameters(t34_certificate):
    cycle = t34_certificate.vertices[:5]
    assert grotzsch_type_hunt(34, cycle, []) is None
    with pytest.raises(PreconditionError):
        grotzsch_type_hunt(34, cycle[:4])


def test_grotzsch_subgraph_hunt_on_t30_chart(t30_chart, t30_certificate):
    x = [t30_chart[f"x{i}"] for i in range(5)]
    sym = SymCycle(*x, bisector_plane(x[0], x[4]), F(30))
    y0, y1 = t30_certificate.vertices[5], t30_certificate.vertices[6]
    c0 = circle_param(equidistant_circle(x[4], x[1], 30), x[0])
    c1 = circle_param(equidistant_circle(x[0], x[2], 30), x[1])
    pairs = [(c0.parameter_of(y0), c1.parameter_of(y1))]
    cert = grotzsch_subgraph_hunt(30, sym, parameter_pairs=pairs)
    assert cert is not None
    assert cert.kind == CertificateKind.H_DEVICE
    assert cert.vertices[5:7] == (y0, y1)
    assert cert.data["branch"] == "B"
    assert cert.data["antipodal"] == "1078/15"
    assert verify_certificate(cert).exit_code == 0


def test_grotzsch_subgraph_hunt_checks_its_cycle(t30_chart):
    x = [t30_chart[f"x{i}"] for i in range(5)]
    sym = SymCycle(*x, bisector_plane(x[0], x[4]), F(30))
    with pytest.raises(PreconditionError):
        grotzsch_subgraph_hunt(22, sym)
    assert grotzsch_subgraph_hunt(30, sym, parameter_pairs=[]) is None


def test_greedy_hunt_reaches_chromatic_number_4(t22_seed):
    spec = CandidateSpec(frozenset({1, 3}), 10)
    result = greedy_hunt(22, t22_seed, spec, cap=1000)
    assert result.success
    assert result.coloring is None
    assert len(result.history) == result.order - 5
    assert chromatic_number(result.graph) == 4
    report = verify_certificate(Certificate(CertificateKind.DIRECT, F(22), result.graph.vertices))
    assert report.exit_code == 0
    assert audit_greedy(result, spec) == []


def test_grotzsch_type_hunt_on_t66_cycle(t66_certificate):
    gt = GrotzschTypeGraph.from_points(t66_certificate.vertices, 66)
    found = grotzsch_type_hunt(66, gt.v, _appendix_parameters(gt))
    assert found is not None
    graph, cert = found
    assert graph.apex_problems() == []
    assert verify_certificate(cert).exit_code == 0


@pytest.mark.slow
def test_grotzsch_type_hunt_with_default_parameters(t34_certificate):
    # every appendix parameter lies in the default list, none past index 110
    gt = GrotzschTypeGraph.from_points(t34_certificate.vertices, 34)
    defaults = farey_parameters(12)
    assert set(_appendix_parameters(gt)) <= set(defaults)
    found = grotzsch_type_hunt(34, gt.v, workers=5)
    assert found is not None
    assert verify_certificate(found[1]).exit_code == 0


def test_h_device_hunt_from_a_vector_pool(t30_chart):
    found = h_device_hunt(30, gen_vectors(30))
    assert found is not None
    sym, cert = found
    assert sym.points == tuple(t30_chart[f"x{i}"] for i in range(5))
    assert cert.vertices[:5] == sym.points
    assert cert.data["branch"] == "B"
    assert verify_certificate(cert).exit_code == 0


def test_grotzsch_subgraph_hunt_does_not_depend_on_workers(t30_chart):
    x = [t30_chart[f"x{i}"] for i in range(5)]
    sym = SymCycle(*x, bisector_plane(x[0], x[4]), F(30))
    assert grotzsch_subgraph_hunt(30, sym, workers=2) == grotzsch_subgraph_hunt(30, sym)


def test_h_device_hunt_without_symmetric_cycles():
    assert h_device_hunt(30, gen_vectors(30), d_bound=1) is None
