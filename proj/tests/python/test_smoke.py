import math

import numpy as np
import pytest

import sfmkit


def test_decompose_and_dilate_random_measure():
    E = sfmkit.random_measure(4, 3, seed=5)
    assert E.dim == 4 and len(E) == 3
    dec = sfmkit.decompose(E)
    report = sfmkit.verify_decomposition(E, dec)
    assert report["passed"]
    assert report["relative_residual"] <= 1e-9

    total = sum((1j**k) * m for k, part in enumerate(dec.parts()) for label, m in part if label == "w0")
    assert np.allclose(total, E.atoms()[0][1], atol=1e-12)

    d = sfmkit.build_dilation(dec)
    assert sfmkit.verify_dilation(d, E)["passed"]
    phi = np.array([1, 1j, 0, -1]) / 2
    assert abs(np.linalg.norm(d.J(phi)) ** 2 - sum(
        np.vdot(phi, p.value() @ phi).real for p in (dec.part(k) for k in range(4))
    )) < 1e-10
    v = d.J(phi)
    assert np.array_equal(d.W(v, 4), v)


def test_positive_measure_has_single_part():
    a = np.array([[2, 1j], [-1j, 1]])
    E = sfmkit.Measure([("x", a), ("y", np.eye(2))])
    parts = sfmkit.decompose(E).parts()
    assert np.allclose(parts[0][0][1], a, atol=1e-12)
    for k in (1, 2, 3):
        assert all(np.abs(m).max() <= 1e-10 for _, m in parts[k])


def test_equivalence_and_strictify():
    E = sfmkit.random_measure(3, 2, seed=9)
    d = sfmkit.build_dilation(sfmkit.decompose(E))
    assert sfmkit.equivalent(d, d)["equivalent"]
    s = sfmkit.build_dilation(sfmkit.strictify(E, 0.1))
    assert not sfmkit.equivalent(d, s)["equivalent"]
    again = sfmkit.build_dilation(sfmkit.associated_decomposition(d))
    assert sfmkit.equivalent(d, again)["equivalent"]


def test_json_round_trip():
    E = sfmkit.random_measure(3, 2, seed=1)
    back = sfmkit.Measure.from_json(E.to_json())
    for (la, a), (lb, b) in zip(E.atoms(), back.atoms()):
        assert la == lb and np.array_equal(a, b)
    d = sfmkit.build_dilation(sfmkit.decompose(E))
    assert sfmkit.Dilation.from_json(d.to_json()).space_dim == d.space_dim
    with pytest.raises(ValueError):
        sfmkit.Measure.from_json("{")


def test_linear_algebra_helpers():
    a = np.array([[0, 1], [1, 0]], dtype=complex)
    assert sfmkit.trace_norm(a) == pytest.approx(2.0)
    values, vectors = sfmkit.deflate_diagonalize(a)
    assert sorted(values) == pytest.approx([-1.0, 1.0])
    assert np.allclose(vectors @ np.diag(values) @ vectors.conj().T, a)


def test_phase_example():
    assert sfmkit.arc_moment(0, 1, 0.0, math.pi) == pytest.approx(1j / math.pi)
    E = sfmkit.phase_measure("all-ones", dim=8, arcs=16)
    assert np.allclose(E.value(), np.eye(8), atol=1e-14)
    p = sfmkit.probabilities(E, sfmkit.coherent_vector(2.0, 8))
    assert abs(sum(p) - 1) < 1e-10
    assert min(x.real for x in p) >= 0
    c = np.array([[1, 0.5], [0.5, 1]])
    assert len(sfmkit.phase_measure(c, dim=2, arcs=4)) == 4


def test_errors_map_to_python_exceptions():
    E = sfmkit.random_measure(2, 2)
    with pytest.raises(KeyError):
        E.value(["missing"])
    with pytest.raises(ValueError):
        sfmkit.Measure([("a", np.eye(2)), ("a", np.eye(2))])
    with pytest.raises(ValueError):
        sfmkit.phase_measure("nonsense")
