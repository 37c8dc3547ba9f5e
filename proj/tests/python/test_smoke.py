import math

import numpy as np
import pytest

import expsubdiv as es


def test_symbols_and_limits():
    a2 = es.SymbolFamily.nonstationary("a2", 0.5)
    assert a2.declared_p == 0.0
    s = a2.symbol_at(3)
    assert (s.lo, s.hi) == (-4, 4)
    assert abs(s(1.0) - 2.0) < 1e-12
    assert abs(s(-1.0)) < 1e-12
    limit = es.stationary_limit_symbol("a4")
    assert len(limit) == 12
    assert es.a2_alpha(1.0) == -0.625


def test_reproduction_and_solver():
    a3 = es.SymbolFamily.nonstationary("a3", math.cos(2 * math.pi / 7))
    rep = es.check_reproduction(a3, a3.space, -0.5)
    assert rep.passed and rep.verdict == "reproduces"
    p, _ = es.solve_parametrization(a3, a3.space)
    assert abs(p + 0.5) < 1e-9
    a1 = es.SymbolFamily.nonstationary("a1", math.cosh(1.0))
    assert es.check_generation(a1, a1.space).passed
    assert not es.check_reproduction(a1, a1.space, 0.0).passed


def test_refine_circle():
    fam = es.SymbolFamily.nonstationary("a2", es.shape_v_init("circle"))
    pts, dist = es.refine_shape("circle", fam, 6)
    assert pts.shape == (448, 2)
    assert dist < 1e-6
    assert np.allclose(np.hypot(pts[:, 0], pts[:, 1]), 1.0, atol=1e-9)


def test_refine_array_input():
    fam = es.SymbolFamily.nonstationary("a3", 0.5)
    square = np.array([[1.0, 0.0], [0.0, 1.0], [-1.0, 0.0], [0.0, -1.0]])
    levels = es.refine(fam, square, 2, p=-0.5, topology=es.Topology.closed)
    assert [lv["points"].shape[0] for lv in levels] == [4, 8, 16]


def test_errors_surface_as_python_exceptions():
    with pytest.raises(ValueError):
        es.SymbolFamily.nonstationary("a7", 0.5)
    with pytest.raises(ValueError):
        es.sample_shape("torus")


def test_selftest():
    assert all(ok for _, ok, _ in es.selftest())
