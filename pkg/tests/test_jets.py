import numpy as np
import pytest

from rotorlab import jets


def fd_grad(f, x, h=1e-6):
    x = np.asarray(x, dtype=float)
    g = np.zeros_like(x)
    for i in range(len(x)):
        e = np.zeros_like(x)
        e[i] = h
        g[i] = (f(x + e) - f(x - e)) / (2 * h)
    return g


def fd_hess(f, x, h=1e-4):
    x = np.asarray(x, dtype=float)
    n = len(x)
    H = np.zeros((n, n))
    for i in range(n):
        for j in range(n):
            ei = np.zeros(n); ei[i] = h
            ej = np.zeros(n); ej[j] = h
            H[i, j] = (f(x + ei + ej) - f(x + ei - ej)
                       - f(x - ei + ej) + f(x - ei - ej)) / (4 * h * h)
    return H


def test_variables_seed_identity():
    x, y = jets.variables(2.0, 3.0)
    assert x.f == 2.0 and y.f == 3.0
    assert np.array_equal(x.g, [1.0, 0.0]) and np.array_equal(y.g, [0.0, 1.0])
    assert not x.h.any() and not y.h.any()


def test_arithmetic_matches_finite_differences():
    rng = np.random.default_rng(3)

    def func(v):
        x, y, z = v
        return (x * y - z / (1.0 + x * x)) * (y + 2.0) - x**3 + 5.0

    for _ in range(20):
        pt = rng.uniform(-2.0, 2.0, 3)
        xs = jets.variables(*pt)
        out = func(xs)
        assert out.f == pytest.approx(func(pt), rel=1e-14)
        assert np.allclose(out.g, fd_grad(func, pt), rtol=1e-6, atol=1e-7)
        assert np.allclose(out.h, fd_hess(func, pt), rtol=1e-4, atol=1e-5)
        assert np.allclose(out.h, out.h.T)


def test_elementary_functions_match_finite_differences():
    rng = np.random.default_rng(11)
    cases = [
        (jets.sqrt, np.sqrt, (0.1, 4.0)),
        (jets.sin, np.sin, (-3.0, 3.0)),
        (jets.cos, np.cos, (-3.0, 3.0)),
        (jets.exp, np.exp, (-2.0, 2.0)),
        (jets.log, np.log, (0.1, 5.0)),
        (jets.tanh, np.tanh, (-2.0, 2.0)),
        (jets.acos, np.arccos, (-0.9, 0.9)),
    ]
    for jf, nf, (lo, hi) in cases:
        for _ in range(10):
            v = rng.uniform(lo, hi)
            (x,) = jets.variables(v)
            out = jf(x)
            f = lambda a: nf(a[0])
            assert out.f == pytest.approx(nf(v), rel=1e-14)
            assert out.g[0] == pytest.approx(fd_grad(f, [v])[0], rel=1e-5, abs=1e-7)
            assert out.h[0, 0] == pytest.approx(fd_hess(f, [v])[0, 0], rel=2e-3, abs=1e-4)


def test_atan2_full_plane():
    rng = np.random.default_rng(5)
    for _ in range(20):
        a, b = rng.uniform(-2, 2, 2)
        if abs(a) + abs(b) < 0.3:
            continue
        x, y = jets.variables(a, b)
        out = jets.atan2(y, x)
        f = lambda v: np.arctan2(v[1], v[0])
        assert out.f == pytest.approx(np.arctan2(b, a), rel=1e-14)
        assert np.allclose(out.g, fd_grad(f, [a, b]), rtol=1e-5, atol=1e-7)
        assert np.allclose(out.h, fd_hess(f, [a, b]), rtol=1e-3, atol=1e-4)


def test_integer_and_real_powers():
    (x,) = jets.variables(1.7)
    cube = x**3
    assert cube.f == pytest.approx(1.7**3)
    assert cube.g[0] == pytest.approx(3 * 1.7**2)
    assert cube.h[0, 0] == pytest.approx(6 * 1.7)
    frac = x**0.5
    assert frac.f == pytest.approx(np.sqrt(1.7))
    assert frac.g[0] == pytest.approx(0.5 / np.sqrt(1.7))


def test_functions_pass_floats_through():
    assert jets.sqrt(4.0) == 2.0
    assert jets.sin(0.0) == 0.0
    assert jets.value(3.5) == 3.5
    (x,) = jets.variables(2.0)
    assert jets.value(x) == 2.0


def test_constant_has_zero_derivatives():
    c = jets.constant(4.2, 3)
    assert c.f == 4.2
    assert not c.g.any() and not c.h.any()


def test_sqrt_of_negative_rejected():
    (x,) = jets.variables(-1.0)
    with pytest.raises(ValueError):
        jets.sqrt(x)
