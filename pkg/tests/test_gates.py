import math

import numpy as np
import pytest

from qxemu.gates import GATE_NAMES, PARAM_COUNT, GateSpec, adjoint_of, matrix_of
from qxemu.linalg import is_unitary


def test_z_equals_u1_pi():
    assert np.allclose(matrix_of(GateSpec("z")), matrix_of(GateSpec("u1", (math.pi,))), atol=1e-15)


def test_u3_zero_angles_is_identity():
    assert np.allclose(matrix_of(GateSpec("u3", (0.0, 0.0, 0.0))), np.eye(2), atol=1e-15)


def test_u2_pi_zero_is_hadamard():
    # in the u2(φ,Φ) convention used here, -exp(iπ) = +1 lands in the top right
    diff = matrix_of(GateSpec("u2", (math.pi, 0.0))) - matrix_of(GateSpec("h"))
    assert np.max(np.abs(diff)) <= 1e-12


def test_x_matrix_entries():
    assert np.array_equal(matrix_of(GateSpec("x")), np.array([[0, 1], [1, 0]]))


def test_s_squared_is_z():
    s = matrix_of(GateSpec("s"))
    assert np.max(np.abs(s @ s - matrix_of(GateSpec("z")))) <= 1e-12


def test_t_squared_is_s():
    t = matrix_of(GateSpec("t"))
    assert np.max(np.abs(t @ t - matrix_of(GateSpec("s")))) <= 1e-12


def test_zx_equals_i_y():
    # convention: Z·X = iY with Y = [[0,-i],[i,0]]
    z, x, y = (matrix_of(GateSpec(n)) for n in "zxy")
    assert np.max(np.abs(z @ x - 1j * y)) <= 1e-15


def test_u3_theta_prepares_cos_sin_qubit():
    theta = 1.234
    vec = matrix_of(GateSpec("u3", (theta, 0.0, 0.0))) @ np.array([1.0, 0.0])
    assert np.allclose(vec, [math.cos(theta / 2), math.sin(theta / 2)], atol=1e-12)


@pytest.mark.parametrize("name", sorted(GATE_NAMES))
def test_every_catalogue_matrix_is_unitary(name):
    params = tuple(0.3 * (i + 1) for i in range(PARAM_COUNT[name]))
    assert is_unitary(matrix_of(GateSpec(name, params)), 1e-12)


def test_unknown_name_rejected():
    with pytest.raises(ValueError, match="unknown gate"):
        GateSpec("rx", (0.5,))


def test_wrong_arity_rejected():
    with pytest.raises(ValueError, match="parameter"):
        GateSpec("u1")
    with pytest.raises(ValueError, match="parameter"):
        GateSpec("h", (0.1,))


def test_nonfinite_angle_rejected():
    with pytest.raises(ValueError, match="finite"):
        GateSpec("u1", (math.inf,))


class TestAdjoint:
    def test_s_sdg_pair(self):
        assert adjoint_of(GateSpec("s")) == GateSpec("sdg")
        assert adjoint_of(GateSpec("sdg")) == GateSpec("s")

    def test_h_self_adjoint(self):
        assert adjoint_of(GateSpec("h")) == GateSpec("h")

    def test_u1_adjoint_product_is_identity(self):
        spec = GateSpec("u1", (0.8,))
        prod = matrix_of(adjoint_of(spec)) @ matrix_of(spec)
        assert np.max(np.abs(prod - np.eye(2))) <= 1e-12

    @pytest.mark.parametrize(
        "spec",
        [
            GateSpec("u2", (0.4, 1.7)),
            GateSpec("u3", (1.1, 0.2, 2.5)),
            GateSpec("t"),
            GateSpec("tdg"),
            GateSpec("u1", (-2.2,)),
        ],
    )
    def test_adjoint_matrix_is_conjugate_transpose(self, spec):
        adj = matrix_of(adjoint_of(spec))
        assert np.max(np.abs(adj - matrix_of(spec).conj().T)) <= 1e-12

    def test_cx_rejected(self):
        with pytest.raises(ValueError, match="single-qubit"):
            adjoint_of(GateSpec("cx"))
