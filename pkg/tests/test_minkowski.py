import numpy as np
import pytest
from hypothesis import given

from lorcal.errors import DegenerateSpan, NotInRestSpace
from lorcal.expmap import exp_real
from lorcal.minkowski import (
    E0, E1, E2, E3, ETA, NullPlaneType, classify_null_plane, inner_c, inner_hermitian,
    is_null, is_observer, observer, rest_cross, vec, vec_from_json, vec_to_json,
)

from conftest import skew_ops

ALPHA = (E0 + E1, E2 + 1j * E3)
BETA = (E0 + E1, E2 - 1j * E3)


def test_signature():
    assert inner_c(E0, E0) == -1
    assert [inner_c(e, e) for e in (E1, E2, E3)] == [1, 1, 1]
    assert inner_c(E0, E1) == 0


def test_hermitian_conjugates_second_slot():
    v = vec(1, 1j, 0, 0)
    assert inner_c(v, v) == -1 - 1
    assert inner_hermitian(v, v) == -1 + 1


def test_null_vectors():
    assert is_null(E0 + E1)
    assert is_null(E2 + 1j * E3)
    assert not is_null(E0)


def test_observer():
    u = observer([0.6, 0.0, 0.0])
    assert is_observer(u)
    np.testing.assert_allclose(u, [1.25, 0.75, 0, 0])
    assert not is_observer(-E0)
    with pytest.raises(ValueError):
        observer([1.0, 0.0, 0.0])


def test_rest_cross():
    np.testing.assert_array_equal(rest_cross(E0, E1, E2), E3)
    np.testing.assert_array_equal(rest_cross(E0, E2, E1), -E3)
    with pytest.raises(NotInRestSpace):
        rest_cross(E0, E0 + E1, E2)
    with pytest.raises(NotImplementedError):
        rest_cross(observer([0.5, 0, 0]), E2, E3)


def test_null_plane_families():
    assert classify_null_plane(*ALPHA) is NullPlaneType.ALPHA
    assert classify_null_plane(*BETA) is NullPlaneType.BETA
    assert classify_null_plane(E0, E1) is NullPlaneType.NOT_TOTALLY_NULL
    # a null vector with a non-orthogonal null partner
    assert classify_null_plane(E0 + E1, E0 - E1) is NullPlaneType.NOT_TOTALLY_NULL


def test_null_plane_degenerate():
    with pytest.raises(DegenerateSpan):
        classify_null_plane(E0 + E1, 2 * (E0 + E1))


def test_null_plane_independent_of_spanning_pair():
    s, t = ALPHA
    assert classify_null_plane(s + 2j * t, (1 - 1j) * t - s) is NullPlaneType.ALPHA


@given(skew_ops)
def test_null_plane_type_is_lorentz_invariant(F):
    L = exp_real(F)
    for plane, kind in ((ALPHA, NullPlaneType.ALPHA), (BETA, NullPlaneType.BETA)):
        s, t = (L @ v for v in plane)
        assert classify_null_plane(s, t) is kind


def test_parity_swaps_families():
    P = np.diag([1.0, -1.0, 1.0, 1.0])
    assert np.allclose(P.T @ ETA @ P, ETA)
    s, t = (P @ v for v in ALPHA)
    assert classify_null_plane(s, t) is NullPlaneType.BETA


def test_vector_json_roundtrip():
    v = vec(1, 2j, -0.5, 3 + 1j)
    d = vec_to_json(v)
    assert d == {"re": [1.0, 0.0, -0.5, 3.0], "im": [0.0, 2.0, 0.0, 1.0]}
    np.testing.assert_array_equal(vec_from_json(d), v)
    with pytest.raises(ValueError):
        vec_from_json({"re": [1, 2, 3]})
