import math

import numpy as np
import pytest

from tvrt.cyclotomic import CycNumber
from tvrt.modular import (
    admissible,
    anomaly_constants,
    fusion_matrix,
    handlebody_dim,
    modular_data,
    omega_squared_numeric,
    qdim,
    quantum_integer,
    scalar_data,
    to_json,
    twist,
    verlinde_dim,
)


def test_level_bounds():
    with pytest.raises(ValueError):
        modular_data(2)


@pytest.mark.parametrize("r", [3, 4, 5, 6, 7])
def test_quantum_integers_numeric(r):
    for n in range(0, 2 * r):
        want = math.sin(n * math.pi / r) / math.sin(math.pi / r)
        assert abs(quantum_integer(n, r).to_complex() - want) < 1e-10


@pytest.mark.parametrize("r", [3, 4, 5, 6])
def test_qdims_and_twists_numeric(r):
    for c in range(r - 1):
        want_d = (-1) ** c * math.sin((c + 1) * math.pi / r) / math.sin(math.pi / r)
        assert abs(qdim(c, r).to_complex() - want_d) < 1e-10
        want_t = (-1) ** c * complex(math.cos(math.pi * c * (c + 2) / (2 * r)), math.sin(math.pi * c * (c + 2) / (2 * r)))
        assert abs(twist(c, r).to_complex() - want_t) < 1e-10


def test_admissibility_rules():
    assert admissible(1, 1, 0, 3)
    assert not admissible(1, 1, 1, 3)  # odd sum
    assert not admissible(2, 0, 0, 5)  # triangle inequality
    assert not admissible(2, 2, 2, 4)  # a+b+c <= 2(r-2)
    assert admissible(2, 2, 2, 5)


def test_r3_six_j_values_are_signs():
    md = modular_data(3)
    for v in md.sixj_table.values():
        assert v == 1 or v == -1


@pytest.mark.parametrize("r", [3, 4, 5, 6])
def test_fusion_is_commutative_and_verlinde(r):
    mats = [fusion_matrix(a, r) for a in range(r - 1)]
    for a in range(r - 1):
        assert np.array_equal(mats[a], mats[a].T)
        for b in range(r - 1):
            assert np.array_equal(mats[a] @ mats[b], mats[b] @ mats[a])
    assert handlebody_dim(1, r) == r - 1
    assert verlinde_dim(2, r) == handlebody_dim(2, r) ** 2


def test_handlebody_dim_rejects_genus_zero():
    with pytest.raises(ValueError):
        handlebody_dim(0, 4)


def test_anomaly_and_scalar_data_agree():
    for r in (3, 4, 5):
        md = modular_data(r)
        dl, dr = anomaly_constants(r)
        assert dl == md.delta_L and dr == md.delta_R
        assert scalar_data(r)[2] == md.global_dim
        assert abs(md.global_dim.to_complex() - omega_squared_numeric(r)) < 1e-10


def test_to_json_shape():
    data = to_json(modular_data(4))
    assert data["level"] == 4 and data["order"] == 16
    assert data["colours"] == [0, 1, 2]
    assert data["global_dim"]["exact"] == "4"


def test_theta_and_inverse():
    md = modular_data(5)
    for a, b, c in md.admissible_triples():
        assert md.theta(a, b, c) * md.inv_theta(a, b, c) == CycNumber.one(md.order)
        assert md.theta(0, a, a) == md.qdims[a]
