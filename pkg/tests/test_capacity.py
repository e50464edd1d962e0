import math

import numpy as np
import pytest

from hiermod.capacity import (
    CapacityCurve,
    NoiseModel,
    QuadratureConfig,
    capacity_curve,
    db_grid,
    joint_capacity,
    mc_capacity,
    normalized_capacity,
    stream_capacity,
    transition_density,
)
from hiermod.constellation import Constellation, StreamSpec, make_nonuniform_16qam
from hiermod.errors import ConvergenceError, DomainError

HP = StreamSpec((1, 2))
LP = StreamSpec((3, 4))
ALL = StreamSpec((1, 2, 3, 4))

# Frozen from tests/oracles/capacity_oracles.py (scipy quad over two BPSK channels)
QPSK_ORACLE = {-3.4: 0.5400440823260545, 0.0: 0.9718883082658707, 6.0: 1.8237609091742633}
# Frozen from the dense 2-D Riemann sum of the mutual information, alpha = 2
HIER2_ORACLE = [(HP, -2.7, 0.5415372299653489), (LP, 6.2, 0.4906519830931031), (None, 3.0, 1.507439524319204)]


def test_noise_model_db_roundtrip():
    for db in (-40.0, -3.4, 0.0, 12.5, 60.0):
        nm = NoiseModel(db)
        assert NoiseModel.from_n0(nm.n0).es_n0_db == pytest.approx(db, abs=1e-12)
    assert NoiseModel(0.0).n0 == 1.0
    with pytest.raises(DomainError):
        NoiseModel.from_n0(0.0)
    with pytest.raises(DomainError):
        NoiseModel(float("inf"))


def test_transition_density_values():
    assert transition_density((0.3, -0.2), (0.3, -0.2), NoiseModel(0.0)) == pytest.approx(1 / math.pi)
    nm = NoiseModel(3.0)
    y = (0.1 + math.sqrt(nm.n0), 0.4)
    assert transition_density(y, (0.1, 0.4), nm) == pytest.approx(math.exp(-1) / (math.pi * nm.n0))


def test_transition_density_integrates_to_one():
    nm = NoiseModel(2.0)
    h = 0.005
    g = np.arange(-6, 6, h)
    yy = np.stack(np.meshgrid(g, g, indexing="ij"), -1)
    total = transition_density(yy, (0.5, -0.5), nm).sum() * h * h
    assert total == pytest.approx(1.0, abs=1e-6)


@pytest.mark.parametrize("db", sorted(QPSK_ORACLE))
def test_qpsk_matches_bpsk_oracle(qpsk, db):
    assert joint_capacity(qpsk, NoiseModel(db)) == pytest.approx(QPSK_ORACLE[db], abs=1e-5)


@pytest.mark.parametrize("stream, db, expected", HIER2_ORACLE)
def test_hier_matches_riemann_oracle(hier2, stream, db, expected):
    assert stream_capacity(hier2, stream, NoiseModel(db)) == pytest.approx(expected, abs=1e-5)


def test_qpsk_saturation_and_vanishing(qpsk):
    assert joint_capacity(qpsk, NoiseModel(30.0)) == pytest.approx(2.0, abs=1e-3)
    assert 0.0 <= joint_capacity(qpsk, NoiseModel(-40.0)) <= 1e-3


def test_qpsk_normalized_paper_points(qpsk):
    assert normalized_capacity(qpsk, None, NoiseModel(-3.4)) == pytest.approx(0.27, abs=0.01)
    assert normalized_capacity(qpsk, None, NoiseModel(-3.9)) == pytest.approx(0.25, abs=0.01)
    assert normalized_capacity(qpsk, None, NoiseModel(40.0)) == pytest.approx(1.0, abs=1e-9)


def test_hier_stream_paper_points(hier2):
    assert stream_capacity(hier2, HP, NoiseModel(-2.7)) == pytest.approx(0.54, abs=0.02)
    assert stream_capacity(hier2, LP, NoiseModel(6.2)) == pytest.approx(0.50, abs=0.02)


@pytest.mark.parametrize("db", [-10.0, 0.0, 8.0, 20.0])
def test_stream_over_all_bits_equals_joint(hier2, db):
    nm = NoiseModel(db)
    assert stream_capacity(hier2, ALL, nm) == pytest.approx(joint_capacity(hier2, nm), abs=1e-4)


def test_none_stream_means_joint(hier2):
    nm = NoiseModel(4.0)
    assert stream_capacity(hier2, None, nm) == joint_capacity(hier2, nm)


@pytest.mark.parametrize("db", [-60.0, 60.0])
def test_extreme_snr_converges(hier2, db):
    for s in (HP, LP, None):
        bits = 4 if s is None else 2
        v = stream_capacity(hier2, s, NoiseModel(db))
        assert 0.0 <= v <= bits
        assert v == pytest.approx(0.0 if db < 0 else bits, abs=1e-4)


def test_convergence_error_carries_estimates():
    # 8 vs 16 nodes cannot agree to 1e-12 bits in the waterfall region
    q = QuadratureConfig(nodes_per_axis=8, tolerance=1e-12, max_nodes=16)
    with pytest.raises(ConvergenceError) as info:
        joint_capacity(make_nonuniform_16qam(2), NoiseModel(8.0), q)
    assert len(info.value.estimates) == 2


def test_quadrature_config_validation():
    with pytest.raises(DomainError):
        QuadratureConfig(nodes_per_axis=4)
    with pytest.raises(DomainError):
        QuadratureConfig(tolerance=0)


def test_rotation_invariance(hier2):
    theta = 0.37
    rot = np.array([[math.cos(theta), -math.sin(theta)], [math.sin(theta), math.cos(theta)]])
    turned = hier2.with_points(hier2.points @ rot.T)
    nm = NoiseModel(5.0)
    for s in (HP, LP, None):
        assert stream_capacity(turned, s, nm) == pytest.approx(stream_capacity(hier2, s, nm), abs=1e-4)


def test_joint_labeling_invariance(hier2):
    perm = np.random.default_rng(3).permutation(16)
    relabeled = Constellation(hier2.points, perm, 4)
    nm = NoiseModel(7.0)
    assert joint_capacity(relabeled, nm) == pytest.approx(joint_capacity(hier2, nm), abs=1e-12)


def test_stream_depends_only_on_partition(hier2, qam16):
    # make_qam16 uses a different labeling that induces the same HP/LP partition
    uniform = make_nonuniform_16qam(1)
    nm = NoiseModel(4.0)
    for s in (HP, LP):
        assert stream_capacity(qam16, s, nm) == pytest.approx(stream_capacity(uniform, s, nm), abs=1e-9)


def test_mc_matches_quadrature_qpsk(qpsk):
    est, se = mc_capacity(qpsk, None, NoiseModel(0.0), 10**6, seed=1)
    assert abs(est - joint_capacity(qpsk, NoiseModel(0.0))) <= 3 * se


def test_mc_vanishing_snr(qpsk):
    est, se = mc_capacity(qpsk, None, NoiseModel(-40.0), 10**5, seed=2)
    # the true value is ~1.4e-4 bits, not exactly zero
    assert abs(est - joint_capacity(qpsk, NoiseModel(-40.0))) <= 3 * se
    assert abs(est) < 1e-3


def test_mc_hp_paper_point(hier2):
    est, se = mc_capacity(hier2, HP, NoiseModel(-2.7), 10**6, seed=4)
    assert abs(est - 0.54) <= max(3 * se, 0.02)
    assert abs(est - stream_capacity(hier2, HP, NoiseModel(-2.7))) <= 3 * se


def test_mc_deterministic_across_thread_counts(hier2):
    nm = NoiseModel(3.0)
    a = mc_capacity(hier2, LP, nm, 200_000, seed=9, workers=1)
    b = mc_capacity(hier2, LP, nm, 200_000, seed=9, workers=4)
    assert a == b


def test_mc_rejects_small_sample(qpsk):
    with pytest.raises(DomainError):
        mc_capacity(qpsk, None, NoiseModel(0.0), 1000)


def test_capacity_curve_order_and_threads(hier2):
    grid = db_grid(-4, 4, 2)
    c1 = capacity_curve(hier2, HP, grid, workers=1)
    c4 = capacity_curve(hier2, HP, grid, workers=4)
    assert c1 == c4
    assert list(c1.es_n0_db) == [-4.0, -2.0, 0.0, 2.0, 4.0]
    assert np.all(np.diff(c1.capacity) > 0)
    assert np.allclose(c1.normalized, c1.capacity / 2)


def test_db_grid_default_span():
    g = db_grid()
    assert g[0] == -10.0 and g[-1] == 25.0 and len(g) == 141


def test_curve_requires_increasing_snr():
    with pytest.raises(DomainError):
        CapacityCurve("x", None, 2, ((1.0, 0.5), (1.0, 0.6)))
