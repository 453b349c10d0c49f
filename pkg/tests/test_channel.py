import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from qreuse import (
    ActionSpace,
    LinkGainTable,
    PathLossParams,
    RadioConfig,
    SAMPLED_PER_LINK,
    ThroughputTables,
    build_default_deployment,
    build_link_gain_table,
    dbm_to_mw,
    distance,
    interference_mw,
    max_throughput_bps,
    mw_to_dbm,
    path_loss_db,
    shannon_throughput_bps,
    sinr_linear,
    throughput_bps,
)

PARAMS = PathLossParams(pl0_db=5.0, alpha_pl=4.4, gs_mean_db=9.5,
                        go_mean_db=30.0, d_obs_m=5.0)
RADIO = RadioConfig(bandwidth_hz=20e6, noise_dbm=-100.0,
                    adjacent_leakage_db_per_channel=20.0)
SPACE = ActionSpace(2, (5, 10, 15, 20))

# own-link loss at the default AP-STA separation, evaluated by hand:
# 5 + 44*log10(sqrt(2)) + 9.5 + (sqrt(2)/5)*30
OWN_LINK_LOSS_DB = 29.607941278846155


class TestUnitConversion:
    @pytest.mark.parametrize("dbm,mw", [(0, 1.0), (20, 100.0), (-100, 1e-10)])
    def test_known_values(self, dbm, mw):
        assert dbm_to_mw(dbm) == pytest.approx(mw, rel=1e-12)

    @given(st.floats(min_value=-200, max_value=50))
    def test_round_trip(self, x):
        assert mw_to_dbm(dbm_to_mw(x)) == pytest.approx(x, rel=1e-12, abs=1e-12)

    def test_non_positive_power_has_no_dbm(self):
        with pytest.raises(ValueError):
            mw_to_dbm(0.0)


class TestPathLoss:
    def test_log_term_vanishes_at_one_meter(self):
        assert path_loss_db(1.0, PARAMS, gs=0.0, go=0.0) == 5.0

    def test_table_means_at_ap_sta_distance(self):
        got = path_loss_db(math.sqrt(2), PARAMS, gs=9.5, go=30.0)
        assert got == pytest.approx(29.607, abs=1e-3)
        assert got == pytest.approx(OWN_LINK_LOSS_DB, rel=1e-12)

    def test_ten_meters_no_shadowing(self):
        assert path_loss_db(10.0, PARAMS, gs=0.0, go=0.0) == pytest.approx(49.0, rel=1e-12)

    def test_colocated_rejected(self):
        with pytest.raises(ValueError):
            path_loss_db(0.0, PARAMS, 0.0, 0.0)

    @given(st.floats(min_value=0.01, max_value=1e4),
           st.floats(min_value=0.01, max_value=1e4))
    def test_strictly_increasing_in_distance(self, d1, d2):
        if d1 == d2:
            return
        lo, hi = sorted((d1, d2))
        assert path_loss_db(lo, PARAMS, 9.5, 30.0) < path_loss_db(hi, PARAMS, 9.5, 30.0)

    @given(st.floats(min_value=-50, max_value=50),
           st.floats(min_value=-50, max_value=50))
    def test_affine_in_shadowing(self, g1, g2):
        base = path_loss_db(3.0, PARAMS, 0.0, 10.0)
        assert path_loss_db(3.0, PARAMS, g1, 10.0) - base == pytest.approx(g1, abs=1e-9)
        d12 = path_loss_db(3.0, PARAMS, g1, 10.0) - path_loss_db(3.0, PARAMS, g2, 10.0)
        assert d12 == pytest.approx(g1 - g2, abs=1e-9)


class TestLinkGainTable:
    def test_deterministic_own_links(self, default_scenario, det_gains):
        for i in range(det_gains.n_networks):
            assert det_gains.gain_db[i, i] == pytest.approx(OWN_LINK_LOSS_DB, abs=1e-3)

    def test_reflection_symmetry(self, det_gains):
        # x-reflection relabels 1<->2, 3<->4; z-reflection relabels 1<->3, 2<->4
        g = det_gains.gain_db
        for perm in ([1, 0, 3, 2], [2, 3, 0, 1]):
            assert np.allclose(g, g[np.ix_(perm, perm)], rtol=0, atol=1e-12)

    def test_sampled_with_zero_spreads_equals_deterministic(self, default_scenario):
        sc = default_scenario
        degenerate = PathLossParams(
            pl0_db=sc.path_loss.pl0_db, alpha_pl=sc.path_loss.alpha_pl,
            gs_mean_db=sc.path_loss.gs_mean_db, go_mean_db=sc.path_loss.go_mean_db,
            d_obs_m=sc.path_loss.d_obs_m, gs_std_db=0.0, go_halfwidth_db=0.0,
            randomness_mode=SAMPLED_PER_LINK)
        sampled = build_link_gain_table(sc.deployment, degenerate,
                                        np.random.default_rng(0))
        det = build_link_gain_table(sc.deployment, sc.path_loss)
        assert np.array_equal(sampled.gain_db, det.gain_db)

    def test_sampled_mode_requires_rng(self, default_scenario):
        sc = default_scenario
        with pytest.raises(ValueError):
            build_link_gain_table(
                sc.deployment, sc.path_loss.__class__(
                    pl0_db=5, alpha_pl=4.4, gs_mean_db=9.5, go_mean_db=30,
                    d_obs_m=5, randomness_mode=SAMPLED_PER_LINK))

    def test_table_is_frozen(self, det_gains):
        with pytest.raises(ValueError):
            det_gains.gain_db[0, 0] = 1.0

    def test_validation(self):
        with pytest.raises(ValueError):
            LinkGainTable(np.array([[1.0, 2.0]]))
        with pytest.raises(ValueError):
            LinkGainTable(np.array([[np.inf]]))


class TestInterference:
    def test_single_network_sees_none(self):
        dep = build_default_deployment()
        single = dep.__class__(dep.map_dims, dep.networks[:1], dep.action_space)
        table = build_link_gain_table(single, PARAMS)
        assert interference_mw(1, (8,), table, RADIO, SPACE) == 0.0

    def test_one_channel_separation_is_exactly_leakage_down(self, det_gains):
        # two-network slice: same power, adjacent channel vs same channel
        g = LinkGainTable(det_gains.gain_db[:2, :2])
        same = interference_mw(1, (7, 7), g, RADIO, SPACE)   # both channel 1
        adj = interference_mw(1, (7, 8), g, RADIO, SPACE)    # channel 2 interferer
        assert adj == pytest.approx(same / 100.0, rel=1e-12)

    def test_hand_summed_default_joint(self, default_scenario, det_gains):
        # independent brute-force sum for joint (7,8,7,8) at STA 1
        sc = default_scenario
        joint = (7, 8, 7, 8)
        expected = 0.0
        for i in (2, 3, 4):
            a = SPACE.action_from_index(joint[i - 1])
            sep = abs(a.channel - SPACE.action_from_index(joint[0]).channel)
            expected += 10 ** ((a.tx_power_dbm - det_gains.gain_db[i - 1, 0]
                                - 20.0 * sep) / 10)
        got = interference_mw(1, joint, det_gains, sc.radio, SPACE)
        assert got == pytest.approx(expected, rel=1e-12)
        assert got == pytest.approx(0.01602257833848208, rel=1e-12)

    def test_monotone_in_interferer_power(self, det_gains):
        # raising one interferer's power never lowers interference
        for k_lo, k_hi in [(1, 3), (3, 5), (5, 7)]:
            lo = interference_mw(1, (7, k_lo, 7, 8), det_gains, RADIO, SPACE)
            hi = interference_mw(1, (7, k_hi, 7, 8), det_gains, RADIO, SPACE)
            assert hi >= lo

    def test_non_increasing_in_channel_separation(self):
        space = ActionSpace(3, (20.0,))
        gain = LinkGainTable(np.full((2, 2), 60.0))
        vals = [interference_mw(1, (1, k), gain, RADIO, space) for k in (1, 2, 3)]
        assert vals[0] > vals[1] > vals[2]


class TestSinrAndShannon:
    def test_unit_ratio(self):
        assert sinr_linear(1.0, 0.0, 1.0) == 1.0

    def test_zero_signal(self):
        assert sinr_linear(0.0, 5.0, 1.0) == 0.0

    def test_direct_evaluation(self):
        assert sinr_linear(3e-7, 1e-7, 1e-10) == pytest.approx(2.997003, abs=1e-6)

    def test_non_positive_noise_rejected(self):
        with pytest.raises(ValueError):
            sinr_linear(1.0, 0.0, 0.0)

    @pytest.mark.parametrize("sinr,mbps", [(1.0, 20.0), (0.0, 0.0), (3.0, 40.0)])
    def test_shannon_known_points(self, sinr, mbps):
        assert shannon_throughput_bps(RADIO, sinr) == pytest.approx(mbps * 1e6, rel=1e-12)

    def test_shannon_strictly_increasing(self):
        vals = [shannon_throughput_bps(RADIO, s) for s in (0.0, 0.5, 1.0, 10.0, 1e9)]
        assert all(a < b for a, b in zip(vals, vals[1:]))


class TestMaxThroughput:
    def test_equals_composition(self, default_scenario, det_gains):
        sc = default_scenario
        expected = shannon_throughput_bps(
            sc.radio, dbm_to_mw(20.0 - det_gains.gain_db[0, 0]) / sc.radio.noise_mw)
        assert max_throughput_bps(1, det_gains, sc.radio, SPACE) == expected

    def test_equal_across_networks(self, default_scenario, det_gains):
        sc = default_scenario
        vals = {max_throughput_bps(i, det_gains, sc.radio, SPACE) for i in range(1, 5)}
        assert len(vals) == 1

    def test_hand_computed_value(self, default_scenario, det_gains):
        got = max_throughput_bps(1, det_gains, default_scenario.radio, SPACE)
        assert got == pytest.approx(600551838.8673816, rel=1e-12)

    def test_ceiling_dominates_every_joint_action(self, default_scenario, det_gains):
        sc = default_scenario
        rng = np.random.default_rng(5)
        for _ in range(200):
            joint = tuple(rng.integers(1, 9, size=4))
            for i in range(1, 5):
                tput = throughput_bps(i, joint, det_gains, sc.radio, SPACE)
                assert tput <= max_throughput_bps(i, det_gains, sc.radio, SPACE)


class TestThroughputTables:
    def test_matches_scalar_path_on_every_joint(self, default_scenario, det_gains):
        sc = default_scenario
        tabs = ThroughputTables(det_gains, sc.radio, SPACE)
        rng = np.random.default_rng(11)
        for _ in range(300):
            joint = tuple(int(v) for v in rng.integers(1, 9, size=4))
            for j in range(1, 5):
                assert tabs.throughput_bps(j, joint) == throughput_bps(
                    j, joint, det_gains, sc.radio, SPACE)

    def test_max_throughput_matches(self, default_scenario, det_gains):
        sc = default_scenario
        tabs = ThroughputTables(det_gains, sc.radio, SPACE)
        for i in range(1, 5):
            assert tabs.max_throughput_bps[i - 1] == max_throughput_bps(
                i, det_gains, sc.radio, SPACE)
