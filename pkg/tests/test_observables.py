"""Tests for quadrature moments, Mandel statistics and photon distributions."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ncqo import observables as obs
from ncqo.errors import DimensionError
from ncqo.fock import basis_state
from ncqo.states import StateFamily, StateKind, build_cat, build_coherent, build_state


def _kind(family, alpha, tau):
    return StateKind(family, alpha, tau)


class TestCoherentClosed:
    def test_glauber_limit(self):
        q = obs.quad_moments_closed(_kind(StateFamily.COHERENT, 1.0 + 2.0j, 0.0))
        assert q.var_Y == pytest.approx(0.5)
        assert q.var_Z == pytest.approx(0.5)
        assert q.R == pytest.approx(0.5)
        assert q.mean_Y == pytest.approx(2.0 * 1.0 / math.sqrt(2.0))
        assert q.mean_Z == pytest.approx(2.0 * 2.0 / math.sqrt(2.0))

    @settings(max_examples=60, deadline=None)
    @given(
        st.complex_numbers(max_magnitude=2.5, allow_nan=False, allow_infinity=False),
        st.floats(min_value=0.0, max_value=0.2),
    )
    def test_saturation_defect_identity(self, alpha, tau):
        # varY varZ - R^2 = -(tau (1/4 + |alpha|^2/2))^2 for the closed forms
        q = obs.quad_moments_closed(_kind(StateFamily.COHERENT, alpha, tau))
        target = -((tau * (0.25 + abs(alpha) ** 2 / 2.0)) ** 2)
        assert abs(q.saturation_defect - target) <= 1e-12
        assert q.U == pytest.approx(q.U_tilde)
        assert q.U == pytest.approx(tau * (0.25 + abs(alpha) ** 2 / 2.0))

    def test_validity_flag(self):
        q = obs.quad_moments_closed(_kind(StateFamily.COHERENT, 1.0, 0.0))
        assert q.validity  # saturation defect exactly 0 at tau = 0
        q = obs.quad_moments_closed(_kind(StateFamily.COHERENT, 1.0, 0.1))
        assert not q.validity  # saturated from below at first order

    def test_second_moments_match_variances(self):
        alpha, tau = 0.8 - 0.6j, 1e-3
        q = obs.quad_moments_closed(_kind(StateFamily.COHERENT, alpha, tau))
        assert q.var_Y == pytest.approx(q.mean_Y2 - q.mean_Y**2, abs=5e-6)
        assert q.var_Z == pytest.approx(q.mean_Z2 - q.mean_Z**2, abs=5e-6)


class TestCatClosed:
    def test_means_vanish(self):
        for family in (StateFamily.CAT_EVEN, StateFamily.CAT_ODD):
            q = obs.quad_moments_closed(_kind(family, 1.3 + 0.7j, 0.2))
            assert q.mean_Y == 0.0
            assert q.mean_Z == 0.0

    def test_ordinary_oscillator_limits(self):
        alpha = 1.3 + 0.4j
        r = abs(alpha) ** 2
        w = (alpha**2 + alpha.conjugate() ** 2).real
        assert obs.cat_R(alpha, 0.0, +1) == pytest.approx(0.5)
        assert obs.cat_R(alpha, 0.0, -1) == pytest.approx(0.5)
        assert obs.cat_U(alpha, 0.0, +1) == pytest.approx(w / 2 + r * math.tanh(r))
        assert obs.cat_U(alpha, 0.0, -1) == pytest.approx(w / 2 + r / math.tanh(r))
        assert obs.cat_U_tilde(alpha, 0.0, +1) == pytest.approx(w / 2 - r * math.tanh(r))
        assert obs.cat_U_tilde(alpha, 0.0, -1) == pytest.approx(w / 2 - r / math.tanh(r))

    def test_validity_value_matches_flag_combination(self):
        alpha, tau = 0.9 + 1.2j, 0.05
        for parity in (+1, -1):
            r = obs.cat_R(alpha, tau, parity)
            u = obs.cat_U(alpha, tau, parity)
            ut = obs.cat_U_tilde(alpha, tau, parity)
            val = obs.cat_validity_value(alpha, tau, parity)
            assert val == pytest.approx(r * (u - ut) - u * ut)
            # same number as varY varZ - R^2 of the assembled moments
            q = obs.quad_moments_closed(_kind(StateFamily.CAT_EVEN if parity == 1 else StateFamily.CAT_ODD, alpha, tau))
            assert q.saturation_defect == pytest.approx(val)

    def test_raw_second_moments_agree_at_tau_zero(self):
        alpha = 1.1 - 0.6j
        for parity in (+1, -1):
            m1, m2 = obs.cat_second_moments_raw(alpha, 0.0, parity)
            assert m1 == pytest.approx(obs.cat_R(alpha, 0.0, parity) + obs.cat_U(alpha, 0.0, parity), abs=1e-12)
            assert m2 == pytest.approx(obs.cat_R(alpha, 0.0, parity) - obs.cat_U_tilde(alpha, 0.0, parity), abs=1e-12)

    def test_raw_second_moments_quadratically_close(self):
        # the raw (M1, M2) form keeps the norm in the denominator, the R/U
        # forms expand it; they may only differ at O(tau^2)
        alpha = 1.0 + 0.5j
        for parity in (+1, -1):
            defects = []
            for tau in (1e-3, 1e-2):
                m1, _ = obs.cat_second_moments_raw(alpha, tau, parity)
                expanded = obs.cat_R(alpha, tau, parity) + obs.cat_U(alpha, tau, parity)
                defects.append(abs(m1 - expanded))
            assert 50 <= defects[1] / defects[0] <= 200


class TestQuadOracle:
    def test_metric_quadratures_need_room(self):
        with pytest.raises(DimensionError):
            obs.metric_quadratures(0.1, 4)

    def test_glauber_oracle_matches_closed(self):
        st_ = build_coherent(1.0 - 0.7j, 0.0, cutoff=40)
        qc = obs.quad_moments_closed(st_.kind)
        qo = obs.quad_moments_oracle(st_, 0.0)
        for name in ("mean_Y", "mean_Z", "var_Y", "var_Z", "R"):
            assert getattr(qo, name) == pytest.approx(getattr(qc, name), abs=1e-10)

    @pytest.mark.parametrize(
        "family", [StateFamily.COHERENT, StateFamily.CAT_EVEN, StateFamily.CAT_ODD]
    )
    def test_oracle_vs_closed_quadratic_band(self, family):
        alpha = 1.0 + 1.0j
        defects = []
        for tau in (1e-3, 1e-2):
            st_ = build_state(_kind(family, alpha, tau), cutoff=50)
            qc = obs.quad_moments_closed(st_.kind)
            qo = obs.quad_moments_oracle(st_, tau)
            defects.append(
                max(
                    abs(qc.var_Y - qo.var_Y),
                    abs(qc.var_Z - qo.var_Z),
                    abs(qc.R - qo.R),
                )
            )
        assert 50 <= defects[1] / defects[0] <= 200


class TestMandel:
    def test_coherent_closed_values(self):
        m = obs.mandel_closed(_kind(StateFamily.COHERENT, 1.0, 0.1))
        assert m.mandel_Q == -0.05
        assert m.mean_N == pytest.approx(1.0 - 0.1 / 2.0 * 3.0)
        assert m.mean_N2 == pytest.approx(2.0 - 0.1 * 5.0)
        assert m.var_N == pytest.approx(m.mean_N2 - m.mean_N**2)
        assert not m.flagged

    def test_coherent_poissonian_at_tau_zero(self):
        m = obs.mandel_closed(_kind(StateFamily.COHERENT, 1.3 + 0.2j, 0.0))
        assert m.mandel_Q == 0.0

    def test_flagged_at_vacuum(self):
        m = obs.mandel_closed(_kind(StateFamily.COHERENT, 0.0, 0.1))
        assert m.flagged
        assert m.mandel_Q == 0.0

    def test_cat_limits(self):
        alpha = 0.9 + 0.4j
        r = abs(alpha) ** 2
        q_ho = 2.0 * r / math.sinh(2.0 * r)
        assert obs.mandel_closed(_kind(StateFamily.CAT_EVEN, alpha, 0.0)).mandel_Q == pytest.approx(q_ho, abs=1e-12)
        assert obs.mandel_closed(_kind(StateFamily.CAT_ODD, alpha, 0.0)).mandel_Q == pytest.approx(-q_ho, abs=1e-12)

    def test_odd_cat_moments_are_nan(self):
        # only Q_- has a printed closed form; intermediates come from the oracle
        m = obs.mandel_closed(_kind(StateFamily.CAT_ODD, 1.0, 0.1))
        assert math.isnan(m.mean_N)
        assert math.isnan(m.mean_N2)
        assert math.isnan(m.var_N)
        assert not math.isnan(m.mandel_Q)

    def test_oracle_fock_state(self):
        m = obs.mandel_oracle(basis_state(3, 20), 0.0)
        assert m.mean_N == pytest.approx(3.0)
        assert m.var_N == pytest.approx(0.0, abs=1e-12)
        assert m.mandel_Q == pytest.approx(-1.0)

    def test_oracle_vacuum_flagged(self):
        m = obs.mandel_oracle(basis_state(0, 10), 0.0)
        assert m.flagged
        assert m.mandel_Q == 0.0

    @pytest.mark.parametrize(
        "family", [StateFamily.COHERENT, StateFamily.CAT_EVEN, StateFamily.CAT_ODD]
    )
    def test_oracle_vs_closed_quadratic_band(self, family):
        alpha = 1.0 + 0.5j
        defects = []
        for tau in (1e-3, 1e-2):
            st_ = build_state(_kind(family, alpha, tau), cutoff=50)
            defects.append(
                abs(obs.mandel_oracle(st_, tau).mandel_Q - obs.mandel_closed(st_.kind).mandel_Q)
            )
        assert 50 <= defects[1] / defects[0] <= 200


class TestPhotonDistribution:
    def test_sums_to_one(self):
        st_ = build_cat(1.2 + 1.5j, 0.01, +1)
        p = obs.photon_distribution(st_)
        assert abs(float(np.sum(p)) - 1.0) <= 1e-10

    def test_glauber_is_poisson(self):
        st_ = build_coherent(1.0, 0.0)
        p = obs.photon_distribution(st_)
        for n in range(6):
            assert p[n] == pytest.approx(math.exp(-1.0) / math.factorial(n), rel=1e-10)

    def test_rejects_unnormalized(self):
        from ncqo.fock import FockVector

        with pytest.raises(ValueError):
            obs.photon_distribution(FockVector(np.array([2.0, 0.0])))
