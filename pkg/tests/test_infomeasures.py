import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qcmi_accel.fock import (
    DensityMatrix,
    InvalidStateError,
    ModeRegister,
    biseparable_state,
    product_state,
    random_product_state,
    random_tripartite_state,
    to_density_matrix,
    w_state,
)
from qcmi_accel.infomeasures import (
    BISEPARABLE_SCENARIOS,
    QCMI_NEG_TOL,
    W_SCENARIOS,
    InvariantViolation,
    Partition,
    Scenario,
    entropy_from_eigenvalues,
    mutual_information,
    qcmi,
    scenario_qcmi,
    scenario_r_values,
    scenario_state,
    von_neumann_entropy,
)
from qcmi_accel.rindler import R_MAX

INERTIAL_W = math.log2(3) - 2 / 3
seeds = st.integers(0, 2**32 - 1)
r_values = st.floats(0, R_MAX)


class TestEntropy:
    def test_pure(self):
        assert von_neumann_entropy(np.diag([1.0, 0.0])) == 0.0

    def test_maximally_mixed(self):
        assert von_neumann_entropy(np.eye(2) / 2) == pytest.approx(1.0, abs=1e-15)
        assert von_neumann_entropy(np.eye(8) / 8) == pytest.approx(3.0, abs=1e-14)

    def test_w_marginal(self):
        assert entropy_from_eigenvalues([2 / 3, 1 / 3]) == pytest.approx(0.9182958340544896, abs=1e-12)

    def test_clips_tiny_negatives(self):
        assert entropy_from_eigenvalues([1.0, -5e-11]) == 0.0

    def test_rejects_negative(self):
        with pytest.raises(InvalidStateError):
            entropy_from_eigenvalues([1.0, -1e-6])

    def test_no_negative_zero(self):
        assert math.copysign(1.0, entropy_from_eigenvalues([1.0, 0.0])) == 1.0

    @given(seeds)
    @settings(max_examples=30, deadline=None)
    def test_bounds(self, seed):
        rho = random_tripartite_state(np.random.default_rng(seed))
        s = von_neumann_entropy(rho)
        assert -1e-12 <= s <= 3 + 1e-12


class TestMutualInformation:
    def test_w_state_a_versus_bc(self):
        # S(A) + S(BC) - S(ABC) = 2 S(A) for a pure state
        rho = to_density_matrix(w_state())
        assert mutual_information(rho, ([0], [1, 2])) == pytest.approx(1.836591668108979, abs=1e-12)

    def test_product_is_zero(self):
        rho = to_density_matrix(product_state([[1, 0], [0.6, 0.8], [0, 1]]))
        assert abs(mutual_information(rho, ([0, 1], [2]))) < 1e-12

    def test_bad_split(self):
        with pytest.raises(ValueError):
            mutual_information(to_density_matrix(w_state()), ([0], [0, 1, 2]))


class TestQcmi:
    def test_inertial_w(self):
        rep = qcmi(to_density_matrix(w_state()))
        assert rep.qcmi == pytest.approx(INERTIAL_W, abs=1e-12)
        assert rep.s_abc == pytest.approx(0.0, abs=1e-12)

    def test_raw_matrix_accepted(self):
        assert qcmi(to_density_matrix(w_state()).matrix).qcmi == pytest.approx(INERTIAL_W, abs=1e-12)

    def test_ghz(self):
        ghz = np.zeros(8)
        ghz[[0, 7]] = 1 / math.sqrt(2)
        rho = DensityMatrix(ModeRegister.minkowski(), np.outer(ghz, ghz))
        # S(AC) + S(BC) - S(ABC) - S(C) = 1 + 1 - 0 - 1
        assert qcmi(rho).qcmi == pytest.approx(1.0, abs=1e-12)

    def test_custom_partition(self):
        rho = to_density_matrix(biseparable_state(1))
        assert qcmi(rho, Partition((0,), (1,), (2,))).qcmi == pytest.approx(2.0, abs=1e-12)
        # condition on B: A and C are uncorrelated
        assert abs(qcmi(rho, Partition((0,), (2,), (1,))).qcmi) < 1e-12

    def test_invalid_partition(self):
        with pytest.raises(ValueError):
            qcmi(to_density_matrix(w_state()), Partition((0,), (0,), (2,)))

    def test_negative_raises(self, monkeypatch):
        import qcmi_accel.infomeasures as im

        monkeypatch.setattr(im, "von_neumann_entropy", lambda rho: 1.0 if rho.dim == 8 else 0.0)
        with pytest.raises(InvariantViolation):
            qcmi(to_density_matrix(w_state()))

    @given(seeds)
    @settings(max_examples=100, deadline=None)
    def test_strong_subadditivity(self, seed):
        rho = random_tripartite_state(np.random.default_rng(seed))
        assert qcmi(rho).qcmi >= -QCMI_NEG_TOL

    @given(seeds)
    @settings(max_examples=100, deadline=None)
    def test_product_states_have_zero_qcmi(self, seed):
        psi = random_product_state(np.random.default_rng(seed))
        assert abs(qcmi(to_density_matrix(psi)).qcmi) < 1e-9

    @given(seeds)
    @settings(max_examples=50, deadline=None)
    def test_symmetric_in_a_and_b(self, seed):
        rho = random_tripartite_state(np.random.default_rng(seed))
        a = qcmi(rho, Partition((0,), (1,), (2,))).qcmi
        b = qcmi(rho, Partition((1,), (0,), (2,))).qcmi
        assert abs(a - b) < 1e-12


class TestScenarios:
    def test_parse(self):
        assert Scenario.parse("w_bc") is Scenario.W_BC
        with pytest.raises(ValueError, match="unknown scenario"):
            Scenario.parse("W_XY")

    def test_accelerated_parties(self):
        assert [p.value for p in Scenario.W_AB.accelerated] == ["A", "B"]
        assert Scenario.BISEP2_C.accelerated[0].value == "C"
        assert not Scenario.W_C.two_party and Scenario.W_BC.two_party

    def test_r_values(self):
        assert scenario_r_values("W_BC", 0.2) == (0.2, 0.2)
        assert scenario_r_values("W_AB", 0.2, 0.3) == (0.2, 0.3)
        with pytest.raises(ValueError):
            scenario_r_values("W_C", 0.2, 0.3)
        with pytest.raises(ValueError):
            scenario_r_values("W_C", 1.0)

    @pytest.mark.parametrize("scenario", W_SCENARIOS)
    def test_inertial_baseline(self, scenario):
        assert scenario_qcmi(scenario, 0.0).qcmi == pytest.approx(INERTIAL_W, abs=1e-12)

    def test_w_c_marginal(self):
        # rho_C = diag(2cos^2 r, 1 + 2 sin^2 r) / 3
        r = 0.4
        lam = scenario_state("W_C", r).reduce([2]).eigenvalues()
        assert np.allclose(sorted(lam), sorted([2 * math.cos(r) ** 2 / 3, (1 + 2 * math.sin(r) ** 2) / 3]))

    def test_w_b_leaves_c_alone(self):
        for r in (0.1, 0.5, R_MAX):
            assert scenario_qcmi("W_B", r).s_c == pytest.approx(INERTIAL_W, abs=1e-12)

    @given(r_values, r_values)
    @settings(max_examples=40, deadline=None)
    def test_relabeling_symmetry(self, r1, r2):
        # swapping A and B maps W_AB(r1, r2) onto itself with the roles exchanged
        a = scenario_qcmi("W_AB", r1, r2).qcmi
        b = scenario_qcmi("W_AB", r2, r1).qcmi
        assert abs(a - b) < 1e-10

    @pytest.mark.parametrize("scenario", BISEPARABLE_SCENARIOS)
    @given(r=r_values)
    @settings(max_examples=20, deadline=None)
    def test_biseparable_constants(self, scenario, r):
        expected = 2.0 if scenario is Scenario.BISEP1_C else 0.0
        assert abs(scenario_qcmi(scenario, r).qcmi - expected) < 1e-9

    @pytest.mark.parametrize("scenario", list(Scenario))
    @pytest.mark.parametrize("phi", [math.pi / 7, math.pi / 3, 2.0])
    def test_phase_invariance(self, scenario, phi):
        r = 0.37
        assert abs(scenario_qcmi(scenario, r, phase=phi).qcmi - scenario_qcmi(scenario, r).qcmi) < 1e-10

    def test_report_fields(self):
        rep = scenario_qcmi("W_BC", 0.3, 0.5)
        assert rep.r_values == (0.3, 0.5)
        assert rep.qcmi == pytest.approx(rep.s_ac + rep.s_bc - rep.s_abc - rep.s_c, abs=1e-14)


class TestTwoPartyShape:
    """W_BC(r, r) first rises slightly above its inertial value, then falls."""

    def test_initial_rise(self):
        rs = np.linspace(0, 0.3, 301)
        q = np.array([scenario_qcmi("W_BC", r).qcmi for r in rs])
        k = int(np.argmax(q))
        assert 0.07 < rs[k] < 0.10
        assert q[k] - INERTIAL_W == pytest.approx(1.66e-3, abs=5e-5)
        assert np.all(np.diff(q[k:]) < 0)

    def test_both_routes_show_the_rise(self):
        from qcmi_accel.analytic import eigenvalue_qcmi

        assert eigenvalue_qcmi("W_BC", 0.08) > INERTIAL_W + 1e-3

    def test_w_ab_has_no_rise(self):
        q = [scenario_qcmi("W_AB", r).qcmi for r in np.linspace(0, R_MAX, 65)]
        assert np.all(np.diff(q) <= 1e-12)
