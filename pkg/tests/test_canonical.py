"""Canonical split, mode Hamiltonian, gradients, Hamilton equations.

The sourced Hamilton-equation tests use closed-form coefficient
histories: for a static source the rate is rate(0) exp(pm i k0 t), so
the exact coefficients follow from one rate evaluation and the phase
integral.  That keeps the check independent of the integrator.
"""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from covham.canonical import (
    DEFAULT_GAUGE,
    BranchVars,
    CanonicalGauge,
    CanonicalMode,
    canonical_at_point,
    constant_amplitudes,
    epsilon_scale,
    from_canonical,
    gradient_consistency,
    hamilton_residual,
    history_amplitudes,
    mode_hamiltonian,
    mode_hamiltonian_canonical,
    mode_hamiltonian_gradients,
    to_canonical,
)
from covham.dirac import DiracCoupling
from covham.dynamics import evolve_amplitudes, source_rate
from covham.errors import CanonicalStructureError
from covham.fields import em_field, scalar_field, spinor_field, tensor_field
from covham.minkowski import on_shell_k
from covham.modes import build_mode_grid
from covham.worldlines import static_worldline, uniform_worldline

SCALAR = scalar_field()
VECTOR = tensor_field(rank=1, a2=0.7, b2=0.7 * 1.3**2)
EM = em_field()
SPINOR = spinor_field(s=1.0, m=1.2, c=1.0)
ALL_SPECIES = [SCALAR, VECTOR, EM, SPINOR]

XI = DiracCoupling(xi1=np.array([0.4, -0.2 + 0.1j, 0.3, 0.05]),
                   xi2=np.array([0.1, 0.2, -0.15, 0.3j]))


def species_k(field):
    return on_shell_k([0.5, -0.3, 0.8], field.kappa)


def random_amps(field, rng):
    shape = field.component_shape
    a = rng.normal(size=shape) + 1j * rng.normal(size=shape)
    if field.kind == "em":
        return a, None
    return a, rng.normal(size=shape) + 1j * rng.normal(size=shape)


def make_sources(field):
    xi = XI if field.kind == "spinor" else None
    return [
        static_worldline([0.2, -0.1, 0.3], coupling=0.8, xi=xi),
        uniform_worldline([-0.3, 0.2, 0.0], [0.2, -0.1, 0.3],
                          coupling=-1.1, xi=xi),
    ]


def static_closed_form(field, w, k):
    """Exact coefficients for a single static source with t_start = 0."""
    k0 = k[0]
    r0 = source_rate(field, [w], k, 0.0)

    def amp_at(x0):
        int_plus = (np.exp(+1j * k0 * x0) - 1.0) / (+1j * k0)
        int_minus = (np.exp(-1j * k0 * x0) - 1.0) / (-1j * k0)
        c_plus = r0[0] * int_plus
        c_minus = None if r0[1] is None else r0[1] * int_minus
        return c_plus, c_minus

    return amp_at


class TestCanonicalSplit:
    def test_frozen_scalar_split(self):
        # a2 = kappa = 1, k = (1, 0, 0, 0), default gauge z = 1/sqrt(2):
        # eps = 1, so T~+ = 1 gives pi_+ = (sqrt(2), 0, 0, 0), q_+ = 0
        # and T~- = i gives pi_- = 0, q_- = sqrt(2)
        k = on_shell_k([0.0, 0.0, 0.0], 1.0)
        mode = to_canonical(SCALAR, k, 1.0 + 0.0j, 1.0j)
        assert mode.plus.pi[0] == pytest.approx(np.sqrt(2.0), rel=1e-14)
        assert np.all(mode.plus.pi[1:] == 0.0)
        assert mode.plus.q == pytest.approx(0.0, abs=1e-15)
        assert np.max(np.abs(mode.minus.pi)) == pytest.approx(0.0, abs=1e-15)
        assert mode.minus.q == pytest.approx(np.sqrt(2.0), rel=1e-14)

    def test_epsilon_values(self):
        assert epsilon_scale(SCALAR, 2.0, CanonicalGauge(z=2.0 + 0.0j)) \
            == pytest.approx(0.25, rel=1e-14)
        assert epsilon_scale(spinor_field(), 2.0, DEFAULT_GAUGE) \
            == pytest.approx(0.5, rel=1e-14)
        # em scale carries no gauge dependence
        e1 = epsilon_scale(EM, 2.0, DEFAULT_GAUGE)
        e2 = epsilon_scale(EM, 2.0, CanonicalGauge(z=3.0 + 4.0j))
        assert e1 == e2 == pytest.approx(1.0 / np.sqrt(16.0 * np.pi),
                                         rel=1e-14)

    def test_roundtrip_all_species(self):
        rng = np.random.default_rng(11)
        gauges = [DEFAULT_GAUGE, CanonicalGauge(z=0.8 - 1.3j)]
        for field in ALL_SPECIES:
            k = species_k(field)
            for gauge in gauges:
                a_plus, a_minus = random_amps(field, rng)
                mode = to_canonical(field, k, a_plus, a_minus, gauge)
                b_plus, b_minus = from_canonical(field, k, mode, gauge)
                assert np.allclose(b_plus, a_plus, rtol=1e-12, atol=1e-14)
                if a_minus is None:
                    assert b_minus is None
                else:
                    assert np.allclose(b_minus, a_minus, rtol=1e-12,
                                       atol=1e-14)

    @given(
        re_p=st.floats(-5, 5), im_p=st.floats(-5, 5),
        re_m=st.floats(-5, 5), im_m=st.floats(-5, 5),
        re_z=st.floats(-2, 2), im_z=st.floats(-2, 2),
    )
    @settings(max_examples=60, deadline=None)
    def test_roundtrip_scalar_property(self, re_p, im_p, re_m, im_m,
                                       re_z, im_z):
        z = complex(re_z, im_z)
        if abs(z) < 0.1:
            z = z + 0.5
        gauge = CanonicalGauge(z=z)
        k = on_shell_k([0.4, 0.2, -0.7], 1.0)
        a_plus = complex(re_p, im_p)
        a_minus = complex(re_m, im_m)
        mode = to_canonical(SCALAR, k, a_plus, a_minus, gauge)
        b_plus, b_minus = from_canonical(SCALAR, k, mode, gauge)
        assert b_plus == pytest.approx(a_plus, rel=1e-11, abs=1e-12)
        assert b_minus == pytest.approx(a_minus, rel=1e-11, abs=1e-12)

    def test_em_single_family_enforced(self):
        k = species_k(EM)
        amp = np.ones(4, dtype=complex)
        with pytest.raises(ValueError, match="single amplitude family"):
            to_canonical(EM, k, amp, amp)

    def test_collinearity_rejection(self):
        rng = np.random.default_rng(4)
        k = species_k(SCALAR)
        mode = to_canonical(SCALAR, k, *random_amps(SCALAR, rng))
        bad_pi = mode.plus.pi.copy()
        bad_pi[1] += 0.3
        broken = CanonicalMode(field=SCALAR, k=k,
                               plus=BranchVars(q=mode.plus.q, pi=bad_pi),
                               minus=mode.minus)
        with pytest.raises(CanonicalStructureError, match="collinear"):
            from_canonical(SCALAR, k, broken)

    def test_gauge_zero_rejected(self):
        with pytest.raises(ValueError):
            CanonicalGauge(z=0.0 + 0.0j)


class TestModeHamiltonian:
    def test_frozen_free_value(self):
        # b2 / k0 * |C+|^2 with b2 = 1, k0 = 2, |C+| = 1
        k = on_shell_k([np.sqrt(3.0), 0.0, 0.0], 1.0)
        assert k[0] == pytest.approx(2.0, rel=1e-15)
        value = mode_hamiltonian(SCALAR, k, 1.0 + 0.0j, 0.0j, x0=0.7)
        assert value == pytest.approx(0.5, rel=1e-14)

    def test_conjugate_companion_doubles_free_part(self):
        rng = np.random.default_rng(7)
        k = species_k(SPINOR)
        a_plus, a_minus = random_amps(SPINOR, rng)
        j1 = mode_hamiltonian(SPINOR, k, a_plus, a_minus, x0=1.0)
        j2 = mode_hamiltonian(SPINOR, k, a_plus, a_minus, x0=1.0,
                              include_conjugate=True)
        assert j2 == pytest.approx(2.0 * j1, rel=1e-13)
        # second-order species carry no conjugate companion
        with pytest.raises(ValueError, match="spinor"):
            mode_hamiltonian(SCALAR, k, 1.0 + 0j, 0.5j, x0=1.0,
                             include_conjugate=True)

    def test_em_free_value_is_exactly_zero(self):
        rng = np.random.default_rng(9)
        k = species_k(EM)
        a, _ = random_amps(EM, rng)
        assert mode_hamiltonian(EM, k, a, None, x0=0.3) == 0.0
        mode = to_canonical(EM, k, a, None)
        x = np.array([0.3, 1.0, -2.0, 0.5])
        assert mode_hamiltonian_canonical(EM, k, mode, x) == pytest.approx(
            0.0, abs=1e-14)

    def test_canonical_matches_amplitude_form(self):
        # same J through canonical variables at any point and gauge
        rng = np.random.default_rng(21)
        x0 = 1.2
        points = [np.array([x0, 0.0, 0.0, 0.0]),
                  np.array([x0, 0.7, -1.1, 0.4])]
        gauges = [DEFAULT_GAUGE, CanonicalGauge(z=1.1 - 0.6j)]
        for field in ALL_SPECIES:
            k = species_k(field)
            sources = make_sources(field)
            c_plus, c_minus = random_amps(field, rng)
            expected = mode_hamiltonian(field, k, c_plus, c_minus, x0,
                                        sources)
            for x in points:
                for gauge in gauges:
                    mode = canonical_at_point(field, k, c_plus, c_minus, x,
                                              gauge)
                    value = mode_hamiltonian_canonical(field, k, mode, x,
                                                       sources, gauge)
                    assert value == pytest.approx(expected, rel=1e-11,
                                                  abs=1e-12)

    def test_sources_enter_additively(self):
        rng = np.random.default_rng(33)
        k = species_k(SCALAR)
        c_plus, c_minus = random_amps(SCALAR, rng)
        w1, w2 = make_sources(SCALAR)
        free = mode_hamiltonian(SCALAR, k, c_plus, c_minus, 1.0)
        j1 = mode_hamiltonian(SCALAR, k, c_plus, c_minus, 1.0, [w1])
        j2 = mode_hamiltonian(SCALAR, k, c_plus, c_minus, 1.0, [w2])
        both = mode_hamiltonian(SCALAR, k, c_plus, c_minus, 1.0, [w1, w2])
        assert both == pytest.approx(j1 + j2 - free, rel=1e-13)
        # a source that has not switched on yet contributes nothing
        later = static_worldline([0, 0, 0], coupling=3.0, t_start=5.0)
        assert mode_hamiltonian(SCALAR, k, c_plus, c_minus, 1.0, [later]) \
            == pytest.approx(free, rel=1e-14)


class TestGradients:
    def test_free_gradient_identities(self):
        rng = np.random.default_rng(13)
        for field in ALL_SPECIES:
            k = species_k(field)
            mode = to_canonical(field, k, *random_amps(field, rng))
            x = np.array([0.9, 0.1, 0.2, 0.3])
            grads = mode_hamiltonian_gradients(field, k, mode, x)
            sign = -1.0 if field.kind == "em" else 1.0
            for name, bv in mode.branches():
                g = getattr(grads, name)
                assert np.allclose(g.pi, sign * bv.pi, rtol=0, atol=1e-15)
                assert np.allclose(g.q, sign * field.kappa**2 * bv.q,
                                   rtol=0, atol=1e-15)

    @pytest.mark.parametrize("field", ALL_SPECIES,
                             ids=[f.kind + str(f.rank) for f in ALL_SPECIES])
    def test_gradients_match_finite_differences(self, field):
        rng = np.random.default_rng(17)
        k = species_k(field)
        c_plus, c_minus = random_amps(field, rng)
        x = np.array([1.2, 0.3, -0.4, 0.2])
        mode = canonical_at_point(field, k, c_plus, c_minus, x)
        defect = gradient_consistency(field, k, mode, x, make_sources(field))
        assert defect < 1e-9

    def test_gradients_match_fd_rank2(self):
        field = tensor_field(rank=2, a2=1.0, b2=0.81)
        rng = np.random.default_rng(19)
        k = species_k(field)
        c_plus, c_minus = random_amps(field, rng)
        x = np.array([1.2, 0.3, -0.4, 0.2])
        mode = canonical_at_point(field, k, c_plus, c_minus, x)
        defect = gradient_consistency(field, k, mode, x, make_sources(field))
        assert defect < 1e-9


class TestHamiltonResidual:
    @pytest.mark.parametrize("field", ALL_SPECIES,
                             ids=[f.kind + str(f.rank) for f in ALL_SPECIES])
    def test_free_residuals(self, field):
        rng = np.random.default_rng(23)
        k = species_k(field)
        c_plus, c_minus = random_amps(field, rng)
        amp_at = constant_amplitudes(c_plus, c_minus)
        x = np.array([0.8, 0.25, -0.6, 0.15])
        r1, r2 = hamilton_residual(field, k, amp_at, x)
        assert r1 < 1e-10
        assert r2 < 1e-10

    @pytest.mark.parametrize("field", ALL_SPECIES,
                             ids=[f.kind + str(f.rank) for f in ALL_SPECIES])
    def test_sourced_residuals_closed_form(self, field):
        xi = XI if field.kind == "spinor" else None
        w = static_worldline([0.2, -0.1, 0.3], coupling=0.8, xi=xi)
        k = species_k(field)
        amp_at = static_closed_form(field, w, k)
        x = np.array([1.3, 0.4, -0.2, 0.7])
        r1, r2 = hamilton_residual(field, k, amp_at, x, [w])
        assert r1 < 1e-8
        assert r2 < 1e-8

    def test_sourced_residual_from_history(self):
        w = static_worldline([0, 0, 0], coupling=1.0)
        grid = build_mode_grid(kmax=1.0, n_per_axis=2, kappa=1.0)
        hist = evolve_amplitudes(SCALAR, [w], grid, 0.0, 2.0, steps=400)
        idx = 3
        amp_at = history_amplitudes(hist, mode_index=idx)
        x = np.array([1.0, 0.3, 0.1, -0.2])
        r1, r2 = hamilton_residual(SCALAR, grid.k[idx], amp_at, x, [w],
                                   h=hist.spacing())
        assert r1 < 1e-6
        assert r2 < 1e-6

    def test_residual_flags_wrong_dynamics(self):
        w = static_worldline([0.2, -0.1, 0.3], coupling=0.8)
        k = species_k(SCALAR)
        good = static_closed_form(SCALAR, w, k)

        def corrupted(x0):
            c_plus, c_minus = good(x0)
            return 1.1 * c_plus, c_minus

        x = np.array([1.3, 0.4, -0.2, 0.7])
        r1, r2 = hamilton_residual(SCALAR, k, corrupted, x, [w])
        assert max(r1, r2) > 1e-3

    def test_history_provider_rejects_off_sample(self):
        w = static_worldline([0, 0, 0], coupling=1.0)
        grid = build_mode_grid(kmax=1.0, n_per_axis=1, kappa=1.0)
        hist = evolve_amplitudes(SCALAR, [w], grid, 0.0, 1.0, steps=10)
        amp_at = history_amplitudes(hist)
        with pytest.raises(ValueError, match="sample"):
            amp_at(0.123)
