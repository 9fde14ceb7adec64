import cmath
import math

import numpy as np
import pytest
from hypothesis import assume, given, settings as hyp_settings
from hypothesis import strategies as st

from modules.errors import BranchError, DomainError, SingularityError
from modules.model import (
    MatrixForm,
    Regime,
    ShapeParams,
    SystemConfig,
    TransferMatrix2,
    cos_kappa_from_tangent,
    derive_geometry,
    eigen_structure,
    kappa_phasor,
    limit_matrix,
    shape_params,
    sinc,
    wavenumbers,
)

energies = st.floats(min_value=1e-2, max_value=1e2, allow_nan=False, allow_infinity=False)
heights = st.floats(min_value=1e-2, max_value=1e2, allow_nan=False, allow_infinity=False)


def _random_config(rng, regime: Regime):
    V = rng.uniform(0.1, 50.0)
    L = 10 ** rng.uniform(-2, 2)
    c = 10 ** rng.uniform(-2, 1)
    cfg = SystemConfig(V=V, L=L, c=c, regime=regime)
    if regime is Regime.ABOVE:
        E = V * (1.0 + rng.uniform(1e-3, 10.0))
    else:
        E = V * rng.uniform(1e-3, 1.0 - 1e-3)
    return cfg, E


class TestGeometry:
    @pytest.mark.parametrize("L, c, a, b", [
        (100.0, 0.2, 83.3333333333, 16.6666666667),
        (15.0, 3.0, 3.75, 11.25),
        (1.0, 1.0, 0.5, 0.5),
    ])
    def test_derive_geometry(self, L, c, a, b):
        got_a, got_b = derive_geometry(L, c)
        assert got_a == pytest.approx(a, rel=1e-10)
        assert got_b == pytest.approx(b, rel=1e-10)
        assert got_a + got_b == pytest.approx(L, rel=1e-15)

    @pytest.mark.parametrize("L, c", [(0.0, 1.0), (-1.0, 1.0), (1.0, 0.0), (1.0, -0.5)])
    def test_invalid_geometry(self, L, c):
        with pytest.raises(DomainError):
            derive_geometry(L, c)

    def test_system_config_validation(self):
        with pytest.raises(DomainError):
            SystemConfig(V=-1.0, L=1.0, c=1.0)
        with pytest.raises(DomainError):
            SystemConfig(V=0.0, L=1.0, c=1.0, regime=Regime.BELOW)
        cfg = SystemConfig(V=15.0, L=15.0, c=3.0, regime='below')
        assert cfg.regime is Regime.BELOW
        assert cfg.effective_height == 3.75
        assert cfg.linear_threshold == 2531.25
        assert cfg.with_c(1.0).c == 1.0
        assert cfg.with_regime(Regime.ABOVE).regime is Regime.ABOVE


class TestWavenumbers:
    def test_above_example(self):
        w = wavenumbers(16.0, 15.0, Regime.ABOVE)
        assert w.k == pytest.approx(4.0)
        assert w.q == pytest.approx(1.0)
        assert w.xi == pytest.approx(4.25)
        assert w.eta == pytest.approx(-3.75)

    def test_below_example(self):
        w = wavenumbers(11.0, 15.0, Regime.BELOW)
        assert w.k == pytest.approx(3.31662, abs=1e-5)
        assert w.q == pytest.approx(2.0)
        assert w.xi == pytest.approx(2.26134, abs=1e-5)
        assert w.eta == pytest.approx(-1.05529, abs=1e-5)

    def test_singular_at_barrier_top(self):
        with pytest.raises(SingularityError):
            wavenumbers(15.0, 15.0, Regime.ABOVE)

    def test_regime_mismatch(self):
        with pytest.raises(DomainError) as exc:
            wavenumbers(10.0, 15.0, Regime.ABOVE)
        assert not isinstance(exc.value, SingularityError)
        with pytest.raises(DomainError):
            wavenumbers(20.0, 15.0, Regime.BELOW)

    @given(E=energies, V=heights)
    @hyp_settings(max_examples=200, deadline=None)
    def test_xi_eta_identity(self, E, V):
        assume(abs(E - V) > 1e-6 * V)
        regime = Regime.ABOVE if E > V else Regime.BELOW
        w = wavenumbers(E, V, regime)
        assert abs(w.xi ** 2 - w.eta ** 2 - 4.0) <= 1e-12 * w.xi ** 2


class TestShapeParams:
    def test_below_example(self):
        sp = shape_params(SystemConfig(V=8.0, L=2.0, c=1.0, regime=Regime.BELOW), 6.0)
        assert sp.phi_squared == pytest.approx(8.0, rel=1e-12)
        assert sp.phi.real == pytest.approx(2.828427, abs=1e-6)
        assert sp.is_real

    def test_z_is_kL(self):
        sp = shape_params(SystemConfig(V=15.0, L=1.0, c=1.0), 16.0)
        assert sp.z == pytest.approx(4.0)
        assert sp.f == pytest.approx(3.0625)
        assert sp.d == pytest.approx(-0.9375)

    def test_phi_vanishes_at_effective_height(self):
        sp = shape_params(SystemConfig(V=15.0, L=1.0, c=1.0, regime=Regime.BELOW), 7.5)
        assert abs(sp.phi) < 1e-6

    def test_imaginary_phi_below_effective_height(self):
        sp = shape_params(SystemConfig(V=15.0, L=1.0, c=1.0, regime=Regime.BELOW), 5.0)
        assert not sp.is_real
        assert sp.phi.real == pytest.approx(0.0, abs=1e-12)
        assert sp.phi.imag > 0

    @pytest.mark.parametrize("regime", [Regime.ABOVE, Regime.BELOW])
    def test_phi_squared_identity(self, rng, regime):
        for _ in range(10_000):
            cfg, E = _random_config(rng, regime)
            sp = shape_params(cfg, E)
            expected = cfg.L ** 2 * (E - cfg.effective_height)
            scale = cfg.L ** 2 * max(E, cfg.V)
            assert abs(sp.phi_squared - expected) <= 1e-10 * scale


class TestSinc:
    def test_series_matches_direct_form(self):
        for phi in (1e-3, 1e-5, 1e-8):
            assert sinc(phi, threshold=1e-4).real == pytest.approx(math.sin(phi) / phi, rel=1e-14)
        assert sinc(0.0) == 1.0

    def test_imaginary_argument(self):
        assert sinc(2j).real == pytest.approx(math.sinh(2.0) / 2.0, rel=1e-14)
        assert abs(sinc(2j).imag) < 1e-15


class TestLimitMatrix:
    cfg = SystemConfig(V=15.0, L=1.0, c=1.0)

    def test_direct_substitution(self):
        m = limit_matrix(self.cfg, 16.0)
        f, d, z, phi = 3.0625, -0.9375, 4.0, math.sqrt(8.5)
        s = math.sin(phi) / phi
        assert m.m11 == pytest.approx(cmath.exp(-1j * z) * (math.cos(phi) + 1j * f * s), rel=1e-12)
        assert m.m12 == pytest.approx(1j * cmath.exp(-1j * z) * d * s, rel=1e-12)
        assert m.m21 == pytest.approx(-cmath.exp(1j * z) * d * s, rel=1e-12)
        assert m.m22 == pytest.approx(cmath.exp(1j * z) * (math.cos(phi) - 1j * f * s), rel=1e-12)

    def test_literal_symmetry_and_determinant(self):
        m = limit_matrix(self.cfg, 16.0, MatrixForm.LITERAL)
        sp = shape_params(self.cfg, 16.0)
        ds = sp.d * sinc(sp.phi).real
        assert m.m22 == pytest.approx(m.m11.conjugate(), rel=1e-14)
        assert m.m21 == pytest.approx(-1j * m.m12.conjugate(), rel=1e-14)
        assert m.determinant() == pytest.approx(1.0 + (1.0 + 1j) * ds * ds, rel=1e-12)

    @pytest.mark.parametrize("regime, E", [(Regime.ABOVE, 16.0), (Regime.ABOVE, 40.0),
                                           (Regime.BELOW, 10.0), (Regime.BELOW, 3.0)])
    def test_unimodular_form(self, regime, E):
        cfg = self.cfg.with_regime(regime)
        form = MatrixForm.UNIMODULAR
        m = limit_matrix(cfg, E, form)
        assert m.determinant() == pytest.approx(1.0, abs=1e-12)
        assert m.m22 == pytest.approx(m.m11.conjugate(), rel=1e-14)
        assert m.m21 == pytest.approx(m.m12.conjugate(), rel=1e-14)

    def test_forms_agree_below_barrier(self):
        cfg = self.cfg.with_regime(Regime.BELOW)
        literal = limit_matrix(cfg, 10.0, MatrixForm.LITERAL)
        unimodular = limit_matrix(cfg, 10.0, MatrixForm.UNIMODULAR)
        assert literal.frobenius_distance(unimodular) == 0.0

    def test_free_space_is_identity(self):
        m = limit_matrix(SystemConfig(V=0.0, L=2.0, c=1.0), 3.0)
        assert m.frobenius_distance(TransferMatrix2.identity()) < 1e-12

    def test_small_phi_limit(self):
        cfg = self.cfg.with_regime(Regime.BELOW)
        E = cfg.effective_height * (1.0 + 1e-12)
        sp = shape_params(cfg, E)
        m = limit_matrix(cfg, E)
        assert m.m11 == pytest.approx(cmath.exp(-1j * sp.z) * (1.0 + 1j * sp.f), abs=1e-6)
        assert m.m12 == pytest.approx(-1j * cmath.exp(-1j * sp.z) * sp.d, abs=1e-6)

    def test_continuous_across_effective_height(self):
        cfg = self.cfg.with_regime(Regime.BELOW)
        Veff = cfg.effective_height
        upper = limit_matrix(cfg, Veff + 1e-9)
        lower = limit_matrix(cfg, Veff - 1e-9)
        assert upper.frobenius_distance(lower) < 1e-6


class TestEigenStructure:
    def test_eigenvalue_product_is_one(self, rng):
        for _ in range(10_000):
            V = rng.uniform(0.1, 50.0)
            cfg = SystemConfig(V=V, L=10 ** rng.uniform(-1, 1.5), c=rng.uniform(0.05, 5.0))
            E = V * (1.0 + rng.uniform(1e-3, 10.0))
            sp = shape_params(cfg, E)
            eig = eigen_structure(sp)
            assert abs(eig.lambda1 * eig.lambda2 - 1.0) < 1e-12 * max(1.0, eig.tau ** 2)
            assert eig.tau >= 1.0
            trace = 2.0 * eig.tau * math.cos(sp.phi.real - eig.kappa)
            assert (eig.lambda1 + eig.lambda2).real == pytest.approx(trace, rel=1e-12, abs=1e-12)

    def test_tangent_form_matches_phasor(self, rng):
        for _ in range(10_000):
            cfg, E = _random_config(rng, Regime.ABOVE)
            sp = shape_params(cfg, E)
            assert cos_kappa_from_tangent(sp) == pytest.approx(kappa_phasor(sp).real, abs=1e-12)

    def test_unit_modulus_inside_band(self, rng):
        inside = outside = 0
        for _ in range(10_000):
            cfg, E = _random_config(rng, Regime.ABOVE)
            sp = shape_params(cfg, E)
            eig = eigen_structure(sp)
            half_trace = eig.tau * math.cos(sp.phi.real - eig.kappa)
            margin = 1e-9 * eig.tau
            if abs(half_trace) <= 1.0 - margin:
                inside += 1
                assert abs(eig.lambda1) == pytest.approx(1.0, abs=1e-9)
                assert abs(eig.lambda2) == pytest.approx(1.0, abs=1e-9)
            elif abs(half_trace) >= 1.0 + margin:
                outside += 1
                assert eig.lambda1.imag == 0.0 and eig.lambda2.imag == 0.0
                assert max(abs(eig.lambda1), abs(eig.lambda2)) > 1.0
        assert inside > 100 and outside > 10

    def test_zero_d_gives_unit_modulus(self):
        waves = wavenumbers(16.0, 15.0, Regime.ABOVE)
        sp = ShapeParams(f=2.0, d=0.0, z=0.0, phi=2.0 + 0j, phi_squared=4.0,
                         regime=Regime.ABOVE, waves=waves)
        eig = eigen_structure(sp)
        assert eig.tau == 1.0
        assert abs(eig.lambda1) == pytest.approx(1.0, abs=1e-12)
        assert abs(eig.lambda2) == pytest.approx(1.0, abs=1e-12)

    def test_zero_f_at_quarter_period(self):
        waves = wavenumbers(16.0, 15.0, Regime.ABOVE)
        phi = math.pi / 2
        sp = ShapeParams(f=0.0, d=0.0, z=0.0, phi=phi + 0j, phi_squared=phi * phi,
                         regime=Regime.ABOVE, waves=waves)
        assert eigen_structure(sp).kappa == pytest.approx(0.0, abs=1e-15)
        assert cos_kappa_from_tangent(sp) == pytest.approx(1.0)

    def test_kappa_in_principal_range(self, rng):
        for _ in range(1_000):
            cfg, E = _random_config(rng, Regime.ABOVE)
            kappa = eigen_structure(shape_params(cfg, E)).kappa
            assert -np.pi < kappa <= np.pi

    def test_imaginary_phi_is_rejected(self):
        cfg = SystemConfig(V=15.0, L=1.0, c=1.0, regime=Regime.BELOW)
        with pytest.raises(BranchError):
            eigen_structure(shape_params(cfg, 5.0))
        with pytest.raises(BranchError):
            cos_kappa_from_tangent(shape_params(cfg, 5.0))
