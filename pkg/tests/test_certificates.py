import math

import numpy as np
import pytest

from sepvol import (
    DensityMatrix,
    Verdict,
    certify_all,
    certify_concurrence,
    certify_entangled_ball,
    certify_mixed_ball,
    certify_purity,
    certify_spin_l1,
    concurrence_lower_bound,
    concurrence_witness,
    entangled_ball_radius,
    entangled_ball_witness_floor,
    l1_spin_norm,
    max_entangled_state,
    mix_with_identity,
    mixed_ball_radius,
    ppt_check,
    purity,
    purity_threshold,
    validate_density,
)
from sepvol.certificates import BallSpec
from sepvol.sampling import Measure, SeedSpec, rng_from_spec, sample_state

import oracles
from conftest import make_random, make_werner


def local_shift_clock(d, a, b):
    """Generalized-Pauli conjugation X^a Z^b for one subsystem."""
    x = np.zeros((d, d), dtype=complex)
    for j in range(d):
        x[(j + a) % d, j] = 1.0
    z = np.diag(np.exp(2j * np.pi * b * np.arange(d) / d))
    return x @ z


class TestL1SpinNorm:
    def test_maximally_mixed_is_zero(self):
        state = validate_density(np.eye(6) / 6, (2, 3))
        assert l1_spin_norm(state) <= 1e-12

    def test_bell_is_three(self, bell):
        assert abs(l1_spin_norm(bell) - 3.0) <= 1e-12

    @pytest.mark.parametrize("eps", [0.0, 0.2, 0.5, 1.0])
    def test_werner_scales_linearly(self, eps):
        w = make_werner(eps)
        assert abs(l1_spin_norm(w) - 3 * eps) <= 1e-10
        assert abs(oracles.l1_norm(w.matrix, (2, 2)) - 3 * eps) <= 1e-10


class TestSpinL1Certificate:
    def test_maximally_mixed(self):
        res = certify_spin_l1(validate_density(np.eye(4) / 4, (2, 2)))
        assert res.verdict is Verdict.SEPARABLE
        assert res.witness <= 1e-12
        assert res.threshold == 1.0

    def test_werner_inside(self):
        res = certify_spin_l1(make_werner(0.3))
        assert res.verdict is Verdict.SEPARABLE
        assert res.witness == pytest.approx(0.9, abs=1e-10)

    def test_werner_outside(self):
        # Werner(0.4) is in fact entangled; the certificate just abstains
        res = certify_spin_l1(make_werner(0.4))
        assert res.verdict is Verdict.INCONCLUSIVE
        assert res.witness == pytest.approx(1.2, abs=1e-10)


class TestPurityCertificate:
    def test_threshold_values(self):
        assert purity_threshold(4) == pytest.approx(4 / 15)
        assert purity_threshold(6) == pytest.approx(6 / 35)
        assert purity_threshold(9) == pytest.approx(9 / 80)
        with pytest.raises(ValueError):
            purity_threshold(1)

    def test_werner_low_purity(self):
        res = certify_purity(make_werner(0.1))
        assert res.verdict is Verdict.SEPARABLE
        assert res.witness == pytest.approx(0.2575, abs=1e-12)

    def test_werner_third_abstains(self):
        # Werner(1/3) is separable, but its purity 1/3 exceeds 4/15
        res = certify_purity(make_werner(1 / 3))
        assert res.verdict is Verdict.INCONCLUSIVE

    def test_pure_state_abstains(self, bell):
        res = certify_purity(bell)
        assert res.verdict is Verdict.INCONCLUSIVE
        assert res.witness == pytest.approx(1.0)


class TestMixedBall:
    def test_radius_values(self):
        assert mixed_ball_radius(4) == pytest.approx(1 / math.sqrt(45))
        assert mixed_ball_radius(9) == pytest.approx(1 / math.sqrt(640))
        assert mixed_ball_radius(2) == pytest.approx(1 / math.sqrt(3))
        with pytest.raises(ValueError):
            mixed_ball_radius(1)

    def test_mixture_endpoints(self, bell):
        assert np.abs(mix_with_identity(bell, 0.0).matrix - np.eye(4) / 4).max() <= 1e-15
        assert np.abs(mix_with_identity(bell, 1.0).matrix - bell.matrix).max() <= 1e-15

    def test_mixture_is_werner_family(self, bell):
        mix = mix_with_identity(bell, 0.6)
        assert np.abs(mix.matrix - oracles.werner_matrix(0.6)).max() <= 1e-15

    def test_epsilon_out_of_range(self, bell):
        with pytest.raises(ValueError):
            mix_with_identity(bell, 1.2)
        with pytest.raises(ValueError):
            certify_mixed_ball(bell, -0.1)

    def test_inside_outside(self, bell):
        assert certify_mixed_ball(bell, 0.14).verdict is Verdict.SEPARABLE
        assert certify_mixed_ball(bell, 0.16).verdict is Verdict.INCONCLUSIVE
        assert certify_mixed_ball(bell, 0.0).verdict is Verdict.SEPARABLE

    def test_certified_mixtures_pass_purity_certificate(self, rng):
        # run the containment argument forward on random directions
        for dims in [(2, 2), (2, 3)]:
            eps = mixed_ball_radius(math.prod(dims)) * (1 - 1e-6)
            for _ in range(100):
                prime = make_random(dims, rng)
                assert certify_mixed_ball(prime, eps).verdict is Verdict.SEPARABLE
                mix = mix_with_identity(prime, eps)
                assert certify_purity(mix).verdict is Verdict.SEPARABLE


class TestConcurrence:
    def test_bell_lower_bound_is_one(self, bell):
        assert concurrence_lower_bound(bell) == pytest.approx(1.0, abs=1e-12)

    def test_pure_product_is_zero(self, rng):
        v = rng.standard_normal(2) + 1j * rng.standard_normal(2)
        w = rng.standard_normal(2) + 1j * rng.standard_normal(2)
        v /= np.linalg.norm(v)
        w /= np.linalg.norm(w)
        vec = np.kron(v, w)
        state = validate_density(np.outer(vec, vec.conj()), (2, 2))
        assert concurrence_lower_bound(state) == pytest.approx(0.0, abs=1e-7)

    def test_werner_08(self):
        assert concurrence_lower_bound(make_werner(0.8)) == pytest.approx(math.sqrt(0.46), abs=1e-12)

    def test_negative_witness_clamped(self):
        state = validate_density(np.eye(4) / 4, (2, 2))
        assert concurrence_witness(state) < 0
        assert concurrence_lower_bound(state) == 0.0

    def test_requires_two_equal_qudits(self, rng):
        with pytest.raises(ValueError):
            concurrence_lower_bound(make_random((2, 3), rng))
        with pytest.raises(ValueError):
            concurrence_lower_bound(make_random((8,), rng))

    def test_certificate_verdicts(self, bell):
        assert certify_concurrence(bell).verdict is Verdict.ENTANGLED
        mixed = validate_density(np.eye(4) / 4, (2, 2))
        assert certify_concurrence(mixed).verdict is Verdict.INCONCLUSIVE
        # Werner(0.5) is entangled but the witness 2(0.4375 - 0.5) is negative
        assert certify_concurrence(make_werner(0.5)).verdict is Verdict.INCONCLUSIVE


class TestEntangledBall:
    def test_radius_values(self):
        assert entangled_ball_radius(2) == pytest.approx((4 - math.sqrt(10)) / 3)
        assert entangled_ball_radius(3) == pytest.approx((9 - math.sqrt(57)) / 4)
        with pytest.raises(ValueError):
            entangled_ball_radius(1)

    def test_radius_increases_to_half(self):
        radii = [entangled_ball_radius(d) for d in range(2, 12)]
        assert all(b > a for a, b in zip(radii, radii[1:]))
        big = entangled_ball_radius(1000)
        assert big < 0.5
        assert 0.5 - big <= 1e-3

    def test_max_entangled_state(self):
        phi2 = max_entangled_state(2)
        expected = np.zeros((4, 4))
        expected[np.ix_([0, 3], [0, 3])] = 0.5
        assert np.abs(phi2.matrix - expected).max() <= 1e-15
        phi3 = max_entangled_state(3)
        assert purity(phi3) == pytest.approx(1.0)
        from sepvol import partial_trace

        marginal = partial_trace(phi3, keep=(0,))
        assert np.abs(marginal - np.eye(3) / 3).max() <= 1e-12
        for d in (2, 3, 4):
            expected_c = math.sqrt(2 * (1 - 1 / d))
            assert concurrence_lower_bound(max_entangled_state(d)) == pytest.approx(expected_c)

    def test_ball_verdicts(self):
        mixed = validate_density(np.eye(4) / 4, (2, 2))
        res, mixture = certify_entangled_ball(mixed, 0.2, 2)
        assert res.verdict is Verdict.ENTANGLED
        # the mixture is Werner(0.8): (1 - 0.2)|Phi><Phi| + 0.2 I/4
        assert np.abs(mixture.matrix - oracles.werner_matrix(0.8)).max() <= 1e-15
        assert concurrence_lower_bound(mixture) == pytest.approx(math.sqrt(0.46), abs=1e-12)

        res, _ = certify_entangled_ball(mixed, 0.3, 2)
        assert res.verdict is Verdict.INCONCLUSIVE

        res, mixture = certify_entangled_ball(mixed, 0.0, 2)
        assert res.verdict is Verdict.ENTANGLED
        assert purity(mixture) == pytest.approx(1.0)

    def test_dimension_checks(self, rng):
        with pytest.raises(ValueError):
            certify_entangled_ball(make_random((2, 3), rng), 0.1, 2)
        with pytest.raises(ValueError):
            certify_entangled_ball(make_random((2, 2), rng), 1.5, 2)

    @pytest.mark.parametrize("d", [2, 3])
    def test_witness_floor_inside_ball(self, d, rng):
        # the concurrence witness of any in-ball mixture clears the
        # closed-form quadratic floor, which is positive there
        radius = entangled_ball_radius(d)
        for _ in range(100):
            prime = make_random((d, d), rng)
            eps = rng.uniform(0.0, radius)
            res, mixture = certify_entangled_ball(prime, eps, d)
            floor = entangled_ball_witness_floor(d, eps)
            assert concurrence_witness(mixture) >= floor - 1e-9
            if res.verdict is Verdict.ENTANGLED:
                assert concurrence_lower_bound(mixture) > 0


class TestBallSpec:
    def test_validation(self):
        spec = BallSpec("maximally_mixed", 0.1, mixed_ball_radius(4))
        assert spec.epsilon_star == pytest.approx(0.149071, abs=1e-6)
        with pytest.raises(ValueError):
            BallSpec("maximally_mixed", 1.5, 0.1)
        with pytest.raises(ValueError):
            BallSpec("maximally_entangled", 0.5, 0.0)


class TestPPTCheck:
    def test_werner_entangled(self):
        res = ppt_check(make_werner(0.5), 1)
        assert res.verdict is Verdict.ENTANGLED
        assert res.witness == pytest.approx(-0.125, abs=1e-12)

    def test_werner_boundary_separable(self):
        res = ppt_check(make_werner(1 / 3 - 1e-6), 1)
        assert res.verdict is Verdict.SEPARABLE
        assert res.witness > 0

    def test_product_state_not_entangled(self, rng):
        for dims in [(2, 2), (3, 3)]:
            parts = [oracles.random_mixed(d, rng) for d in dims]
            state = validate_density(np.kron(parts[0], parts[1]), dims)
            res = ppt_check(state, 0)
            assert res.verdict is not Verdict.ENTANGLED
            assert res.witness >= -1e-10

    def test_exact_only_on_small_dims(self, rng):
        # a PSD partial transpose on (3, 3) proves nothing
        parts = [oracles.random_mixed(3, rng) for _ in range(2)]
        state = validate_density(np.kron(parts[0], parts[1]), (3, 3))
        assert ppt_check(state, 0).verdict is Verdict.INCONCLUSIVE

    def test_invalid_cut(self, bell):
        with pytest.raises(ValueError):
            ppt_check(bell, 5)


class TestCertifyAll:
    def test_maximally_mixed(self):
        results = {r.certificate: r for r in certify_all(validate_density(np.eye(4) / 4, (2, 2)))}
        assert results["spin_l1"].verdict is Verdict.SEPARABLE
        assert results["purity"].verdict is Verdict.SEPARABLE
        assert results["ppt_0"].verdict is Verdict.SEPARABLE
        assert results["concurrence"].verdict is Verdict.INCONCLUSIVE

    def test_bell(self, bell):
        results = {r.certificate: r for r in certify_all(bell)}
        assert results["spin_l1"].verdict is Verdict.INCONCLUSIVE
        assert results["purity"].verdict is Verdict.INCONCLUSIVE
        assert results["ppt_0"].verdict is Verdict.ENTANGLED
        assert results["concurrence"].verdict is Verdict.ENTANGLED

    def test_werner_02_consistent(self):
        results = {r.certificate: r for r in certify_all(make_werner(0.2))}
        assert results["spin_l1"].verdict is Verdict.SEPARABLE
        assert results["ppt_0"].verdict is Verdict.SEPARABLE
        assert results["purity"].verdict in (Verdict.SEPARABLE, Verdict.INCONCLUSIVE)
        assert results["concurrence"].verdict is Verdict.INCONCLUSIVE

    def test_fixed_order(self, bell):
        names = [r.certificate for r in certify_all(bell)]
        assert names == ["spin_l1", "purity", "ppt_0", "ppt_1", "concurrence"]

    def test_single_system(self, rng):
        names = [r.certificate for r in certify_all(make_random((3,), rng))]
        assert names == ["spin_l1", "purity"]


class TestSoundness:
    """No certificate may ever contradict the exact PPT oracle on 2x2/2x3."""

    @pytest.mark.parametrize("dims", [(2, 2), (2, 3)])
    def test_no_contradictions(self, dims):
        rng = rng_from_spec(SeedSpec(11, 0))
        for _ in range(2000):
            state = sample_state(dims, Measure.NATURAL, rng)
            results = {r.certificate: r for r in certify_all(state)}
            truth = results["ppt_0"].verdict
            for name in ("spin_l1", "purity"):
                if results[name].verdict is Verdict.SEPARABLE:
                    assert truth is Verdict.SEPARABLE, f"{name} certified an NPT state"
            if "concurrence" in results and results["concurrence"].verdict is Verdict.ENTANGLED:
                assert truth is Verdict.ENTANGLED, "concurrence certified a PPT state"


class TestProofChain:
    """Low purity forces a small spin L1 norm (the certificate implication)."""

    @pytest.mark.parametrize("dims", [(2, 2), (2, 3), (3, 3)])
    def test_low_purity_implies_l1(self, dims):
        rng = rng_from_spec(SeedSpec(13, 0))
        n = math.prod(dims)
        threshold = purity_threshold(n)
        for _ in range(1000):
            prime = sample_state(dims, Measure.NATURAL, rng)
            # mix toward I/N far enough that the purity certificate fires
            p_prime = purity(prime)
            eps_max = math.sqrt((threshold - 1 / n) / (p_prime - 1 / n + 1e-15))
            mix = mix_with_identity(prime, min(1.0, eps_max) * rng.uniform(0, 1))
            if purity(mix) <= threshold:
                assert l1_spin_norm(mix) <= 1 + 1e-9

    @pytest.mark.parametrize("dims", [(2, 2), (2, 3), (3, 3)])
    def test_cauchy_schwarz_norm_inequality(self, dims):
        rng = rng_from_spec(SeedSpec(17, 0))
        n = math.prod(dims)
        for _ in range(1000):
            state = sample_state(dims, Measure.NATURAL, rng)
            bound = math.sqrt((n * n - 1) * (n * purity(state) - 1))
            assert l1_spin_norm(state) <= bound + 1e-9


class TestVerdictInvariance:
    """Verdicts do not depend on the shift/clock phase conventions of the
    basis: conjugating by local generalized-Pauli operators changes no
    verdict (witness values may move only at rounding level)."""

    @pytest.mark.parametrize("dims", [(2, 2), (2, 3)])
    def test_local_shift_clock_conjugation(self, dims):
        rng = rng_from_spec(SeedSpec(19, 0))
        for _ in range(50):
            state = sample_state(dims, Measure.NATURAL, rng)
            base = [(r.certificate, r.verdict) for r in certify_all(state)]
            for _ in range(3):
                u = np.array([[1.0 + 0j]])
                for d in dims:
                    u = np.kron(u, local_shift_clock(d, int(rng.integers(d)), int(rng.integers(d))))
                rotated = validate_density(u @ state.matrix @ u.conj().T, dims)
                assert [(r.certificate, r.verdict) for r in certify_all(rotated)] == base
