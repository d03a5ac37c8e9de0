import numpy as np
import pytest

from qpband import (
    ModelSpec,
    StateVector,
    apply_layer,
    apply_symmetry,
    inner_product,
    new_product_state,
    site_x_expectation,
    states,
)
from oracles import kron_product_state


def random_state(n, seed):
    rng = np.random.default_rng(seed)
    v = rng.normal(size=2**n) + 1j * rng.normal(size=2**n)
    return StateVector(n, v / np.linalg.norm(v))


class TestProductStates:
    def test_single_site_up(self):
        assert np.allclose(new_product_state(1, ["up"]).amplitudes, [1, 0])

    def test_two_plus(self):
        assert np.allclose(new_product_state(2, ["plus", "plus"]).amplitudes, [0.5] * 4)

    def test_minus_plus_plus_matches_kron_oracle(self):
        got = new_product_state(3, ["minus", "plus", "plus"]).amplitudes
        expected = kron_product_state(["minus", "plus", "plus"])
        assert np.allclose(got, expected, atol=1e-15)
        # amplitude on index 0 is 1/sqrt(8); sign flips with bit 0
        assert got[0] == pytest.approx(1 / np.sqrt(8))
        signs = np.sign(got.real)
        assert all(signs[b] == (-1 if b & 1 else 1) for b in range(8))

    def test_length_mismatch(self):
        with pytest.raises(ValueError):
            new_product_state(3, ["up", "up"])

    def test_unknown_ket(self):
        with pytest.raises(ValueError):
            new_product_state(1, ["sideways"])

    def test_site_bounds(self):
        with pytest.raises(ValueError):
            StateVector(0, np.array([1.0]))
        with pytest.raises(ValueError):
            StateVector(17, np.zeros(2**17))


class TestLayers:
    def test_zero_angle_is_identity(self):
        psi = random_state(4, 1)
        for kind, signs in (("x-field", None), ("zz-bonds", (1,) * 4)):
            out = apply_layer(psi, kind, 0.0, signs)
            assert np.allclose(out.amplitudes, psi.amplitudes, atol=1e-15)

    def test_zz_phase_on_all_up(self):
        psi = states.all_up(3)
        theta = 0.37
        out = apply_layer(psi, "zz-bonds", theta, (1, 1, 1))
        assert out.amplitudes[0] == pytest.approx(np.exp(-3j * theta))
        assert np.allclose(out.amplitudes[1:], 0.0)

    def test_x_layer_on_plus_eigenstate(self):
        psi = states.all_plus(3)
        out = apply_layer(psi, "x-field", np.pi / 2)
        assert np.allclose(out.amplitudes, (-1j) ** 3 * psi.amplitudes, atol=1e-12)

    def test_bad_bond_signs(self):
        psi = random_state(3, 2)
        with pytest.raises(ValueError):
            apply_layer(psi, "zz-bonds", 0.1, (1, 2, 1))
        with pytest.raises(ValueError):
            apply_layer(psi, "zz-bonds", 0.1, (1, 1))
        with pytest.raises(ValueError):
            apply_layer(psi, "zz-bonds", 0.1, None)
        with pytest.raises(ValueError):
            apply_layer(psi, "x-field", 0.1, (1, 1, 1))

    def test_norm_preservation(self):
        rng = np.random.default_rng(7)
        psi = random_state(5, 3)
        for _ in range(20):
            kind = rng.choice(["x-field", "zz-bonds"])
            signs = (1,) * 5 if kind == "zz-bonds" else None
            psi = apply_layer(psi, kind, rng.uniform(-np.pi, np.pi), signs)
            assert abs(psi.norm() - 1.0) < 1e-12

    def test_zz_layer_is_diagonal(self):
        psi = random_state(5, 4)
        out = apply_layer(psi, "zz-bonds", 0.83, (1,) * 4 + (-1,))
        assert np.allclose(np.abs(out.amplitudes), np.abs(psi.amplitudes), atol=1e-14)


class TestSymmetries:
    def test_translate_moves_flip(self):
        n = 5
        for x in range(1, n + 1):
            moved = apply_symmetry(states.spin_flip(n, x), "translate", 1)
            target = states.spin_flip(n, x % n + 1)
            assert np.allclose(moved.amplitudes, target.amplitudes, atol=1e-14)

    def test_parity_squares_to_identity(self):
        psi = random_state(4, 5)
        assert np.allclose(apply_symmetry(psi, "parity", 2).amplitudes, psi.amplitudes)

    def test_translate_period(self):
        psi = random_state(5, 6)
        assert np.allclose(apply_symmetry(psi, "translate", 5).amplitudes, psi.amplitudes)

    def test_twisted_translate_periods(self):
        psi = random_state(5, 7)
        # Ttilde^N = P, Ttilde^2N = 1 (phase exactly +1)
        tn = apply_symmetry(psi, "twisted-translate", 5)
        assert np.allclose(tn.amplitudes, apply_symmetry(psi, "parity", 1).amplitudes)
        t2n = apply_symmetry(states.all_up(5), "twisted-translate", 10)
        assert np.allclose(t2n.amplitudes, states.all_up(5).amplitudes, atol=1e-15)

    def test_negative_powers_invert(self):
        psi = random_state(4, 8)
        for which in ("translate", "parity", "twisted-translate"):
            forward = apply_symmetry(psi, which, 3)
            assert np.allclose(
                apply_symmetry(forward, which, -3).amplitudes, psi.amplitudes
            )

    def test_unknown_symmetry(self):
        with pytest.raises(ValueError):
            apply_symmetry(random_state(3, 9), "rotate", 1)

    @pytest.mark.parametrize("which", ["translate", "parity"])
    def test_layers_commute_with_plain_symmetries(self, which):
        psi = random_state(5, 10)
        theta = 0.91
        for kind, signs in (("x-field", None), ("zz-bonds", (1,) * 5)):
            a = apply_symmetry(apply_layer(psi, kind, theta, signs), which)
            b = apply_layer(apply_symmetry(psi, which), kind, theta, signs)
            assert abs(abs(inner_product(a, b)) - 1.0) < 1e-12
            assert np.linalg.norm(a.amplitudes - b.amplitudes) < 1e-12

    def test_twisted_zz_commutes_with_twisted_translate(self):
        psi = random_state(5, 11)
        signs = ModelSpec.twisted(5, 1.0, 0.4).bond_signs
        a = apply_symmetry(apply_layer(psi, "zz-bonds", 0.6, signs), "twisted-translate")
        b = apply_layer(apply_symmetry(psi, "twisted-translate"), "zz-bonds", 0.6, signs)
        assert np.linalg.norm(a.amplitudes - b.amplitudes) < 1e-12


class TestObservables:
    def test_inner_product_examples(self):
        psi = random_state(4, 12)
        assert inner_product(psi, psi) == pytest.approx(1.0, abs=1e-12)
        up2 = states.all_up(2)
        down2 = new_product_state(2, ["down", "down"])
        assert inner_product(up2, down2) == pytest.approx(0.0)
        assert inner_product(
            new_product_state(1, ["plus"]), new_product_state(1, ["up"])
        ) == pytest.approx(1 / np.sqrt(2))

    def test_inner_product_conjugate_linear(self):
        a, b = random_state(3, 13), random_state(3, 14)
        assert inner_product(a, b) == pytest.approx(np.conj(inner_product(b, a)))

    def test_inner_product_dim_mismatch(self):
        with pytest.raises(ValueError):
            inner_product(random_state(3, 15), random_state(4, 16))

    def test_site_x_expectation(self):
        assert site_x_expectation(states.all_plus(3), 2) == pytest.approx(1.0)
        assert site_x_expectation(states.spin_flip(3, 1), 1) == pytest.approx(-1.0)
        assert site_x_expectation(states.all_up(3), 1) == pytest.approx(0.0)
        with pytest.raises(ValueError):
            site_x_expectation(states.all_up(3), 4)
