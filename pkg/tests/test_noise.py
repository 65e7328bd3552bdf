import numpy as np
import pytest

from graphdecode.noise import (
    amplitude_damping,
    bit_flip,
    check_completeness,
    completeness_report,
    decompose_kraus,
    depolarizing,
    iid_pauli,
    parse_channel,
    reconstruct_kraus,
    sample_error,
    sample_errors,
)
from graphdecode.pauli import identity

# chi-square critical value, 3 degrees of freedom, 0.1% level
CHI2_3DOF_999 = 16.266


def test_trivial_channels():
    for t in range(20):
        assert sample_error(depolarizing(0.0), 5, 1, t) == identity(5)
        e = sample_error(bit_flip(1.0), 5, 1, t)
        assert e.x == 0b11111 and e.z == 0


def test_depolarizing_frequency():
    ex, ez = sample_errors(depolarizing(0.1), 5, 42, 0, 10**5)
    for q in range(5):
        hit = ((ex | ez) >> q) & 1
        assert abs(hit.mean() - 0.1) < 0.004


def test_letter_distribution_chi_square():
    ch = iid_pauli(0.05, 0.1, 0.15)
    ex, ez = sample_errors(ch, 4, 9, 0, 50_000)
    x, z = (ex & 1).astype(bool), (ez & 1).astype(bool)
    obs = np.array([(~x & ~z).sum(), (x & ~z).sum(), (x & z).sum(), (~x & z).sum()])
    exp = len(ex) * np.array([0.7, 0.05, 0.1, 0.15])
    assert ((obs - exp) ** 2 / exp).sum() < CHI2_3DOF_999


def test_sampling_independent_of_chunking():
    ch = depolarizing(0.2)
    ex, ez = sample_errors(ch, 7, 3, 0, 10_000)
    ex2, ez2 = sample_errors(ch, 7, 3, 4000, 3000)
    assert np.array_equal(ex[4000:7000], ex2) and np.array_equal(ez[4000:7000], ez2)
    e = sample_error(ch, 7, 3, 5000)
    assert (e.x, e.z) == (int(ex[5000]), int(ez[5000]))
    assert e.is_hermitian


def test_decompose_examples():
    x = np.array([[0, 1], [1, 0]])
    assert np.allclose(decompose_kraus(x), (0, 1, 0, 0))
    k0, k1 = amplitude_damping(0.36)
    assert np.allclose(decompose_kraus(k0), (0.9, 0, 0.1, 0))
    assert np.allclose(decompose_kraus(k1), (0, 0.3, 0, 0.3))


def test_decompose_inverts():
    rng = np.random.default_rng(0)
    for _ in range(50):
        m = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
        assert np.max(np.abs(reconstruct_kraus(decompose_kraus(m)) - m)) < 1e-12


def test_completeness():
    assert check_completeness([np.eye(2)])
    assert not check_completeness([np.sqrt(0.5) * np.eye(2)])
    rep = completeness_report(amplitude_damping(0.36))
    assert rep.matrix_ok and rep.coefficient_ok
    assert rep.coefficient_sum == pytest.approx(1.0, abs=1e-12)


def test_coefficient_identity_holds_for_random_channels():
    # the sum equals Tr(sum E^dag E) / 2, so any complete set gives 1
    rng = np.random.default_rng(8)
    for k in (1, 2, 3, 4):
        m = rng.normal(size=(2 * k, 2)) + 1j * rng.normal(size=(2 * k, 2))
        q, _ = np.linalg.qr(m)
        ops = [q[2 * j : 2 * j + 2] for j in range(k)]
        rep = completeness_report(ops)
        assert rep.matrix_ok and rep.coefficient_ok


@pytest.mark.parametrize(
    "text, expect",
    [("depolarizing:0.03", (0.01, 0.01, 0.01)), ("bitflip:0.05", (0.05, 0, 0)), ("iid:0.01,0.002,0.003", (0.01, 0.002, 0.003))],
)
def test_parse_channel(text, expect):
    ch = parse_channel(text)
    assert (ch.px, ch.py, ch.pz) == pytest.approx(expect)
    assert parse_channel(ch.describe()) == ch


@pytest.mark.parametrize("text", ["depolarizing", "foo:0.1", "iid:0.1,0.2", "bitflip:x", "bitflip:1.5", "iid:0.5,0.5,0.5"])
def test_parse_channel_errors(text):
    with pytest.raises(ValueError):
        parse_channel(text)
