import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from seminfo import CompressionSpec, DomainError, Verdict, decompose_loss


@pytest.mark.parametrize(
    "spec, expected",
    [
        ((10, 4, 4), (6, 6, 0, Verdict.LOSSLESS)),
        ((10, 3, 4), (7, 6, 1, Verdict.LOSSY)),
        ((5, 5, 5), (0, 0, 0, Verdict.LOSSLESS)),
    ],
)
def test_worked_examples(spec, expected):
    d = decompose_loss(CompressionSpec(*spec))
    assert (d.total, d.intended, d.lossy, d.verdict) == expected


def test_over_provisioned_encoder_keeps_negative_lossy():
    d = decompose_loss(CompressionSpec(8, 6, 2))
    assert d.lossy == -4 and d.verdict is Verdict.LOSSLESS
    assert d.total == 2


@pytest.mark.parametrize("spec", [(-1, 0, 0), (3, -0.5, 1), (3, 1, 4)])
def test_invalid_specs(spec):
    with pytest.raises(DomainError):
        CompressionSpec(*spec)


entropies = st.floats(0, 50, allow_nan=False)


@settings(max_examples=300)
@given(entropies, entropies, entropies)
def test_identity_and_verdict(a, b, c):
    h_w, h_zbar = max(a, c), min(a, c)
    d = decompose_loss(CompressionSpec(h_w, b, h_zbar))
    assert d.total == d.intended + d.lossy
    assert (d.verdict is Verdict.LOSSLESS) == (b >= h_zbar)


@given(st.floats(0.5, 20), st.floats(0, 20), st.floats(0, 0.5))
def test_homogeneous(h_w, h_x, frac):
    spec = CompressionSpec(h_w, h_x, h_w * frac)
    d1 = decompose_loss(spec)
    d2 = decompose_loss(CompressionSpec(2 * h_w, 2 * h_x, 2 * spec.h_zbar))
    assert d2.total == pytest.approx(2 * d1.total)
    assert d2.intended == pytest.approx(2 * d1.intended)
    assert d2.lossy == pytest.approx(2 * d1.lossy, abs=1e-12)
