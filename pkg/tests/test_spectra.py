import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from spectral_lab.errors import MalformedSpectrumError, RepresentabilityError
from spectral_lab.measure import DEFAULT_SYSTEM
from spectral_lab.spectra import (
    Custom,
    DensityCalibrated,
    Exponential,
    Linear,
    PowerLaw,
    PowerLawScaled,
    PowerLog,
    Spectrum,
    Zero,
    beta_eval,
    check_orthogonal_combinatorial,
    check_orthogonal_gram,
    density_family,
    dimension_family,
    gram_matrix,
    level_set_family,
    read_spectrum_csv,
    spectrum_window,
    table_family,
    write_spectrum_csv,
)

BUILTINS = [
    Zero(),
    Linear(),
    PowerLaw(0.3),
    PowerLaw(0.5),
    PowerLawScaled(0.5, 1.5),
    PowerLawScaled(1.0, 4.0),
    Exponential(2.0),
    Exponential(3.0),
    PowerLog(0.5),
    PowerLog(1.0),
    DensityCalibrated(0.5, 3.0),
    DensityCalibrated(1.0, 0.5),
]


class TestBeta:
    def test_examples(self):
        assert beta_eval(Linear(), 7) == 7
        assert beta_eval(PowerLaw(0.5), 3) == 9
        assert beta_eval(DensityCalibrated(1, 2), 5) == 5
        assert beta_eval(Exponential(2), -4) == -16
        assert beta_eval(PowerLawScaled(0.5, 2), 3) == 36

    def test_power_log_at_small_n(self):
        f = PowerLog(0.7)
        assert f(0) == 0 and f(1) == 0 and f(-1) == 0

    def test_windows(self):
        assert spectrum_window(Linear(), 1).tolist() == [[-1, -1], [0, 0], [1, 1]]
        log2 = math.log(2)
        assert np.allclose(
            spectrum_window(PowerLog(1), 2), [[-2, -2 * log2], [-1, 0], [0, 0], [1, 0], [2, 2 * log2]], atol=0
        )
        assert spectrum_window(Exponential(2), 2).tolist() == [[-2, -4], [-1, -2], [0, 0], [1, 2], [2, 4]]

    def test_window_size(self):
        assert spectrum_window(DensityCalibrated(0.5, 3), 100).shape == (201, 2)

    def test_exponential_range(self):
        f = Exponential(2)
        assert f.n_max == 1023
        assert math.isfinite(f(1023))
        with pytest.raises(RepresentabilityError):
            f(1024)
        with pytest.raises(RepresentabilityError):
            spectrum_window(f, 2000)
        assert Exponential(3).n_max == math.floor(1023 * math.log(2) / math.log(3))

    @pytest.mark.parametrize(
        "make",
        [
            lambda: PowerLaw(0),
            lambda: PowerLaw(1),
            lambda: PowerLawScaled(0.5, 1),
            lambda: Exponential(1),
            lambda: PowerLog(0),
            lambda: PowerLog(1.5),
            lambda: DensityCalibrated(0.5, 0),
        ],
    )
    def test_parameter_validation(self, make):
        with pytest.raises(ValueError):
            make()

    def test_integer_domain(self):
        with pytest.raises(TypeError):
            Linear().values(np.array([0.5]))

    @pytest.mark.parametrize("fam", BUILTINS, ids=lambda f: f.describe())
    def test_odd_on_large_window(self, fam):
        top = 10**6 if fam.n_max is None else fam.n_max
        n = np.unique(np.concatenate([np.arange(0, min(2000, top + 1)), np.linspace(0, top, 5000).astype(np.int64)]))
        assert np.array_equal(fam.values(-n), -fam.values(n))

    @given(st.floats(0.05, 1.0), st.integers(-10**6, 10**6))
    def test_density_calibrated_s2_is_power_law(self, t, n):
        a = DensityCalibrated(t, 2.0)
        b = Linear() if t == 1 else PowerLaw(t)
        assert a(n) == b(n)

    def test_custom_validation(self):
        with pytest.raises(MalformedSpectrumError):
            Custom(lambda n: 1.0)(0)
        with pytest.raises(MalformedSpectrumError):
            Custom(lambda n: math.inf if n else 0.0)(3)
        with pytest.raises(MalformedSpectrumError):
            Custom({0: 0.0}.__getitem__)(4)
        assert Custom(lambda n: n * n * np.sign(n))(3) == 9

    def test_table_family(self):
        f = table_family([0, 1, -1], [0.0, 2.5, -2.5])
        assert f(1) == 2.5
        with pytest.raises(MalformedSpectrumError):
            table_family([0, 1, 1], [0, 1, 2])


class TestConstructions:
    def test_dimension_family(self):
        assert dimension_family(0) == Exponential(2.0)
        assert dimension_family(1) == Linear()
        assert dimension_family(0.4) == PowerLaw(0.4)

    def test_level_sets_distinct_at_n1(self):
        fams = [level_set_family(0.5, a) for a in (1.5, 2, 4, 8)]
        firsts = {f(1) for f in fams}
        assert len(firsts) == 4
        assert level_set_family(0, 3) == Exponential(3)

    def test_density_family(self):
        assert density_family(0.5, 0) == PowerLog(0.5)
        assert density_family(0.5, 3) == DensityCalibrated(0.5, 3)

    def test_spectrum_membership(self):
        sp = Spectrum(PowerLaw(0.5))
        assert (3, 9) in sp and (3, 8) not in sp and (0.5, 0) not in sp
        with pytest.raises(ValueError):
            sp.points()
        assert Spectrum(Linear(), 4).points().shape == (9, 2)


class TestOrthogonality:
    def test_linear_window_passes(self):
        assert check_orthogonal_combinatorial(spectrum_window(Linear(), 100)).passed

    def test_collision_reported(self):
        rep = check_orthogonal_combinatorial([(0, 0), (0, 1)])
        assert not rep.passed
        assert "(0, 0)" in rep.failures[0] and "(0, 1)" in rep.failures[0]

    def test_irregular_heights(self):
        assert check_orthogonal_combinatorial([(0, 0), (2, math.pi), (5, -1.1)]).passed

    def test_non_integer_rejected(self):
        with pytest.raises(MalformedSpectrumError):
            check_orthogonal_combinatorial([(0, 0), (0.5, 1)])

    def test_gram_examples(self):
        G = gram_matrix(DEFAULT_SYSTEM, spectrum_window(PowerLaw(0.5), 5))
        assert G.shape == (11, 11)
        assert np.abs(G - np.eye(11)).max() <= 1e-12
        assert gram_matrix(DEFAULT_SYSTEM, [(0, 0)]).tolist() == [[1]]
        G2 = gram_matrix(DEFAULT_SYSTEM, [(0, 0), (0.5, 0)])
        assert abs(G2[0, 1]) == pytest.approx(2 / math.pi, abs=1e-12)
        assert not check_orthogonal_gram([(0, 0), (0.5, 0)]).passed

    @pytest.mark.parametrize("fam", BUILTINS, ids=lambda f: f.describe())
    @pytest.mark.parametrize("N", [10, 100, 1000])
    def test_builtins_orthogonal(self, fam, N):
        if fam.n_max is not None and N > fam.n_max:
            N = fam.n_max
        assert check_orthogonal_combinatorial(spectrum_window(fam, N)).passed

    @pytest.mark.parametrize("fam", BUILTINS, ids=lambda f: f.describe())
    def test_combinatorial_and_gram_agree(self, fam):
        pts = spectrum_window(fam, 60)
        assert check_orthogonal_combinatorial(pts).passed == check_orthogonal_gram(pts).passed == True  # noqa: E712

    @given(st.lists(st.integers(-30, 30), min_size=1, max_size=25), st.data())
    def test_agreement_on_random_point_lists(self, ns, data):
        ys = data.draw(st.lists(st.floats(-1e3, 1e3), min_size=len(ns), max_size=len(ns)))
        pts = list(zip(ns, ys))
        assert check_orthogonal_combinatorial(pts).passed == check_orthogonal_gram(pts).passed


class TestCsv:
    def test_round_trip(self):
        pts = spectrum_window(PowerLog(0.5), 20)
        text = write_spectrum_csv(pts)
        assert text.splitlines()[0] == "n,beta"
        assert np.array_equal(read_spectrum_csv(text), pts)

    def test_seventeen_digits(self):
        text = write_spectrum_csv(spectrum_window(PowerLog(1.0), 2))
        assert "1.3862943611198906" in text

    @pytest.mark.parametrize("bad", ["x,y\n0,0\n", "n,beta\n0.5,1\n", "n,beta\n1\n"])
    def test_malformed(self, bad):
        with pytest.raises(MalformedSpectrumError):
            read_spectrum_csv(bad)
