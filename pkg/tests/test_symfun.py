import itertools

import pytest

from pdeg.symfun import (
    Spectrum,
    bounded_radius,
    bounded_radius_flagged,
    complement_spectrum,
    is_t_constant,
    min_t_constant,
    named_spectrum,
    parse_spectrum_file,
    period,
    reflect_spectrum,
    restrict,
    spectrum,
    standard_decomposition,
    threshold_combination,
    window_distinctness,
    xor_spectra,
)


def all_spectra(n):
    for bits in itertools.product((0, 1), repeat=n + 1):
        yield Spectrum(bits)


def test_spectrum_basics():
    s = spectrum("0011")
    assert s.n == 3
    assert s.values == (0, 0, 1, 1)
    assert s[2] == 1
    assert s.text() == "0011"
    assert list(s) == [0, 0, 1, 1]


def test_spectrum_rejects_bad_input():
    with pytest.raises(ValueError):
        spectrum("01x1")
    with pytest.raises(ValueError):
        spectrum("")
    with pytest.raises(ValueError):
        Spectrum((0, 2, 1))


def test_parse_spectrum_file(tmp_path):
    path = tmp_path / "f.txt"
    path.write_text("  0011\n")
    assert parse_spectrum_file(str(path)).text() == "0011"


@pytest.mark.parametrize(
    "kind,n,params,expected",
    [
        ("OR", 3, (), "0111"),
        ("AND", 3, (), "0001"),
        ("MAJ", 6, (), "0000111"),
        ("MAJ", 5, (), "000111"),
        ("THR", 3, (2,), "0011"),
        ("ETHR", 3, (1,), "0100"),
        ("MOD", 4, (2, 0), "10101"),
        ("MOD", 6, (3, 1), "0100100"),
        ("CONST", 2, (1,), "111"),
        ("CONST", 2, (0,), "000"),
    ],
)
def test_named_spectrum(kind, n, params, expected):
    assert named_spectrum(kind, n, *params).text() == expected


def test_named_spectrum_rejects_bad_parameters():
    with pytest.raises(ValueError):
        named_spectrum("THR", 9, 99)
    with pytest.raises(ValueError):
        named_spectrum("THR", 9)
    with pytest.raises(ValueError):
        named_spectrum("MOD", 9, 1, 0)
    with pytest.raises(ValueError):
        named_spectrum("MOD", 9, 3, 5)
    with pytest.raises(ValueError):
        named_spectrum("NOPE", 4)
    with pytest.raises(ValueError):
        named_spectrum("CONST", 4, 2)


@pytest.mark.parametrize(
    "bits,expected",
    [
        ("10101", 2),
        ("1111", 1),
        ("0100100", 3),
        ("0011", 4),  # ends never realign: vacuous period n+1
        ("0000111", 7),
        ("01", 2),
    ],
)
def test_period_known_values(bits, expected):
    assert period(spectrum(bits)) == expected


def test_period_matches_brute_force_oracle():
    # Independent restatement: the least b such that shifting by b changes
    # nothing on the overlap.
    def oracle(values):
        n = len(values) - 1
        for b in range(1, n + 2):
            if all(values[i] == values[i + b] for i in range(n - b + 1)):
                return b

    for n in range(1, 9):
        for s in all_spectra(n):
            assert period(s) == oracle(s.values), s.text()


@pytest.mark.parametrize(
    "bits,expected,degenerate",
    [
        ("01111", 1, False),
        ("1111", 0, False),
        ("0100011", 2, False),
        ("0000111", 3, False),
        ("0100", 2, True),  # middle pair differs, window never constant
        ("10", 1, True),
    ],
)
def test_bounded_radius_known_values(bits, expected, degenerate):
    assert bounded_radius_flagged(spectrum(bits)) == (expected, degenerate)
    assert bounded_radius(spectrum(bits)) == expected


def test_bounded_radius_matches_oracle():
    def oracle(values):
        n = len(values) - 1
        for k in range((n + 3) // 2):
            window = values[k : n - k + 1]
            if len(set(window)) <= 1:
                return k, len(window) == 0

    for n in range(1, 9):
        for s in all_spectra(n):
            assert bounded_radius_flagged(s) == oracle(s.values), s.text()


def test_complement_reflect_xor():
    s = spectrum("0011")
    assert complement_spectrum(s).text() == "1100"
    assert reflect_spectrum(s).text() == "1100"
    assert reflect_spectrum(spectrum("0111")).text() == "1110"
    assert xor_spectra(s, s).text() == "0000"
    assert xor_spectra(s, complement_spectrum(s)).text() == "1111"
    with pytest.raises(ValueError):
        xor_spectra(s, spectrum("01"))


class TestStandardDecomposition:
    def test_majority_six(self):
        rep = standard_decomposition(named_spectrum("MAJ", 6), 2)
        assert rep.g.text() == "0100100"
        assert rep.h.text() == "0100011"
        assert rep.period_g == 3
        assert rep.bounded_radius_h == 2
        assert not rep.period_is_char_power
        # Same split over characteristic 3: period 3 becomes a power.
        rep3 = standard_decomposition(named_spectrum("MAJ", 6), 3)
        assert rep3.period_is_char_power

    def test_parity_four(self):
        rep = standard_decomposition(spectrum("10101"), 2)
        assert rep.g.text() == "11111"
        assert rep.h.text() == "01010"
        assert rep.period_g == 1

    def test_constant_window(self):
        rep = standard_decomposition(spectrum("1111"), 0)
        assert rep.g.text() == "1111"
        assert rep.h.text() == "0000"

    def test_small_n_rejected(self):
        with pytest.raises(ValueError):
            standard_decomposition(spectrum("111"), 0)

    def test_invariants_exhaustive(self):
        # f = g xor h always; h is constant outside a middle window; g's
        # period never exceeds the window length.
        for n in range(3, 9):
            lo = -(-n // 3)
            hi = (2 * n) // 3
            for f in all_spectra(n):
                rep = standard_decomposition(f, 2)
                assert xor_spectra(rep.g, rep.h) == f
                assert rep.period_g <= hi - lo + 1
                assert rep.bounded_radius_h <= lo
                # g agrees with f on the middle window by construction
                assert rep.g.values[lo : hi + 1] == f.values[lo : hi + 1]

    def test_period_g_minimal_among_agreeing_spectra(self):
        # No spectrum matching f on the middle window has a smaller period.
        for n in range(3, 8):
            lo = -(-n // 3)
            hi = (2 * n) // 3
            for f in all_spectra(n):
                rep = standard_decomposition(f, 2)
                best = min(
                    period(c)
                    for c in all_spectra(n)
                    if c.values[lo : hi + 1] == f.values[lo : hi + 1]
                )
                assert rep.period_g == best, f.text()


@pytest.mark.parametrize(
    "kind,n,params,zeros,ones,expected",
    [
        ("MAJ", 6, (), 2, 2, "001"),
        ("THR", 5, (2,), 0, 1, "01111"),
        ("OR", 4, (), 1, 0, "0111"),
        ("AND", 4, (), 0, 2, "001"),
    ],
)
def test_restrict_known_values(kind, n, params, zeros, ones, expected):
    f = named_spectrum(kind, n, *params)
    assert restrict(f, zeros, ones).text() == expected


def test_restrict_rejects_overflow():
    with pytest.raises(ValueError):
        restrict(spectrum("0011"), 2, 2)
    with pytest.raises(ValueError):
        restrict(spectrum("0011"), -1, 0)


def test_threshold_combination_known_and_telescoping():
    assert threshold_combination(named_spectrum("ETHR", 3, 1)) == (0, 1, -1, 0)
    assert threshold_combination(named_spectrum("THR", 4, 2)) == (0, 0, 1, 0, 0)
    for n in range(1, 13):
        for f in all_spectra(n) if n <= 8 else [named_spectrum("MAJ", n)]:
            coeffs = threshold_combination(f)
            rebuilt = [
                sum(coeffs[t] for t in range(w + 1)) for w in range(n + 1)
            ]
            assert tuple(rebuilt) == f.values


def test_t_constant():
    assert min_t_constant(named_spectrum("OR", 5)) == 1
    assert min_t_constant(named_spectrum("MAJ", 6)) == 4
    assert min_t_constant(spectrum("1111")) == 0
    assert is_t_constant(named_spectrum("OR", 5), 1)
    assert not is_t_constant(named_spectrum("MAJ", 6), 3)
    with pytest.raises(ValueError):
        is_t_constant(spectrum("0011"), 7)


def test_window_distinctness():
    with pytest.raises(ValueError):
        window_distinctness(spectrum("1111"))
    # For any spectrum whose period is b > 1, windows at incongruent
    # offsets must differ; sample widely.
    import random

    rng = random.Random(7)
    checked = 0
    while checked < 10_000:
        n = rng.randrange(2, 25)
        s = Spectrum(tuple(rng.randrange(2) for _ in range(n + 1)))
        if period(s) == 1:
            continue
        assert window_distinctness(s), s.text()
        checked += 1
