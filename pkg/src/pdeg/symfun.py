"""Symmetric Boolean functions as weight spectra.

A symmetric Boolean function on n variables is determined by its value on
each Hamming weight, so it is stored as a bit string of length n + 1 indexed
by weight.  This module provides the named function families, the period and
bounded-radius analyses, the periodic/bounded decomposition, and restriction
operators that fix some inputs to constants.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence


@dataclass(frozen=True, slots=True)
class Spectrum:
    """Value of a symmetric function at each Hamming weight 0..n."""

    values: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.values) == 0:
            raise ValueError("spectrum must have length at least 1")
        if any(v not in (0, 1) for v in self.values):
            raise ValueError("spectrum entries must be 0 or 1")

    @property
    def n(self) -> int:
        return len(self.values) - 1

    def __getitem__(self, w: int) -> int:
        return self.values[w]

    def __len__(self) -> int:
        return len(self.values)

    def __iter__(self):
        return iter(self.values)

    def text(self) -> str:
        """Render as a line of '0'/'1' characters, index = Hamming weight."""
        return "".join(str(v) for v in self.values)

    def __str__(self) -> str:
        return self.text()

    def is_constant(self) -> bool:
        return all(v == self.values[0] for v in self.values)


def spectrum(bits: str | Iterable[int]) -> Spectrum:
    """Build a Spectrum from a bit string or an iterable of 0/1 ints."""
    if isinstance(bits, str):
        cleaned = bits.strip()
        if not cleaned or any(c not in "01" for c in cleaned):
            raise ValueError(f"invalid spectrum text: {bits!r}")
        return Spectrum(tuple(int(c) for c in cleaned))
    return Spectrum(tuple(int(b) for b in bits))


def parse_spectrum_file(path: str) -> Spectrum:
    """Read a spectrum from a text file holding one line of 0/1 characters."""
    with open(path, "r", encoding="ascii") as fh:
        line = fh.readline()
    return spectrum(line)


def named_spectrum(kind: str, n: int, *params: int) -> Spectrum:
    """Spectrum of a named function family on n variables.

    Kinds: OR, AND, MAJ (weight strictly above n/2), THR(t) (weight >= t),
    ETHR(t) (weight == t), MOD(b, i) (weight congruent to i mod b), and
    CONST(c).  Parameters out of range are rejected.
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    kind = kind.upper()
    if kind == "OR":
        return Spectrum(tuple(1 if w >= 1 else 0 for w in range(n + 1)))
    if kind == "AND":
        return Spectrum(tuple(1 if w == n else 0 for w in range(n + 1)))
    if kind == "MAJ":
        return Spectrum(tuple(1 if 2 * w > n else 0 for w in range(n + 1)))
    if kind == "THR":
        (t,) = params
        if not 0 <= t <= n:
            raise ValueError(f"threshold {t} out of range [0, {n}]")
        return Spectrum(tuple(1 if w >= t else 0 for w in range(n + 1)))
    if kind == "ETHR":
        (t,) = params
        if not 0 <= t <= n:
            raise ValueError(f"threshold {t} out of range [0, {n}]")
        return Spectrum(tuple(1 if w == t else 0 for w in range(n + 1)))
    if kind == "MOD":
        b, i = params
        if not 2 <= b <= n:
            raise ValueError(f"modulus {b} out of range [2, {n}]")
        if not 0 <= i <= b - 1:
            raise ValueError(f"residue {i} out of range [0, {b - 1}]")
        return Spectrum(tuple(1 if w % b == i else 0 for w in range(n + 1)))
    if kind == "CONST":
        (c,) = params
        if c not in (0, 1):
            raise ValueError("constant must be 0 or 1")
        return Spectrum((c,) * (n + 1))
    raise ValueError(f"unknown function kind: {kind}")


def period(s: Spectrum) -> int:
    """Smallest positive b with s(i) = s(i+b) for all i in [0, n-b].

    Constant spectra have period 1.  When no b <= n satisfies the shift
    equation (the two ends never realign), the vacuous value n + 1 is
    returned: every constraint set for b = n + 1 is empty.
    """
    if s.n < 1:
        raise ValueError("period requires n >= 1")
    v = s.values
    for b in range(1, s.n + 1):
        if v[: len(v) - b] == v[b:]:
            return b
    return s.n + 1


def bounded_radius(s: Spectrum) -> int:
    """Smallest k such that the spectrum is constant on [k, n-k].

    Returns 0 exactly for constant spectra.  For odd n with the two middle
    values unequal no window is constant; the convention is to return
    ceil((n+1)/2), the least k making the window empty (see
    bounded_radius_flagged to detect that case).
    """
    k, _ = bounded_radius_flagged(s)
    return k


def bounded_radius_flagged(s: Spectrum) -> tuple[int, bool]:
    """bounded_radius plus a flag marking the empty-window degenerate case."""
    if s.n < 1:
        raise ValueError("bounded_radius requires n >= 1")
    v = s.values
    n = s.n
    for k in range((n + 2) // 2):
        window = v[k : n - k + 1]
        if all(x == window[0] for x in window):
            return k, False
    # Reached only for odd n with the two middle values unequal: the least
    # k whose window [k, n-k] is empty.
    return (n + 2) // 2, True


def complement_spectrum(s: Spectrum) -> Spectrum:
    return Spectrum(tuple(1 - v for v in s.values))


def reflect_spectrum(s: Spectrum) -> Spectrum:
    """Spectrum of x -> f(1-x_1, ..., 1-x_n): reverses the weight axis."""
    return Spectrum(tuple(reversed(s.values)))


def xor_spectra(a: Spectrum, b: Spectrum) -> Spectrum:
    if a.n != b.n:
        raise ValueError("spectra must have equal length")
    return Spectrum(tuple(x ^ y for x, y in zip(a.values, b.values)))


@dataclass(frozen=True, slots=True)
class DecompositionReport:
    """Split of f into a periodic part g and a bounded part h = f XOR g.

    g agrees with f on the middle window [ceil(n/3), floor(2n/3)] and has the
    smallest period among all spectra agreeing there, so h vanishes on that
    window.  period_g never exceeds the window length
    floor(2n/3) - ceil(n/3) + 1, and bounded_radius_h <= ceil(n/3).
    """

    f: Spectrum
    g: Spectrum
    h: Spectrum
    period_g: int
    bounded_radius_h: int
    period_is_char_power: bool


def _is_char_power(b: int, characteristic: int) -> bool:
    """True when b equals characteristic**t for some t >= 0 (always for b=1)."""
    if b == 1:
        return True
    if characteristic <= 1:
        return False
    while b % characteristic == 0:
        b //= characteristic
    return b == 1


def standard_decomposition(f: Spectrum, characteristic: int = 0) -> DecompositionReport:
    """Decompose f = g XOR h with g periodic and h vanishing on the middle window.

    Scans b = 1, 2, ... for the smallest b making the window
    [ceil(n/3), floor(2n/3)] internally b-periodic, then extends the window
    pattern b-periodically to all weights.  Any spectrum agreeing with f on
    the window restricts there to a b'-periodic string, so this b is minimal
    among the periods of all agreeing spectra.
    """
    n = f.n
    if n < 3:
        raise ValueError("decomposition requires n >= 3")
    lo = -(-n // 3)
    hi = (2 * n) // 3
    window = f.values[lo : hi + 1]
    length = len(window)
    b = length
    for cand in range(1, length + 1):
        if all(window[i] == window[i + cand] for i in range(length - cand)):
            b = cand
            break
    g = Spectrum(tuple(window[(w - lo) % b] for w in range(n + 1)))
    h = xor_spectra(f, g)
    per_g = period(g)
    return DecompositionReport(
        f=f,
        g=g,
        h=h,
        period_g=per_g,
        bounded_radius_h=bounded_radius(h),
        period_is_char_power=_is_char_power(per_g, characteristic),
    )


def restrict(f: Spectrum, zeros: int, ones: int) -> Spectrum:
    """Fix `zeros` inputs to 0 and `ones` inputs to 1.

    The result lives on n - zeros - ones variables and its value at weight w
    is Spec f(w + ones).
    """
    if zeros < 0 or ones < 0:
        raise ValueError("restriction counts must be non-negative")
    if zeros + ones > f.n:
        raise ValueError(f"cannot fix {zeros + ones} of {f.n} inputs")
    m = f.n - zeros - ones
    return Spectrum(tuple(f.values[w + ones] for w in range(m + 1)))


def threshold_combination(f: Spectrum) -> tuple[int, ...]:
    """Coefficients a_0..a_n in {-1,0,1} with f = sum_j a_j * [w >= j].

    a_0 = Spec f(0) and a_j = Spec f(j) - Spec f(j-1); the telescoping sum
    reproduces the spectrum exactly over the integers (hence over any field).
    """
    v = f.values
    return (v[0],) + tuple(v[j] - v[j - 1] for j in range(1, len(v)))


def is_t_constant(f: Spectrum, t: int) -> bool:
    """True when Spec f is constant on [t, n]."""
    if not 0 <= t <= f.n:
        raise ValueError("t out of range")
    tail = f.values[t:]
    return all(x == tail[0] for x in tail)


def min_t_constant(f: Spectrum) -> int:
    """Smallest t such that Spec f is constant on [t, n]."""
    v = f.values
    t = f.n
    while t > 0 and v[t - 1] == v[f.n]:
        t -= 1
    return t


def window_distinctness(g: Spectrum) -> bool:
    """Check that length-b windows at incongruent offsets are pairwise distinct.

    Here b = per(g) > 1.  Two windows [i, i+b-1] and [j, j+b-1] with
    i != j (mod b) must differ; a match would force a period smaller than b.
    """
    b = period(g)
    if b == 1:
        raise ValueError("window distinctness is only defined for period > 1")
    v = g.values
    starts = range(0, g.n - b + 2)
    windows = {s: v[s : s + b] for s in starts}
    for i in starts:
        for j in starts:
            if i < j and (j - i) % b != 0 and windows[i] == windows[j]:
                return False
    return True
