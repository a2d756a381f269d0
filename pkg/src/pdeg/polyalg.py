"""Polynomial arithmetic over prime fields and the rationals.

Polynomials on symmetric inputs are stored in the binomial basis: a SymPoly
with coefficients c_0..c_d takes the value sum_k c_k * C(w, k) at Hamming
weight w.  That basis makes exact interpolation a triangular solve and keeps
every coefficient an exact field element; floating point never enters a
polynomial value.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Sequence, Union

from .symfun import Spectrum, period

FieldElement = Union[int, Fraction]


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p < 4:
        return True
    if p % 2 == 0:
        return False
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True, slots=True)
class FieldSpec:
    """A prime field F_p (characteristic p > 0) or the rationals (0)."""

    characteristic: int

    def __post_init__(self) -> None:
        p = self.characteristic
        if p != 0 and not _is_prime(p):
            raise ValueError(f"characteristic must be 0 or a prime, got {p}")

    @property
    def is_prime_field(self) -> bool:
        return self.characteristic > 0

    def element(self, x: int | Fraction) -> FieldElement:
        """Canonical representative: residue in [0, p) or an exact rational."""
        p = self.characteristic
        if p == 0:
            if isinstance(x, float):
                raise TypeError("floating point is not a field element")
            frac = Fraction(x)
            return int(frac) if frac.denominator == 1 else frac
        if isinstance(x, Fraction):
            if x.denominator % p == 0:
                raise ZeroDivisionError(f"denominator divisible by {p}")
            return x.numerator * pow(x.denominator, -1, p) % p
        if isinstance(x, float):
            raise TypeError("floating point is not a field element")
        return x % p

    def add(self, a: FieldElement, b: FieldElement) -> FieldElement:
        p = self.characteristic
        return (a + b) % p if p else self.element(a + b)

    def sub(self, a: FieldElement, b: FieldElement) -> FieldElement:
        p = self.characteristic
        return (a - b) % p if p else self.element(a - b)

    def mul(self, a: FieldElement, b: FieldElement) -> FieldElement:
        p = self.characteristic
        return (a * b) % p if p else self.element(a * b)

    def neg(self, a: FieldElement) -> FieldElement:
        p = self.characteristic
        return (-a) % p if p else self.element(-a)

    def inv(self, a: FieldElement) -> FieldElement:
        p = self.characteristic
        if p:
            if a % p == 0:
                raise ZeroDivisionError("inverse of zero")
            return pow(a, -1, p)
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return self.element(Fraction(1, 1) / Fraction(a))

    def format_element(self, a: FieldElement) -> str:
        return str(a)

    def parse_element(self, text: str) -> FieldElement:
        text = text.strip()
        if "/" in text:
            return self.element(Fraction(text))
        return self.element(int(text))


RATIONALS = FieldSpec(0)
GF2 = FieldSpec(2)


@lru_cache(maxsize=32)
def _pascal_rows(p: int) -> tuple[tuple[int, ...], ...]:
    """Rows 0..p-1 of Pascal's triangle reduced mod p."""
    rows = [(1,)]
    for m in range(1, p):
        prev = rows[-1]
        rows.append(
            tuple(
                ((prev[k - 1] if k else 0) + (prev[k] if k < m else 0)) % p
                for k in range(m + 1)
            )
        )
    return tuple(rows)


def binomial_in_field(w: int, k: int, field: FieldSpec) -> FieldElement:
    """C(w, k) as an element of the field.

    In characteristic p this uses the digit-by-digit product over base-p
    expansions, so huge w stay cheap and the value depends only on
    w mod p**ceil(log_p(k+1)).
    """
    if k < 0 or w < 0:
        return 0
    p = field.characteristic
    if p == 0:
        return math.comb(w, k)
    rows = _pascal_rows(p)
    result = 1
    while k > 0 or w > 0:
        wd, w = w % p, w // p
        kd, k = k % p, k // p
        if kd > wd:
            return 0
        result = result * rows[wd][kd] % p
        if result == 0:
            return 0
    return result


@dataclass(frozen=True, slots=True)
class SymPoly:
    """Polynomial in the Hamming weight, in the binomial basis.

    Value at weight w is sum_k coeffs[k] * C(w, k), all arithmetic in the
    attached field.  Trailing zero coefficients are stripped on build, so
    len(coeffs) - 1 is the degree (the zero polynomial keeps one coefficient
    and reports degree 0).
    """

    field: FieldSpec
    coeffs: tuple[FieldElement, ...]

    def __post_init__(self) -> None:
        coeffs = tuple(self.field.element(c) for c in self.coeffs)
        while len(coeffs) > 1 and coeffs[-1] == 0:
            coeffs = coeffs[:-1]
        if not coeffs:
            coeffs = (self.field.element(0),)
        object.__setattr__(self, "coeffs", coeffs)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def value_at_weight(self, w: int) -> FieldElement:
        f = self.field
        total = f.element(0)
        for k, c in enumerate(self.coeffs):
            if c != 0:
                total = f.add(total, f.mul(c, binomial_in_field(w, k, f)))
        return total

    def values(self, n: int) -> tuple[FieldElement, ...]:
        return tuple(self.value_at_weight(w) for w in range(n + 1))

    def add(self, other: "SymPoly") -> "SymPoly":
        if other.field != self.field:
            raise ValueError("field mismatch")
        f = self.field
        size = max(len(self.coeffs), len(other.coeffs))
        return SymPoly(
            f,
            tuple(
                f.add(
                    self.coeffs[k] if k < len(self.coeffs) else 0,
                    other.coeffs[k] if k < len(other.coeffs) else 0,
                )
                for k in range(size)
            ),
        )

    def scale(self, c: FieldElement) -> "SymPoly":
        f = self.field
        c = f.element(c)
        return SymPoly(f, tuple(f.mul(c, x) for x in self.coeffs))

    def to_json(self) -> dict:
        return {
            "char": self.field.characteristic,
            "coeffs": [self.field.format_element(c) for c in self.coeffs],
        }

    @staticmethod
    def from_json(obj: dict) -> "SymPoly":
        field = FieldSpec(int(obj["char"]))
        return SymPoly(field, tuple(field.parse_element(c) for c in obj["coeffs"]))


def constant_sympoly(field: FieldSpec, c: FieldElement) -> SymPoly:
    return SymPoly(field, (field.element(c),))


def _forward_differences(values: Sequence[int]) -> list[int]:
    """Iterated forward differences over the integers: row k holds Delta^k."""
    diffs = list(values)
    out = [diffs[0]]
    for _ in range(1, len(values)):
        diffs = [diffs[i + 1] - diffs[i] for i in range(len(diffs) - 1)]
        out.append(diffs[0])
    return out


def exact_sympoly(f: Spectrum, field: FieldSpec) -> SymPoly:
    """The unique polynomial of degree <= n matching Spec f on every weight.

    In the binomial basis the interpolation matrix C(w, k) for w, k in [0, n]
    is triangular with unit diagonal, so the coefficients are the forward
    differences of the spectrum.  Computing them over the integers first and
    reducing afterwards gives the same matching values in any field.
    """
    return SymPoly(field, tuple(_forward_differences(f.values)))


def interpolate_window(
    values: Sequence[int], lo: int, field: FieldSpec
) -> SymPoly:
    """Polynomial of degree < len(values) matching the given values on
    weights lo, lo+1, ..., lo+len(values)-1.

    Interpolates in the shifted basis C(w - lo, k) by forward differences,
    then converts to the C(w, k) basis using
    C(w - a, k) = sum_i (-1)^(k-i) C(a + k - i - 1, k - i) C(w, i).
    """
    if not values:
        raise ValueError("cannot interpolate an empty window")
    if lo < 0:
        raise ValueError("window start must be non-negative")
    deltas = _forward_differences(list(values))
    size = len(values)
    coeffs = [0] * size
    for k, d in enumerate(deltas):
        if d == 0:
            continue
        for i in range(k + 1):
            j = k - i
            shift = 1 if j == 0 else (-1) ** j * math.comb(lo + j - 1, j)
            coeffs[i] += d * shift
    return SymPoly(field, tuple(coeffs))


def periodic_exact(g: Spectrum, field: FieldSpec) -> SymPoly:
    """Zero-error polynomial for a spectrum whose period is a power of the
    characteristic.

    With per(g) = p**t, C(w, k) mod p depends only on w mod p**t whenever
    k < p**t, so matching g on weights 0..p**t - 1 with coefficients
    c_0..c_{p**t - 1} matches it on every weight.  The degree is therefore
    below the period.
    """
    p = field.characteristic
    b = period(g)
    if p == 0:
        if b != 1:
            raise ValueError(
                "period must be 1 in characteristic 0; "
                f"got period {b}, not a characteristic power"
            )
    else:
        bb = b
        while bb % p == 0:
            bb //= p
        if bb != 1:
            raise ValueError(
                f"period {b} is not a characteristic power (characteristic {p})"
            )
    # Triangular solve for c with sum_k c_k C(w, k) = g(w), w in [0, b - 1].
    coeffs: list[FieldElement] = []
    for w in range(b):
        acc = field.element(g.values[w])
        for k in range(w):
            acc = field.sub(acc, field.mul(coeffs[k], binomial_in_field(w, k, field)))
        coeffs.append(acc)
    return SymPoly(field, tuple(coeffs))


class MultilinearPoly:
    """Multilinear polynomial over the field, term map frozenset -> coefficient.

    Multiplication applies x_i**2 = x_i, so products stay multilinear; this
    is the representation used by the degree audit when expanding sampled
    expression trees.
    """

    __slots__ = ("field", "n", "terms")

    def __init__(self, field: FieldSpec, n: int, terms: dict | None = None):
        self.field = field
        self.n = n
        self.terms: dict[frozenset, FieldElement] = {}
        if terms:
            for mono, c in terms.items():
                c = field.element(c)
                if c != 0:
                    self.terms[frozenset(mono)] = c

    @property
    def degree(self) -> int:
        if not self.terms:
            return 0
        return max(len(m) for m in self.terms)

    @property
    def term_count(self) -> int:
        return len(self.terms)

    def add(self, other: "MultilinearPoly") -> "MultilinearPoly":
        out = dict(self.terms)
        f = self.field
        for mono, c in other.terms.items():
            acc = f.add(out.get(mono, 0), c)
            if acc == 0:
                out.pop(mono, None)
            else:
                out[mono] = acc
        res = MultilinearPoly(f, self.n)
        res.terms = out
        return res

    def scale(self, c: FieldElement) -> "MultilinearPoly":
        f = self.field
        c = f.element(c)
        res = MultilinearPoly(f, self.n)
        if c != 0:
            res.terms = {m: f.mul(c, v) for m, v in self.terms.items()}
        return res

    def mul(self, other: "MultilinearPoly", cap: int | None = None) -> "MultilinearPoly":
        f = self.field
        out: dict[frozenset, FieldElement] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                mono = m1 | m2
                acc = f.add(out.get(mono, 0), f.mul(c1, c2))
                if acc == 0:
                    out.pop(mono, None)
                else:
                    out[mono] = acc
            if cap is not None and len(out) > cap:
                raise OverflowError(f"term count exceeded cap {cap}")
        res = MultilinearPoly(f, self.n)
        res.terms = out
        return res

    def evaluate(self, x: Sequence[FieldElement]) -> FieldElement:
        f = self.field
        total = f.element(0)
        for mono, c in self.terms.items():
            prod = c
            for i in mono:
                prod = f.mul(prod, x[i])
                if prod == 0:
                    break
            total = f.add(total, prod)
        return total

    def to_json(self) -> dict:
        fmt = self.field.format_element
        return {
            "char": self.field.characteristic,
            "n": self.n,
            "terms": {
                ",".join(str(i) for i in sorted(mono)): fmt(c)
                for mono, c in sorted(self.terms.items(), key=lambda kv: sorted(kv[0]))
            },
        }

    @staticmethod
    def constant(field: FieldSpec, n: int, c: FieldElement) -> "MultilinearPoly":
        return MultilinearPoly(field, n, {frozenset(): c})

    @staticmethod
    def variable(field: FieldSpec, n: int, i: int) -> "MultilinearPoly":
        if not 0 <= i < n:
            raise ValueError(f"variable index {i} out of range for n={n}")
        return MultilinearPoly(field, n, {frozenset([i]): 1})


def expand_multilinear(
    poly: SymPoly, n: int, cap_vars: int = 16
) -> MultilinearPoly:
    """Expand a weight polynomial into the multilinear polynomial on n
    variables: C(w, k) becomes the k-th elementary symmetric polynomial.

    Exponential in n, so n is capped (default 16).
    """
    if n > cap_vars:
        raise ValueError(f"expansion limited to {cap_vars} variables, got {n}")
    field = poly.field
    out = MultilinearPoly(field, n)
    for k, c in enumerate(poly.coeffs):
        if c == 0:
            continue
        layer = MultilinearPoly(field, n, {frozenset(s): c for s in combinations(range(n), k)})
        out = out.add(layer)
    return out
