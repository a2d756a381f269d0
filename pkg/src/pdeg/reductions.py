"""Reductions that transfer degree lower bounds between symmetric functions.

Every operation here emits a ReductionCertificate: a list of restrictions of
the source function (inputs pinned to constants) together with a low-degree
combination of the restricted functions that reproduces the target function
exactly.  Certificates can be re-checked from scratch and serialized.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .polyalg import FieldElement, FieldSpec
from .symfun import (
    Spectrum,
    bounded_radius_flagged,
    named_spectrum,
    period,
    reflect_spectrum,
    restrict,
    spectrum,
)


@dataclass(frozen=True, slots=True)
class LiteralCombiner:
    """Linear combination of products of slot literals.

    A term (coeff, ((slot, polarity), ...)) contributes coeff times the
    product over its literals, where polarity 1 reads the slot value and
    polarity 0 reads one minus the slot value.
    """

    terms: tuple[tuple[int, tuple[tuple[int, int], ...]], ...]

    @property
    def degree(self) -> int:
        return max((len(lits) for _, lits in self.terms), default=0)

    def evaluate(
        self, values: Sequence[FieldElement], field: FieldSpec
    ) -> FieldElement:
        total = field.element(0)
        for coeff, literals in self.terms:
            prod = field.element(coeff)
            for slot, pol in literals:
                if prod == 0:
                    break
                v = values[slot]
                prod = field.mul(prod, v if pol else field.sub(1, v))
            total = field.add(total, prod)
        return total

    def __call__(self, values, field):
        return self.evaluate(values, field)

    def to_json(self) -> dict:
        return {
            "terms": [
                [coeff, [[s, p] for s, p in literals]]
                for coeff, literals in self.terms
            ]
        }

    @staticmethod
    def from_json(obj: dict) -> "LiteralCombiner":
        return LiteralCombiner(
            tuple(
                (int(coeff), tuple((int(s), int(p)) for s, p in literals))
                for coeff, literals in obj["terms"]
            )
        )


@dataclass(frozen=True, slots=True)
class ReductionCertificate:
    """Restrictions of a source spectrum plus a combiner hitting a target.

    restrictions[i] = (zeros, ones) defines slot i as the source with that
    many inputs pinned; when source_reflected is set the pinning applies to
    the weight-reversed source.  claimed_degree bounds the combiner degree.
    """

    kind: str
    source: str
    source_reflected: bool
    target_label: str
    target_params: tuple[int, ...]
    target_n: int
    target_spectrum: str
    restrictions: tuple[tuple[int, int], ...]
    combiner: LiteralCombiner
    claimed_degree: int
    extras: dict

    def slot_spectra(self) -> list[Spectrum]:
        src = spectrum(self.source)
        if self.source_reflected:
            src = reflect_spectrum(src)
        return [restrict(src, zeros, ones) for zeros, ones in self.restrictions]

    def check(self, field: FieldSpec) -> bool:
        return not self.failures(field)

    def failures(self, field: FieldSpec) -> list[tuple[int, FieldElement, int]]:
        slots = self.slot_spectra()
        target = spectrum(self.target_spectrum)
        out = []
        for w in range(target.n + 1):
            values = [field.element(s.values[w]) for s in slots]
            got = self.combiner.evaluate(values, field)
            want = field.element(target.values[w])
            if got != want:
                out.append((w, got, want))
        return out

    def to_json(self) -> dict:
        return {
            "schema_version": 1,
            "kind": self.kind,
            "source": self.source,
            "source_reflected": self.source_reflected,
            "target": {
                "label": self.target_label,
                "params": list(self.target_params),
                "n": self.target_n,
                "spectrum": self.target_spectrum,
            },
            "restrictions": [[z, o] for z, o in self.restrictions],
            "combiner": self.combiner.to_json(),
            "claimed_degree": self.claimed_degree,
            "extras": self.extras,
        }

    @staticmethod
    def from_json(obj: dict) -> "ReductionCertificate":
        target = obj["target"]
        return ReductionCertificate(
            kind=obj["kind"],
            source=obj["source"],
            source_reflected=bool(obj["source_reflected"]),
            target_label=target["label"],
            target_params=tuple(int(x) for x in target["params"]),
            target_n=int(target["n"]),
            target_spectrum=target["spectrum"],
            restrictions=tuple((int(z), int(o)) for z, o in obj["restrictions"]),
            combiner=LiteralCombiner.from_json(obj["combiner"]),
            claimed_degree=int(obj["claimed_degree"]),
            extras=dict(obj["extras"]),
        )


# ---------------------------------------------------------------------------
# Support shrinking


@dataclass(frozen=True, slots=True)
class ShrinkResult:
    """Outcome of the greedy support-halving pass.

    chosen lists indices into the input family, in pick order; the product
    of the chosen functions is 1 exactly at support_point.
    """

    chosen: tuple[int, ...]
    support_point: int


def _support(f: Sequence[int]) -> frozenset:
    return frozenset(i for i, v in enumerate(f) if v == 1)


def shrink_support(family: Sequence[Sequence[int]]) -> ShrinkResult:
    """Pick at most log2(domain) family members whose product is a point mass.

    The family must be closed under complement and separating: for any two
    domain points some member takes value 1 on one and 0 on the other.  Each
    greedy pick at least halves the support of the running product,
    preferring the un-complemented candidate on ties.
    """
    family = [tuple(int(v) for v in f) for f in family]
    if family:
        m = len(family[0])
        if any(len(f) != m for f in family):
            raise ValueError("family members must share one domain")
        complements = {f: tuple(1 - v for v in f) for f in family}
        members = set(family)
        for f, comp in complements.items():
            if comp not in members:
                raise ValueError("family is not closed under complement")
    else:
        m = 1

    supp = frozenset(range(m))
    chosen: list[int] = []

    if len(supp) > 1:
        # Opening pick: first non-constant member, smaller-support side.
        start = None
        for idx, f in enumerate(family):
            size = len(_support(f))
            if 0 < size < m:
                if 2 * size <= m:
                    start = idx
                else:
                    start = family.index(complements[f])
                break
        if start is None:
            raise ValueError("hypothesis violation: no non-constant member")
        chosen.append(start)
        supp = supp & _support(family[start])

    while len(supp) > 1:
        points = sorted(supp)
        i, j = points[0], points[1]
        pick = None
        for idx, f in enumerate(family):
            if f[i] == 1 and f[j] == 0:
                pick = idx
                break
        if pick is None:
            raise ValueError(
                f"hypothesis violation: no member separates points ({i}, {j})"
            )
        keep = supp & _support(family[pick])
        drop = supp - keep
        if 2 * len(keep) <= len(supp):
            chosen.append(pick)
            supp = keep
        else:
            chosen.append(family.index(complements[family[pick]]))
            supp = drop

    bound = max(1, m).bit_length() - 1  # floor(log2 m)
    if len(chosen) > bound:
        raise AssertionError(
            f"greedy used {len(chosen)} picks on a domain of {m} points"
        )
    (point,) = supp
    return ShrinkResult(chosen=tuple(chosen), support_point=point)


# ---------------------------------------------------------------------------
# Point indicators from cyclic shifts


@dataclass(frozen=True, slots=True)
class DeltaProduct:
    """Product of shift-slot literals equal to the indicator of one residue.

    Slot j carries the pattern shifted by j; the product of the listed
    literals is 1 exactly when the evaluation residue equals index.
    """

    length: int
    index: int
    literals: tuple[tuple[int, int], ...]

    @property
    def degree(self) -> int:
        return len(self.literals)


def delta_from_shifts(u: Sequence[int] | str) -> DeltaProduct:
    """Indicator of a single residue as a short product over cyclic shifts.

    u must not be fixed by any nontrivial cyclic shift; the shifted copies
    u(. + j) together with their complements then separate residues, and the
    greedy support shrink yields a product of at most log2(len(u)) literals.
    """
    if isinstance(u, str):
        u = tuple(int(c) for c in u.strip())
    else:
        u = tuple(int(v) for v in u)
    m = len(u)
    if m < 2:
        raise ValueError("pattern must have length at least 2")
    if any(v not in (0, 1) for v in u):
        raise ValueError("pattern must be 0/1")
    for s in range(1, m):
        if all(u[(r + s) % m] == u[r] for r in range(m)):
            raise ValueError(f"pattern is fixed by the cyclic shift {s}")

    shifts = [tuple(u[(r + j) % m] for r in range(m)) for j in range(m)]
    family = shifts + [tuple(1 - v for v in f) for f in shifts]
    result = shrink_support(family)
    literals = tuple(
        (idx % m, 0 if idx >= m else 1) for idx in result.chosen
    )
    return DeltaProduct(length=m, index=result.support_point, literals=literals)


def shifted_delta(delta: DeltaProduct, t: int) -> tuple[tuple[int, int], ...]:
    """Relabel a residue indicator's slots so its value becomes [r == t]."""
    m = delta.length
    offset = (delta.index - t) % m
    return tuple(((j + offset) % m, pol) for j, pol in delta.literals)


# ---------------------------------------------------------------------------
# Named reductions


def _smallest_coprime_prime_factor(b: int, p: int) -> int:
    d = 2
    while d * d <= b:
        if b % d == 0:
            if d != p:
                return d
            while b % d == 0:
                b //= d
        else:
            d += 1
    if b > 1 and b != p:
        return b
    raise ValueError("no prime factor distinct from the characteristic")


def mod_from_periodic(
    g: Spectrum, field: FieldSpec
) -> tuple[ReductionCertificate, ...]:
    """Modular counting functions from a short-period spectrum.

    With per(g) = b not a power of the characteristic, q is the smallest
    prime factor of b other than the characteristic; slot j pins b - j zeros
    and j ones, so at weight w the slot vector is the pattern shifted by w.
    Summing residue indicators over each class mod q yields MOD(q, i) on
    n - b variables, one certificate per residue.
    """
    n = g.n
    b = period(g)
    p = field.characteristic
    if b <= 1:
        raise ValueError(f"period {b} is trivial")
    if b > n // 3:
        raise ValueError(f"period {b} exceeds n/3 = {n // 3}")
    bb = b
    if p > 0:
        while bb % p == 0:
            bb //= p
    if bb == 1:
        raise ValueError(
            f"period {b} is a characteristic power; exact interpolation applies"
        )
    q = _smallest_coprime_prime_factor(b, p)

    u = g.values[:b]
    base_delta = delta_from_shifts(u)
    restrictions = tuple((b - j, j) for j in range(b))
    m_target = n - b
    certs = []
    for residue in range(q):
        terms = tuple(
            (1, shifted_delta(base_delta, t))
            for t in range(b)
            if t % q == residue
        )
        combiner = LiteralCombiner(terms)
        target = named_spectrum("MOD", m_target, q, residue)
        certs.append(
            ReductionCertificate(
                kind="mod_from_periodic",
                source=g.text(),
                source_reflected=False,
                target_label="MOD",
                target_params=(q, residue),
                target_n=m_target,
                target_spectrum=target.text(),
                restrictions=restrictions,
                combiner=combiner,
                claimed_degree=combiner.degree,
                extras={"period": b, "modulus": q, "pattern": "".join(map(str, u))},
            )
        )
    return tuple(certs)


def _binomial_tail_outside(m: int, window: Sequence[int]) -> Fraction:
    """P[Binomial(m, 1/2) lands outside the given weight set], exact."""
    inside = set(window)
    total = 0
    coeff = 1  # walks comb(m, w) across the row
    for w in range(m + 1):
        if w not in inside:
            total += coeff
        coeff = coeff * (m - w) // (w + 1)
    return Fraction(total, 1 << m)


def maj_from_periodic(
    g: Spectrum, eps: Fraction, field: FieldSpec
) -> ReductionCertificate:
    """Majority from a spectrum whose period is a characteristic power.

    Selects a majority size m and confidence delta by the period's scale,
    validates the selection constraints, and builds a combiner whose value
    at weight w equals a periodic function agreeing with Maj_m on all
    weights in a central window; the weight distribution mass outside the
    window is at most delta.  Rejected when no scale case validates.
    """
    eps = Fraction(eps)
    n = g.n
    b = period(g)
    p = field.characteristic
    if p == 0:
        raise ValueError("positive characteristic required")
    if b <= 1:
        raise ValueError(f"period {b} is trivial")
    bb = b
    while bb % p == 0:
        bb //= p
    if bb != 1:
        raise ValueError(
            f"period {b} is not a characteristic power; use the modular reduction"
        )
    if not 0 < eps < 1:
        raise ValueError(f"error parameter must be in (0, 1), got {eps}")

    attempts = []

    def parity_floor(value: int) -> int:
        """Largest m <= value with m = n - b (mod 2), or 0 when none."""
        m = min(value, n - b)
        if m < 1:
            return 0
        if (m - (n - b)) % 2 != 0:
            m -= 1
        return m

    candidates: list[tuple[int, int, Fraction]] = []
    if b * b <= 100 * n:
        m = parity_floor(b * b // 100)
        candidates.append((1, m, Fraction(1, 5)))
    if 10 * b >= n:
        m = parity_floor(n // 100)
        delta = max(eps, Fraction(1, 1 << m)) if m >= 1 else eps
        candidates.append((2, m, delta))
    if b * b > 100 * n and 10 * b < n:
        m = n - b
        exponent = math.ceil(b * b / (16 * m)) if m >= 1 else 0
        delta = max(eps, Fraction(1, 1 << exponent)) if m >= 1 else eps
        candidates.append((3, m, delta))

    selected = None
    for case, m, delta in candidates:
        problems = []
        if m < 1:
            problems.append("window size collapses to zero")
        else:
            log_delta = math.log2(delta.denominator) - math.log2(delta.numerator)
            pinned = math.sqrt(m * log_delta)
            if not (Fraction(1, 5) >= delta >= max(eps, Fraction(1, 1 << m))):
                problems.append(f"confidence {delta} out of range")
            if 4 * pinned > b:
                problems.append(
                    f"window halfwidth 4*sqrt(m*log(1/delta)) = {4 * pinned:.2f} "
                    f"exceeds period {b}"
                )
            log_eps = math.log2(eps.denominator) - math.log2(eps.numerator)
            floor_req = min(b, math.sqrt(n * log_eps)) / 40
            if pinned < floor_req:
                problems.append(
                    f"sqrt(m*log(1/delta)) = {pinned:.2f} below {floor_req:.2f}"
                )
        if not problems:
            selected = (case, m, delta)
            break
        attempts.append((case, m, str(delta), problems))

    if selected is None:
        raise ValueError(
            "no scale case validates for "
            f"n={n}, b={b}, eps={eps}: {attempts}"
        )

    case, m, delta = selected
    t_pin = (n - b - m) // 2
    log_delta = math.log2(delta.denominator) - math.log2(delta.numerator)
    halfwidth = 2 * math.sqrt(m * log_delta)
    center = (n - b) / 2

    pattern = [0] * b
    filled = [False] * b
    z_lo = math.floor(center - halfwidth) + 1
    z_hi = math.ceil(center + halfwidth) - 1
    window_weights = []
    for z in range(z_lo, z_hi + 1):
        r = z % b
        if filled[r]:
            raise AssertionError("window residues collide; constraints violated")
        filled[r] = True
        pattern[r] = 1 if 2 * z > n - b else 0
        w = z - t_pin
        if 0 <= w <= m:
            window_weights.append(w)

    # Slot j pins t_pin extra ones, so its value at weight w is the pattern
    # at residue (w + t_pin + j); the residue indicators therefore target r
    # itself and the pinning shift is already inside the slot values.
    base_delta = delta_from_shifts(g.values[:b])
    restrictions = tuple((b - j + t_pin, j + t_pin) for j in range(b))
    terms = tuple(
        (1, shifted_delta(base_delta, r)) for r in range(b) if pattern[r] == 1
    )
    combiner = LiteralCombiner(terms)

    # The combined value at weight w is pattern[(w + t_pin) mod b]; it must
    # match Maj_m on every window weight, and the mass outside the window
    # must be small.
    maj = named_spectrum("MAJ", m)
    for w in window_weights:
        got = pattern[(w + t_pin) % b]
        if got != maj.values[w]:
            raise AssertionError(f"window weight {w} disagrees with majority")
    tail = _binomial_tail_outside(m, window_weights)
    if tail > delta:
        raise AssertionError(
            f"binomial mass {tail} outside the window exceeds {delta}"
        )

    target_values = tuple(pattern[(w + t_pin) % b] for w in range(m + 1))
    cert = ReductionCertificate(
        kind="maj_from_periodic",
        source=g.text(),
        source_reflected=False,
        target_label="MAJ_WINDOW",
        target_params=(m,),
        target_n=m,
        target_spectrum="".join(str(v) for v in target_values),
        restrictions=restrictions,
        combiner=combiner,
        claimed_degree=combiner.degree,
        extras={
            "case": case,
            "m": m,
            "delta": str(delta),
            "tail": str(tail),
            "period": b,
            "pinned_each_side": t_pin,
            "window_weights": window_weights,
            "majority_spectrum": maj.text(),
        },
    )
    return cert


def thr_restrictions(n: int, t: int) -> tuple[ReductionCertificate, ...]:
    """Majority and disjunction as restrictions of a threshold function."""
    if not 1 <= t <= n // 2:
        raise ValueError(f"threshold {t} must lie in [1, {n // 2}]")
    source = named_spectrum("THR", n, t)
    identity = LiteralCombiner(((1, ((0, 1),)),))

    maj_cert = ReductionCertificate(
        kind="thr_restriction",
        source=source.text(),
        source_reflected=False,
        target_label="MAJ",
        target_params=(),
        target_n=2 * t - 1,
        target_spectrum=named_spectrum("MAJ", 2 * t - 1).text(),
        restrictions=(((n - 2 * t + 1), 0),),
        combiner=identity,
        claimed_degree=1,
        extras={"threshold": t},
    )
    half = (n + 1) // 2
    or_cert = ReductionCertificate(
        kind="thr_restriction",
        source=source.text(),
        source_reflected=False,
        target_label="OR",
        target_params=(),
        target_n=half,
        target_spectrum=named_spectrum("OR", half).text(),
        restrictions=((n // 2 - t + 1, t - 1),),
        combiner=identity,
        claimed_degree=1,
        extras={"threshold": t},
    )
    return (maj_cert, or_cert)


def thr_complement_from_bounded(h: Spectrum) -> ReductionCertificate:
    """Complemented threshold from a spectrum constant on a middle window.

    With radius b and middle value 0, pinning aligned blocks of inputs turns
    h into t functions whose spectra are upper triangular with unit pivots;
    back substitution then writes 1 - Thr^t on floor(n/6) + t variables as
    an integer combination of the restrictions.  Tried on the spectrum and
    its reflection before rejecting.
    """
    n = h.n
    b, degenerate = bounded_radius_flagged(h)
    if degenerate:
        raise ValueError("spectrum has no constant middle window")
    if b < 1:
        raise ValueError("spectrum is constant; nothing to reduce")
    if b > -(-n // 3):
        raise ValueError(f"radius {b} exceeds ceil(n/3) = {-(-n // 3)}")
    m = n // 6
    t = -(-b // 3)
    if t > m or m < 1:
        raise ValueError(f"blocks do not fit: t={t}, m={m}")

    last_error = None
    for reflected in (False, True):
        src = reflect_spectrum(h) if reflected else h
        try:
            return _thr_complement_core(src, h, reflected, b, m, t)
        except ValueError as exc:
            last_error = exc
    raise ValueError(f"spectrum shape unsupported on both orientations: {last_error}")


def _thr_complement_core(
    src: Spectrum, original: Spectrum, reflected: bool, b: int, m: int, t: int
) -> ReductionCertificate:
    n = src.n
    if src.values[b] != 0:
        raise ValueError("middle window value must be 0")
    if src.values[b - 1] != 1:
        raise ValueError("weight b-1 must deviate to 1")
    if n - m - b - (t - 1) < 0:
        raise ValueError("not enough inputs to pin")

    slots = []
    for i in range(t):
        zeros = n - m - b - i
        ones = b - t + i
        slot = restrict(src, zeros, ones)
        pivot = t - i - 1
        if slot.values[pivot] != 1:
            raise ValueError(f"slot {i} lacks its unit pivot")
        if any(slot.values[w] != 0 for w in range(pivot + 1, m + t + 1)):
            raise ValueError(f"slot {i} is not zero past its pivot")
        slots.append((zeros, ones, slot))

    target = Spectrum(tuple(1 if w < t else 0 for w in range(m + t + 1)))
    alpha = [0] * t
    for k in range(t):
        w = t - 1 - k
        acc = target.values[w]
        for i in range(k):
            acc -= alpha[i] * slots[i][2].values[w]
        alpha[k] = acc

    combiner = LiteralCombiner(
        tuple((alpha[i], ((i, 1),)) for i in range(t) if alpha[i] != 0)
    )
    cert = ReductionCertificate(
        kind="thr_complement_from_bounded",
        source=original.text(),
        source_reflected=reflected,
        target_label="THR_COMPLEMENT",
        target_params=(t,),
        target_n=m + t,
        target_spectrum=target.text(),
        restrictions=tuple((z, o) for z, o, _ in slots),
        combiner=combiner,
        claimed_degree=1,
        extras={"radius": b, "blocks": t, "free_inputs": m, "alpha": alpha},
    )
    failures = cert.failures(FieldSpec(0))
    if failures:
        raise ValueError(f"combination misses the target at weights {failures}")
    return cert


def maj_from_general(f: Spectrum, field: FieldSpec) -> ReductionCertificate:
    """Majority from any spectrum whose middle window has no short period.

    Pairs of middle-window weights with differing values yield restrictions
    separating interval points; the support shrink turns them into a short
    product G concentrated on one interval point, and pinned copies of G
    form a triangular system solving majority on floor(n1/6) variables,
    n1 = n - 2*ceil(n/3).
    """
    n = f.n
    lo = -(-n // 3)
    hi = (2 * n) // 3
    n1 = n - 2 * lo
    m = n1 // 3
    if m < 1:
        raise ValueError(f"middle segment too small: n1={n1}")

    deviation: dict[int, int] = {}
    for k in range(1, m + 1):
        found = None
        for r in range(lo, hi - k + 1):
            if f.values[r] != f.values[r + k]:
                found = r
                break
        if found is None:
            raise ValueError(
                f"middle window agrees under shift {k}; "
                "use the periodic reductions instead"
            )
        deviation[k] = found

    # Restrictions separating interval points m+1 .. 2m (locally 0 .. m-1).
    members: list[tuple[int, int]] = []  # (ones, zeros) pinned on f
    vectors: list[tuple[int, ...]] = []
    for i in range(m + 1, 2 * m + 1):
        for j in range(i + 1, 2 * m + 1):
            k = j - i
            r = deviation[k]
            ones = r - i
            zeros = n - 3 * m - r + i
            restricted = restrict(f, zeros, ones)
            members.append((ones, zeros))
            vectors.append(
                tuple(restricted.values[v] for v in range(m + 1, 2 * m + 1))
            )

    family = vectors + [tuple(1 - x for x in vec) for vec in vectors]
    shrink = shrink_support(family)
    a = shrink.support_point + m + 1
    picks = [(idx % len(vectors), 0 if idx >= len(vectors) else 1) for idx in shrink.chosen]
    s = len(picks)

    def g_value(v: int) -> int:
        prod = 1
        for member_idx, pol in picks:
            ones, zeros = members[member_idx]
            val = f.values[v + ones]
            prod *= val if pol else 1 - val
            if prod == 0:
                break
        return prod

    m1 = m // 2
    if 2 * a <= 3 * m:
        # Copy i pivots at weight i with zeros above it, so substitute from
        # the top weight down.
        pin_ones = [a - i for i in range(m1 + 1)]
        pin_zeros = [3 * m - a + i - m1 for i in range(m1 + 1)]
        pivot_of = list(range(m1 + 1))
        weight_order = range(m1, -1, -1)
    else:
        # Mirrored: copy i pivots at weight m1 - i with zeros below it, so
        # substitute from weight zero up.
        pin_ones = [a - m1 + i for i in range(m1 + 1)]
        pin_zeros = [3 * m - a - i for i in range(m1 + 1)]
        pivot_of = [m1 - i for i in range(m1 + 1)]
        weight_order = range(0, m1 + 1)

    if any(z < 0 for z in pin_zeros) or any(o < 0 for o in pin_ones):
        raise ValueError("pinning counts fall outside the input budget")

    copies = []
    for i in range(m1 + 1):
        values = tuple(g_value(w + pin_ones[i]) for w in range(m1 + 1))
        if values[pivot_of[i]] != 1:
            raise AssertionError(f"copy {i} lacks its unit pivot")
        copies.append(values)

    maj = named_spectrum("MAJ", m1)
    alpha = [0] * (m1 + 1)
    solved = set()
    for w in weight_order:
        # The copy pivoting at w is determined by the others already solved.
        i_w = pivot_of.index(w)
        acc = maj.values[w]
        for i in range(m1 + 1):
            if i != i_w and i in solved:
                acc -= alpha[i] * copies[i][w]
        alpha[i_w] = acc
        solved.add(i_w)

    # Flatten (copy, pick) into one restriction list for the certificate.
    restrictions = []
    terms = []
    for i in range(m1 + 1):
        literals = []
        for member_idx, pol in picks:
            ones, zeros = members[member_idx]
            slot = len(restrictions)
            restrictions.append((zeros + pin_zeros[i], ones + pin_ones[i]))
            literals.append((slot, pol))
        if alpha[i] != 0:
            terms.append((alpha[i], tuple(literals)))

    combiner = LiteralCombiner(tuple(terms))
    cert = ReductionCertificate(
        kind="maj_from_general",
        source=f.text(),
        source_reflected=False,
        target_label="MAJ",
        target_params=(),
        target_n=m1,
        target_spectrum=maj.text(),
        restrictions=tuple(restrictions),
        combiner=combiner,
        claimed_degree=max(s, 1) if terms else 0,
        extras={
            "interval": [lo, hi],
            "segment": n1,
            "interval_points": m,
            "support_point": a,
            "picks": s,
            "alpha": alpha,
        },
    )
    failures = cert.failures(field)
    if failures:
        raise AssertionError(
            f"majority combination misses the target at weights {failures}"
        )
    return cert
