"""Randomized low-degree polynomial representations of symmetric functions.

A Recipe describes a distribution over tuples of polynomial expressions: it
fixes the construction and all derived parameters, while sample(recipe, seed)
draws the actual coefficient choices.  Sampled polynomials are expression
DAGs (PolyExpr) carrying a tracked formal degree; the recipe's declared
degree bound must dominate the tracked degree of every possible draw, and
the recipe's error parameter bounds the per-point probability that a draw
disagrees with the target spectrum.
"""

from __future__ import annotations

import hashlib
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import product as iter_product
from typing import Callable, Iterable, Iterator, Sequence

from .polyalg import (
    FieldElement,
    FieldSpec,
    SymPoly,
    exact_sympoly,
    interpolate_window,
    periodic_exact,
)
from .symfun import (
    Spectrum,
    bounded_radius_flagged,
    complement_spectrum,
    min_t_constant,
    named_spectrum,
    standard_decomposition,
    threshold_combination,
    xor_spectra,
)


# ---------------------------------------------------------------------------
# Deterministic randomness


class SeedStream:
    """Splittable deterministic randomness source.

    Children are derived by hashing a label into the parent key, so sibling
    streams are independent and the whole tree is a pure function of the
    root seed.
    """

    __slots__ = ("key",)

    def __init__(self, key: bytes):
        self.key = key

    @staticmethod
    def from_seed(seed: int) -> "SeedStream":
        return SeedStream(hashlib.sha256(b"root:" + str(int(seed)).encode()).digest())

    def child(self, label) -> "SeedStream":
        return SeedStream(
            hashlib.sha256(self.key + b"/" + repr(label).encode()).digest()
        )

    def rng(self) -> random.Random:
        digest = hashlib.sha256(self.key + b"#rng").digest()
        return random.Random(int.from_bytes(digest, "big"))


# ---------------------------------------------------------------------------
# Polynomial expression DAGs


@dataclass(eq=False, slots=True)
class Constant:
    value: FieldElement
    deg: int = 0


@dataclass(eq=False, slots=True)
class Var:
    index: int
    deg: int = 1


@dataclass(eq=False, slots=True)
class LinearForm:
    """sum_j coeffs[j] * x[indices[j]]; no constant term, degree 1."""

    coeffs: tuple[FieldElement, ...]
    indices: tuple[int, ...]
    deg: int = 1

    def __post_init__(self) -> None:
        if len(self.coeffs) != len(self.indices):
            raise ValueError("coefficient/index length mismatch")


@dataclass(eq=False, slots=True)
class Power:
    base: "PolyExpr"
    exponent: int
    deg: int = 0

    def __post_init__(self) -> None:
        if self.exponent < 1:
            raise ValueError("exponent must be positive")
        object.__setattr__(self, "deg", self.exponent * self.base.deg)


@dataclass(eq=False, slots=True)
class Product:
    factors: tuple["PolyExpr", ...]
    deg: int = 0

    def __post_init__(self) -> None:
        object.__setattr__(self, "deg", sum(f.deg for f in self.factors))


@dataclass(eq=False, slots=True)
class Sum:
    """constant + sum_i terms[i][0] * terms[i][1]."""

    constant: FieldElement
    terms: tuple[tuple[FieldElement, "PolyExpr"], ...]
    deg: int = 0

    def __post_init__(self) -> None:
        object.__setattr__(self, "deg", max((e.deg for _, e in self.terms), default=0))


@dataclass(eq=False, slots=True)
class SymApply:
    """A weight polynomial applied to the tuple of input expressions.

    When every input evaluates to 0 or 1 the value is poly at the number of
    ones; in general the binomial-basis coefficients act on the elementary
    symmetric polynomials of the inputs.  Repeating an input counts it with
    multiplicity.
    """

    poly: SymPoly
    inputs: tuple["PolyExpr", ...]
    deg: int = 0

    def __post_init__(self) -> None:
        inner = max((e.deg for e in self.inputs), default=0)
        object.__setattr__(self, "deg", self.poly.degree * inner)


PolyExpr = Constant | Var | LinearForm | Power | Product | Sum | SymApply


def one_minus(e: PolyExpr) -> Sum:
    return Sum(1, ((-1, e),))


def sum_of(
    field: FieldSpec,
    terms: Iterable[tuple[FieldElement, PolyExpr]],
    constant: FieldElement = 0,
) -> Sum:
    """Sum node with coefficients normalized into the field; zero terms drop."""
    kept = []
    for c, e in terms:
        c = field.element(c)
        if c != 0:
            kept.append((c, e))
    return Sum(field.element(constant), tuple(kept))


def eval_expr(
    expr: PolyExpr, x: Sequence[FieldElement], field: FieldSpec, memo: dict | None = None
) -> FieldElement:
    """Evaluate at a point, sharing work across common subexpressions."""
    if memo is None:
        memo = {}
    return _eval(expr, x, field, memo)


def _eval(e: PolyExpr, x, field: FieldSpec, memo: dict) -> FieldElement:
    key = id(e)
    hit = memo.get(key)
    if hit is not None:
        return hit
    p = field.characteristic
    if isinstance(e, Constant):
        val = e.value
    elif isinstance(e, Var):
        val = x[e.index]
    elif isinstance(e, LinearForm):
        acc = 0
        for c, i in zip(e.coeffs, e.indices):
            xi = x[i]
            if xi:
                acc += c * xi
        val = acc % p if p else field.element(acc)
    elif isinstance(e, Power):
        base = _eval(e.base, x, field, memo)
        val = pow(base, e.exponent, p) if p else base**e.exponent
    elif isinstance(e, Product):
        val = 1
        for f in e.factors:
            val = field.mul(val, _eval(f, x, field, memo))
            if val == 0:
                break
    elif isinstance(e, Sum):
        acc = e.constant
        for c, t in e.terms:
            acc += c * _eval(t, x, field, memo)
        val = acc % p if p else field.element(acc)
    elif isinstance(e, SymApply):
        vals = [_eval(t, x, field, memo) for t in e.inputs]
        val = _apply_weight_poly(e.poly, vals, field)
    else:
        raise TypeError(f"unknown expression node {type(e)!r}")
    memo[key] = val
    return val


def _apply_weight_poly(
    poly: SymPoly, vals: Sequence[FieldElement], field: FieldSpec
) -> FieldElement:
    if all(v == 0 or v == 1 for v in vals):
        return poly.value_at_weight(int(sum(vals)))
    # Elementary symmetric prefix recurrence up to the polynomial degree.
    d = min(poly.degree, len(vals))
    elem = [field.element(1)] + [field.element(0)] * d
    for v in vals:
        top = min(d, len(elem) - 1)
        for k in range(top, 0, -1):
            elem[k] = field.add(elem[k], field.mul(elem[k - 1], v))
    total = field.element(0)
    for k, c in enumerate(poly.coeffs):
        if k > d:
            break
        if c != 0:
            total = field.add(total, field.mul(c, elem[k]))
    return total


def _remap_vars(e: PolyExpr, sub: Sequence[int], memo: dict) -> PolyExpr:
    """Substitute x_j -> x_sub[j] everywhere, preserving node sharing."""
    key = id(e)
    hit = memo.get(key)
    if hit is not None:
        return hit
    if isinstance(e, Constant):
        out: PolyExpr = e
    elif isinstance(e, Var):
        out = Var(sub[e.index])
    elif isinstance(e, LinearForm):
        out = LinearForm(e.coeffs, tuple(sub[i] for i in e.indices))
    elif isinstance(e, Power):
        out = Power(_remap_vars(e.base, sub, memo), e.exponent)
    elif isinstance(e, Product):
        out = Product(tuple(_remap_vars(f, sub, memo) for f in e.factors))
    elif isinstance(e, Sum):
        out = Sum(e.constant, tuple((c, _remap_vars(t, sub, memo)) for c, t in e.terms))
    else:
        out = SymApply(e.poly, tuple(_remap_vars(t, sub, memo) for t in e.inputs))
    memo[key] = out
    return out


def _reflect_vars(e: PolyExpr, field: FieldSpec, memo: dict) -> PolyExpr:
    """Substitute x_i -> 1 - x_i everywhere, preserving node sharing."""
    key = id(e)
    hit = memo.get(key)
    if hit is not None:
        return hit
    if isinstance(e, Constant):
        out: PolyExpr = e
    elif isinstance(e, Var):
        out = Sum(1, ((field.element(-1), e),))
    elif isinstance(e, LinearForm):
        total = field.element(0)
        for c in e.coeffs:
            total = field.add(total, c)
        out = Sum(total, ((field.element(-1), e),))
    elif isinstance(e, Power):
        out = Power(_reflect_vars(e.base, field, memo), e.exponent)
    elif isinstance(e, Product):
        out = Product(tuple(_reflect_vars(f, field, memo) for f in e.factors))
    elif isinstance(e, Sum):
        out = Sum(
            e.constant, tuple((c, _reflect_vars(t, field, memo)) for c, t in e.terms)
        )
    else:
        out = SymApply(e.poly, tuple(_reflect_vars(t, field, memo) for t in e.inputs))
    memo[key] = out
    return out


def expr_to_json(roots: Sequence[PolyExpr], field: FieldSpec) -> dict:
    """Serialize a tuple of expressions as a shared node list."""
    ids: dict[int, int] = {}
    nodes: list[dict] = []
    fmt = field.format_element

    def visit(e: PolyExpr) -> int:
        key = id(e)
        if key in ids:
            return ids[key]
        if isinstance(e, Constant):
            node = {"op": "const", "value": fmt(e.value)}
        elif isinstance(e, Var):
            node = {"op": "var", "index": e.index}
        elif isinstance(e, LinearForm):
            node = {
                "op": "linear",
                "coeffs": [fmt(c) for c in e.coeffs],
                "indices": list(e.indices),
            }
        elif isinstance(e, Power):
            node = {"op": "pow", "base": visit(e.base), "exponent": e.exponent}
        elif isinstance(e, Product):
            node = {"op": "mul", "factors": [visit(f) for f in e.factors]}
        elif isinstance(e, Sum):
            node = {
                "op": "sum",
                "constant": fmt(e.constant),
                "terms": [[fmt(c), visit(t)] for c, t in e.terms],
            }
        else:
            node = {
                "op": "sym",
                "poly": e.poly.to_json(),
                "inputs": [visit(t) for t in e.inputs],
            }
        node["deg"] = e.deg
        ids[key] = len(nodes)
        nodes.append(node)
        return ids[key]

    root_ids = [visit(r) for r in roots]
    return {"char": field.characteristic, "nodes": nodes, "roots": root_ids}


def expr_from_json(obj: dict) -> tuple[PolyExpr, ...]:
    field = FieldSpec(int(obj["char"]))
    parse = field.parse_element
    built: list[PolyExpr] = []
    for node in obj["nodes"]:
        op = node["op"]
        if op == "const":
            e: PolyExpr = Constant(parse(node["value"]))
        elif op == "var":
            e = Var(int(node["index"]))
        elif op == "linear":
            e = LinearForm(
                tuple(parse(c) for c in node["coeffs"]),
                tuple(int(i) for i in node["indices"]),
            )
        elif op == "pow":
            e = Power(built[node["base"]], int(node["exponent"]))
        elif op == "mul":
            e = Product(tuple(built[i] for i in node["factors"]))
        elif op == "sum":
            e = Sum(
                parse(node["constant"]),
                tuple((parse(c), built[i]) for c, i in node["terms"]),
            )
        elif op == "sym":
            e = SymApply(
                SymPoly.from_json(node["poly"]),
                tuple(built[i] for i in node["inputs"]),
            )
        else:
            raise ValueError(f"unknown expression op {op!r}")
        built.append(e)
    return tuple(built[i] for i in obj["roots"])


# ---------------------------------------------------------------------------
# Construction profiles


@dataclass(frozen=True, slots=True)
class ConstantsProfile:
    """Tunable constants steering the threshold-vector construction.

    A and B set the declared degree A*sqrt(t*log(1/eps)) + B*log(1/eps);
    r_multiplier sizes the hashing range; small_error_exponent_divisor gates
    the hashing branch (eps <= 2**(-t/divisor)); subsample_ratio, the window
    multipliers and amplify_arity steer the inductive branch; base_n is the
    cutoff below which exact interpolation is used.
    """

    name: str
    A: float
    B: float
    r_multiplier: float
    small_error_exponent_divisor: int
    subsample_ratio: Fraction
    window_inner_multiplier: float
    window_outer_multiplier: float
    base_n: int
    amplify_arity: int

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "A": self.A,
            "B": self.B,
            "r_multiplier": self.r_multiplier,
            "small_error_exponent_divisor": self.small_error_exponent_divisor,
            "subsample_ratio": str(self.subsample_ratio),
            "window_inner_multiplier": self.window_inner_multiplier,
            "window_outer_multiplier": self.window_outer_multiplier,
            "base_n": self.base_n,
            "amplify_arity": self.amplify_arity,
        }

    @staticmethod
    def from_json(obj: dict) -> "ConstantsProfile":
        return ConstantsProfile(
            name=obj["name"],
            A=float(obj["A"]),
            B=float(obj["B"]),
            r_multiplier=float(obj["r_multiplier"]),
            small_error_exponent_divisor=int(obj["small_error_exponent_divisor"]),
            subsample_ratio=Fraction(obj["subsample_ratio"]),
            window_inner_multiplier=float(obj["window_inner_multiplier"]),
            window_outer_multiplier=float(obj["window_outer_multiplier"]),
            base_n=int(obj["base_n"]),
            amplify_arity=int(obj["amplify_arity"]),
        )


def paper_profile(field: FieldSpec) -> ConstantsProfile:
    """Constants large enough for the proved degree recurrence to close."""
    p = field.characteristic
    ab = 6_400_000 * p if p else 64_000_000
    return ConstantsProfile(
        name="paper",
        A=ab,
        B=ab,
        r_multiplier=6_400_000,
        small_error_exponent_divisor=160_000,
        subsample_ratio=Fraction(1, 10),
        window_inner_multiplier=20,
        window_outer_multiplier=300,
        base_n=10,
        amplify_arity=4,
    )


def practical_profile(field: FieldSpec) -> ConstantsProfile:
    """Small constants usable at desk scale; same shape, no proof attached."""
    p = field.characteristic
    ab = 24 if p in (0, 2) else 12 * p
    return ConstantsProfile(
        name="practical",
        A=ab,
        B=ab,
        r_multiplier=10,
        small_error_exponent_divisor=1,
        subsample_ratio=Fraction(1, 10),
        window_inner_multiplier=0.5,
        window_outer_multiplier=10,
        base_n=10,
        amplify_arity=4,
    )


def get_profile(name: str, field: FieldSpec) -> ConstantsProfile:
    if name == "paper":
        return paper_profile(field)
    if name == "practical":
        return practical_profile(field)
    raise ValueError(f"unknown profile {name!r}")


def _log2_inv(eps: Fraction) -> float:
    """log2(1/eps) as a float; eps must lie in (0, 1]."""
    if eps <= 0 or eps > 1:
        raise ValueError(f"error parameter must be in (0, 1], got {eps}")
    return math.log2(eps.denominator) - math.log2(eps.numerator)


def _ceil_log2_inv(eps: Fraction) -> int:
    """Smallest non-negative L with 2**-L <= eps, computed exactly."""
    if eps <= 0:
        raise ValueError("error parameter must be positive")
    num, den = eps.numerator, eps.denominator
    L = 0
    v = num
    while v < den:
        v <<= 1
        L += 1
    return L


def _iround(x: float) -> int:
    return math.floor(x + 0.5)


def declared_bound(
    profile: ConstantsProfile, field: FieldSpec, n: int, t: int, eps: Fraction
) -> int:
    L = _log2_inv(eps)
    base = profile.A * math.sqrt(max(t, 0) * L) + profile.B * L
    if field.characteristic == 0:
        base *= max(1, math.ceil(math.log2(max(n, 2))))
    return math.ceil(base)


def _small_error_branch(eps: Fraction, t: int, divisor: int) -> bool:
    """Exact test for eps <= 2**(-t/divisor)."""
    num, den = eps.numerator, eps.denominator
    return num**divisor * (1 << t) <= den**divisor


# ---------------------------------------------------------------------------
# Recipes


class Recipe:
    """A named construction plus everything needed to draw and judge samples."""

    __slots__ = (
        "kind",
        "field",
        "profile",
        "n",
        "arity",
        "eps",
        "declared_degree_bound",
        "randomness_free",
        "params",
        "_sampler",
        "_targets",
        "_children",
    )

    def __init__(
        self,
        kind: str,
        field: FieldSpec,
        profile: ConstantsProfile | None,
        n: int,
        arity: int,
        eps: Fraction,
        declared_degree_bound: int,
        randomness_free: bool,
        params: dict,
        sampler: Callable[[SeedStream], tuple[PolyExpr, ...]],
        targets: tuple[Spectrum, ...],
        children: tuple["Recipe", ...] = (),
    ):
        self.kind = kind
        self.field = field
        self.profile = profile
        self.n = n
        self.arity = arity
        self.eps = eps
        self.declared_degree_bound = declared_degree_bound
        self.randomness_free = randomness_free
        self.params = params
        self._sampler = sampler
        self._targets = targets
        self._children = children

    def target_spectra(self) -> tuple[Spectrum, ...]:
        return self._targets

    def children(self) -> tuple["Recipe", ...]:
        return self._children

    def to_json(self) -> dict:
        return {
            "schema_version": 1,
            "kind": self.kind,
            "n": self.n,
            "arity": self.arity,
            "eps": str(self.eps),
            "field": self.field.characteristic,
            "profile": self.profile.to_json() if self.profile else None,
            "declared_degree_bound": self.declared_degree_bound,
            "randomness_free": self.randomness_free,
            "params": self.params,
        }


def sample_stream(recipe: Recipe, stream: SeedStream) -> tuple[PolyExpr, ...]:
    return recipe._sampler(stream)


def sample(recipe: Recipe, seed: int) -> tuple[PolyExpr, ...]:
    """Draw the recipe's polynomial tuple; a pure function of (recipe, seed)."""
    return sample_stream(recipe, SeedStream.from_seed(seed))


def _assert_declared(recipe_kind: str, structural: int, declared: int, detail: str) -> None:
    if structural > declared:
        raise ValueError(
            f"profile constants too small for {recipe_kind} ({detail}): "
            f"worst construction degree {structural} exceeds declared {declared}"
        )


# -- elementary recipes ------------------------------------------------------


def constant_recipe(field: FieldSpec, n: int, value: int) -> Recipe:
    if value not in (0, 1):
        raise ValueError("constant recipes represent Boolean constants")
    expr = Constant(field.element(value))

    return Recipe(
        kind="constant",
        field=field,
        profile=None,
        n=n,
        arity=1,
        eps=Fraction(0),
        declared_degree_bound=0,
        randomness_free=True,
        params={"n": n, "value": value},
        sampler=lambda stream: (expr,),
        targets=(named_spectrum("CONST", n, value),),
    )


def exact_recipe(field: FieldSpec, spectra: Sequence[Spectrum]) -> Recipe:
    """Zero-error representation by direct interpolation, degree <= n."""
    spectra = tuple(spectra)
    if not spectra:
        raise ValueError("need at least one spectrum")
    n = spectra[0].n
    if any(s.n != n for s in spectra):
        raise ValueError("spectra must share one variable count")
    polys = [exact_sympoly(s, field) for s in spectra]
    all_vars = tuple(Var(i) for i in range(n))
    exprs = tuple(SymApply(poly, all_vars) for poly in polys)
    declared = max(poly.degree for poly in polys)

    return Recipe(
        kind="exact",
        field=field,
        profile=None,
        n=n,
        arity=len(spectra),
        eps=Fraction(0),
        declared_degree_bound=declared,
        randomness_free=True,
        params={"spectra": [s.text() for s in spectra]},
        sampler=lambda stream: exprs,
        targets=spectra,
    )


def _razborov_exprs(
    field: FieldSpec, n: int, alphas: Sequence[Sequence[int]], negate: bool
) -> tuple[PolyExpr, ...]:
    p = field.characteristic
    indices = tuple(range(n))
    factors = []
    for alpha in alphas:
        form: PolyExpr = LinearForm(tuple(alpha), indices)
        if negate:
            # Feed 1 - x into the form: constant sum(alpha) minus the form.
            total = 0
            for a in alpha:
                total = (total + a) % p
            form = Sum(field.element(total), ((field.element(-1), form),))
        if p > 2:
            form = Power(form, p - 1)
        factors.append(one_minus(form))
    disjunction = one_minus(Product(tuple(factors)))
    if negate:
        return (one_minus(disjunction),)
    return (disjunction,)


def razborov_or(
    n: int, eps: Fraction, field: FieldSpec, negate: bool = False
) -> Recipe:
    """Disjunction via random linear forms raised to the p-1 power.

    Each of ceil(log2(1/eps)) forms vanishes on a fixed nonzero input with
    probability exactly 1/p, so the error at any weight >= 1 is at most eps,
    and the output on the all-zero input is exactly 0 (or 1 when negated
    into a conjunction).  Requires positive characteristic.
    """
    p = field.characteristic
    if p == 0:
        raise ValueError("positive characteristic required; use char0_or instead")
    if n < 1:
        raise ValueError("n must be at least 1")
    eps = Fraction(eps)
    if not 0 < eps < 1:
        raise ValueError(f"error parameter must be in (0, 1), got {eps}")
    ell = max(1, _ceil_log2_inv(eps))
    declared = (p - 1) * ell

    def sampler(stream: SeedStream) -> tuple[PolyExpr, ...]:
        rng = stream.rng()
        alphas = [[rng.randrange(p) for _ in range(n)] for _ in range(ell)]
        return _razborov_exprs(field, n, alphas, negate)

    return Recipe(
        kind="razborov_or",
        field=field,
        profile=None,
        n=n,
        arity=1,
        eps=eps,
        declared_degree_bound=declared,
        randomness_free=False,
        params={"n": n, "negate": negate, "forms": ell},
        sampler=sampler,
        targets=(named_spectrum("AND" if negate else "OR", n),),
    )


def _char0_or_expr(
    field: FieldSpec,
    indices: Sequence[int],
    eps: Fraction,
    stream: SeedStream,
) -> tuple[PolyExpr, int]:
    """Disjunction gadget over the given variable indices, rationals only.

    Returns the expression and its formal degree bound.  Each run samples
    one subset per density 2**-j; the run evaluates to exactly 1 when some
    sampled sum is exactly 1.  Runs multiply the failure probability.
    """
    m = len(indices)
    if m == 0:
        return Constant(field.element(0)), 0
    ell = max(1, _ceil_log2_inv(eps))
    scales = math.ceil(math.log2(m)) if m > 1 else 0
    run_factors = []
    for run in range(ell):
        rng = stream.child(("run", run)).rng()
        level_factors = []
        for j in range(scales + 1):
            if j == 0:
                chosen = tuple(indices)
            else:
                chosen = tuple(i for i in indices if rng.randrange(1 << j) == 0)
            summed: PolyExpr
            if chosen:
                summed = LinearForm((1,) * len(chosen), chosen)
            else:
                summed = Constant(field.element(0))
            level_factors.append(one_minus(summed))
        run_factors.append(one_minus(Product(tuple(level_factors))))
    expr = one_minus(Product(tuple(one_minus(r) for r in run_factors)))
    return expr, ell * (scales + 1)


def char0_or(n: int, eps: Fraction) -> Recipe:
    """Disjunction over the rationals via subsampled sums at all densities."""
    if n < 1:
        raise ValueError("n must be at least 1")
    eps = Fraction(eps)
    if not 0 < eps < 1:
        raise ValueError(f"error parameter must be in (0, 1), got {eps}")
    field = FieldSpec(0)
    ell = max(1, _ceil_log2_inv(eps))
    logn = max(1, math.ceil(math.log2(max(n, 2)))) if n > 1 else 1
    declared = 4 * logn * ell

    def sampler(stream: SeedStream) -> tuple[PolyExpr, ...]:
        expr, deg = _char0_or_expr(field, range(n), eps, stream)
        return (expr,)

    scales = math.ceil(math.log2(n)) if n > 1 else 0
    _assert_declared("char0_or", ell * (scales + 1), declared, f"n={n}, eps={eps}")

    return Recipe(
        kind="char0_or",
        field=field,
        profile=None,
        n=n,
        arity=1,
        eps=eps,
        declared_degree_bound=declared,
        randomness_free=False,
        params={"n": n, "runs": ell},
        sampler=sampler,
        targets=(named_spectrum("OR", n),),
    )


# -- threshold vectors -------------------------------------------------------


def threshold_tuple(
    n: int,
    thresholds: Sequence[int],
    eps: Fraction,
    field: FieldSpec,
    profile: ConstantsProfile,
) -> Recipe:
    """Joint randomized representation of the thresholds [w >= t_i].

    One shared draw serves every component.  Branches: exact interpolation
    for small n (or whenever the hashing range covers n), a hashed
    split-and-recombine construction when eps is very small relative to the
    largest threshold, and otherwise recursion on a subsampled input vector
    with exact interpolation near each threshold.
    """
    thresholds = tuple(int(t) for t in thresholds)
    if n < 1:
        raise ValueError("n must be at least 1")
    if not thresholds:
        raise ValueError("need at least one threshold")
    if any(t < 0 or t > n for t in thresholds):
        raise ValueError(f"thresholds must lie in [0, {n}]")
    eps = Fraction(eps)
    if not 0 < eps < Fraction(1, 3):
        raise ValueError(
            f"error parameter must be in (0, 1/3), got {eps}; "
            "reduce the error of a coarser recipe instead"
        )

    t_max = max(thresholds)
    declared = declared_bound(profile, field, n, t_max, eps)
    targets = tuple(named_spectrum("THR", n, t) for t in thresholds)
    base_params = {
        "n": n,
        "thresholds": list(thresholds),
        "t_max": t_max,
    }

    def finish(branch, sampler, structural, randomness_free, extra=None):
        params = dict(base_params)
        params["branch"] = branch
        if extra:
            params.update(extra)
        _assert_declared(
            "threshold_tuple",
            structural,
            declared,
            f"n={n}, thresholds={thresholds}, eps={eps}, branch={branch}",
        )
        return Recipe(
            kind="threshold_tuple",
            field=field,
            profile=profile,
            n=n,
            arity=len(thresholds),
            eps=eps,
            declared_degree_bound=declared,
            randomness_free=randomness_free,
            params=params,
            sampler=sampler,
            targets=targets,
        )

    def exact_tuple(branch_label: str):
        polys = [exact_sympoly(named_spectrum("THR", n, t), field) for t in thresholds]
        all_vars = tuple(Var(i) for i in range(n))
        exprs = tuple(SymApply(poly, all_vars) for poly in polys)
        structural = max(poly.degree for poly in polys)
        return finish(branch_label, lambda stream: exprs, structural, True)

    if n <= profile.base_n or t_max == 0:
        return exact_tuple("exact")

    small = _small_error_branch(eps, t_max, profile.small_error_exponent_divisor)
    L = _log2_inv(eps)

    if small:
        r = math.ceil(profile.r_multiplier * L)
        if n <= r:
            return exact_tuple("exact")
        return _hash_branch(
            n, thresholds, eps, field, profile, r, finish
        )
    return _inductive_branch(n, thresholds, eps, field, profile, L, finish)


def _hash_branch(n, thresholds, eps, field, profile, r, finish):
    """Split weights at r: exact interpolation below, hashed count above.

    The low part P1 matches the threshold on every weight <= r.  The high
    part hashes variables into r buckets, detects nonempty buckets with a
    vanishing-resistant form per bucket, and applies the exact r-variable
    threshold to the detector outputs; fixing the untouched detectors to 0
    keeps every weight below the threshold exact.
    """
    p = field.characteristic
    t_max = max(thresholds)
    if t_max >= r:
        raise ValueError(
            f"hashing range {r} does not dominate threshold {t_max}; "
            "profile constants too small"
        )
    low_polys = [
        interpolate_window(
            [1 if w >= t else 0 for w in range(r + 1)], 0, field
        )
        for t in thresholds
    ]
    high_polys = [exact_sympoly(named_spectrum("THR", r, t), field) for t in thresholds]
    all_vars = tuple(Var(i) for i in range(n))

    eps_or = Fraction(1, 4)
    logn = max(1, math.ceil(math.log2(max(n, 2))))
    if p > 0:
        structural = r + (p - 1) * r
    else:
        or_deg = 2 * (math.ceil(math.log2(n)) + 1)
        structural = r + r * or_deg

    def sampler(stream: SeedStream) -> tuple[PolyExpr, ...]:
        rng = stream.child("hash").rng()
        buckets: list[list[int]] = [[] for _ in range(r)]
        for i in range(n):
            buckets[rng.randrange(r)].append(i)
        detectors: list[PolyExpr] = []
        if p > 0:
            for j, members in enumerate(buckets):
                if not members:
                    detectors.append(Constant(field.element(0)))
                    continue
                coeffs = tuple(rng.randrange(p) for _ in members)
                form: PolyExpr = LinearForm(coeffs, tuple(members))
                if p > 2:
                    form = Power(form, p - 1)
                detectors.append(form)
        else:
            for j, members in enumerate(buckets):
                gadget, _ = _char0_or_expr(
                    field, members, eps_or, stream.child(("bucket", j))
                )
                detectors.append(gadget)
        det = tuple(detectors)
        out = []
        for low_poly, high_poly in zip(low_polys, high_polys):
            p1 = SymApply(low_poly, all_vars)
            p2 = SymApply(high_poly, det)
            out.append(one_minus(Product((one_minus(p1), one_minus(p2)))))
        return tuple(out)

    return finish(
        "hash",
        sampler,
        structural,
        False,
        extra={"hash_range": r},
    )


def _inductive_branch(n, thresholds, eps, field, profile, L, finish):
    """Recurse on a uniformly subsampled copy of the input.

    Each component interpolates the threshold exactly on a window around t_i
    and asks the subsampled copy which side of the window the weight falls
    on; windows that already cover [0, n] make the component deterministic.
    """
    t_max = max(thresholds)
    theta = math.sqrt(t_max * L)
    H = math.ceil(profile.window_outer_multiplier * theta)
    ratio = profile.subsample_ratio
    n_hat = int(n * ratio)

    plans = []
    child_thresholds: list[int] = []
    for t in thresholds:
        lo = max(0, t - H)
        hi = min(n, t + H)
        window_values = [1 if w >= t else 0 for w in range(lo, hi + 1)]
        e_poly = interpolate_window(window_values, lo, field)
        if t == 0 or (lo == 0 and hi == n):
            plans.append(("exact", e_poly, None))
            continue
        scaled = float(t) * float(ratio)
        inner = profile.window_inner_multiplier * theta
        t_prime = min(max(_iround(scaled), 0), n_hat)
        t_plus = min(max(_iround(scaled + inner), 0), n_hat)
        t_minus = min(max(_iround(scaled - inner), 0), n_hat)
        slot = len(child_thresholds)
        child_thresholds.extend((t_prime, t_plus, t_minus))
        plans.append(("mixed", e_poly, slot))

    if not child_thresholds:
        all_vars = tuple(Var(i) for i in range(n))
        exprs = tuple(SymApply(poly, all_vars) for _, poly, _ in plans)
        structural = max(poly.degree for _, poly, _ in plans)
        return finish("inductive", lambda stream: exprs, structural, True)

    if n_hat < 1:
        raise ValueError(f"subsample of n={n} at ratio {ratio} is empty")
    eps_child = eps / profile.amplify_arity
    child = threshold_tuple(n_hat, tuple(child_thresholds), eps_child, field, profile)

    window_deg = max(poly.degree for _, poly, _ in plans)
    if child.randomness_free:
        # The child's polynomials are fixed, so budget its true degree
        # rather than the (much coarser) declared formula.
        child_deg = max(e.deg for e in sample(child, 0))
    else:
        child_deg = child.declared_degree_bound
    structural = 2 * child_deg + max(window_deg, child_deg)

    def sampler(stream: SeedStream) -> tuple[PolyExpr, ...]:
        rng = stream.child("sub").rng()
        sub = [rng.randrange(n) for _ in range(n_hat)]
        inner_exprs = sample_stream(child, stream.child("inner"))
        memo: dict = {}
        remapped = tuple(_remap_vars(e, sub, memo) for e in inner_exprs)
        all_vars = tuple(Var(i) for i in range(n))
        out = []
        for kind, e_poly, slot in plans:
            e_expr = SymApply(e_poly, all_vars)
            if kind == "exact":
                out.append(e_expr)
                continue
            t_prime_e, t_plus_e, t_minus_e = remapped[slot : slot + 3]
            near = Product((one_minus(t_plus_e), t_minus_e))
            correction = Product((near, sum_of(field, [(1, e_expr), (-1, t_prime_e)])))
            out.append(sum_of(field, [(1, t_prime_e), (1, correction)]))
        return tuple(out)

    return finish(
        "inductive",
        sampler,
        structural,
        False,
        extra={"subsample_n": n_hat, "window_halfwidth": H},
    )


def t_constant_recipe(
    f: Spectrum, eps: Fraction, field: FieldSpec, profile: ConstantsProfile
) -> Recipe:
    """Representation of a spectrum that is constant from some weight t on.

    Telescopes the spectrum into at most t threshold indicators served by a
    single shared threshold-vector draw, so the whole combination fails only
    when that one draw fails.
    """
    eps = Fraction(eps)
    t = min_t_constant(f)
    coeffs = threshold_combination(f)
    params = {"spectrum": f.text(), "t": t}

    if t == 0:
        base = constant_recipe(field, f.n, f.values[0])
        return Recipe(
            kind="t_constant",
            field=field,
            profile=profile,
            n=f.n,
            arity=1,
            eps=Fraction(0),
            declared_degree_bound=0,
            randomness_free=True,
            params=params,
            sampler=base._sampler,
            targets=(f,),
            children=(base,),
        )

    child = threshold_tuple(f.n, tuple(range(1, t + 1)), eps, field, profile)

    def sampler(stream: SeedStream) -> tuple[PolyExpr, ...]:
        parts = sample_stream(child, stream)
        terms = [(coeffs[j], parts[j - 1]) for j in range(1, t + 1)]
        return (sum_of(field, terms, constant=coeffs[0]),)

    return Recipe(
        kind="t_constant",
        field=field,
        profile=profile,
        n=f.n,
        arity=1,
        eps=eps,
        declared_degree_bound=child.declared_degree_bound,
        randomness_free=child.randomness_free,
        params=params,
        sampler=sampler,
        targets=(f,),
        children=(child,),
    )


def bounded_recipe(
    h: Spectrum, eps: Fraction, field: FieldSpec, profile: ConstantsProfile
) -> Recipe:
    """Representation of a spectrum constant on a middle window [k, n-k].

    With middle value 0 the spectrum splits as h = h1 + (1 - h2 reflected):
    h1 keeps the left part and is constant 0 from weight k on, h2 encodes the
    complemented, reversed right part and is constant 1 from weight k on.
    Both halves go through the telescoping construction at eps/2 with
    independent draws.  Middle value 1 is handled on the complement.
    """
    eps = Fraction(eps)
    n = h.n
    k, degenerate = bounded_radius_flagged(h)
    if degenerate:
        raise ValueError("spectrum has no constant middle window")
    middle = h.values[k]

    if middle == 1:
        inner = bounded_recipe(complement_spectrum(h), eps, field, profile)

        def sampler(stream: SeedStream) -> tuple[PolyExpr, ...]:
            (inner_expr,) = sample_stream(inner, stream)
            return (one_minus(inner_expr),)

        return Recipe(
            kind="bounded",
            field=field,
            profile=profile,
            n=n,
            arity=1,
            eps=eps,
            declared_degree_bound=inner.declared_degree_bound,
            randomness_free=inner.randomness_free,
            params={"spectrum": h.text(), "radius": k, "complemented": True},
            sampler=sampler,
            targets=(h,),
            children=(inner,),
        )

    h1 = Spectrum(tuple(h.values[w] if w < k else 0 for w in range(n + 1)))
    h2 = Spectrum(
        tuple(1 - h.values[n - w] if w < k else 1 for w in range(n + 1))
    )
    left = t_constant_recipe(h1, eps / 2, field, profile)
    right = t_constant_recipe(h2, eps / 2, field, profile)

    def sampler(stream: SeedStream) -> tuple[PolyExpr, ...]:
        (left_expr,) = sample_stream(left, stream.child("left"))
        (right_expr,) = sample_stream(right, stream.child("right"))
        reflected = _reflect_vars(right_expr, field, {})
        return (sum_of(field, [(1, left_expr), (-1, reflected)], constant=1),)

    return Recipe(
        kind="bounded",
        field=field,
        profile=profile,
        n=n,
        arity=1,
        eps=eps,
        declared_degree_bound=max(
            left.declared_degree_bound, right.declared_degree_bound
        ),
        randomness_free=left.randomness_free and right.randomness_free,
        params={"spectrum": h.text(), "radius": k, "complemented": False},
        sampler=sampler,
        targets=(h,),
        children=(left, right),
    )


def general_recipe(
    f: Spectrum, eps: Fraction, field: FieldSpec, profile: ConstantsProfile
) -> Recipe:
    """Representation of an arbitrary spectrum, choosing the cheaper route.

    Route one (when the middle-window period is 1 or a power of the
    characteristic): split f = g XOR h, represent g exactly below its period
    and h through the bounded construction, then recombine as g + h - 2gh.
    Route two (always available): telescope f through one full
    threshold-vector polynomial.  Ties prefer route one.
    """
    eps = Fraction(eps)
    n = f.n

    decomposition = None
    if n >= 3:
        report = standard_decomposition(f, field.characteristic)
        if report.period_is_char_power:
            g_poly = periodic_exact(report.g, field)
            h_recipe = bounded_recipe(report.h, eps / 2, field, profile)
            decomposition = (report, g_poly, h_recipe)

    coeffs = threshold_combination(f)
    t_top = min_t_constant(f)
    direct_child = (
        threshold_tuple(n, tuple(range(1, n + 1)), eps, field, profile)
        if n >= 1
        else None
    )
    direct_declared = direct_child.declared_degree_bound if direct_child else 0

    if decomposition is not None:
        report, g_poly, h_recipe = decomposition
        decomp_declared = g_poly.degree + h_recipe.declared_degree_bound
        if decomp_declared <= direct_declared:
            all_vars = tuple(Var(i) for i in range(n))

            def sampler(stream: SeedStream) -> tuple[PolyExpr, ...]:
                g_expr = SymApply(g_poly, all_vars)
                (h_expr,) = sample_stream(h_recipe, stream)
                gh = Product((g_expr, h_expr))
                return (
                    sum_of(field, [(1, g_expr), (1, h_expr), (-2, gh)]),
                )

            return Recipe(
                kind="general",
                field=field,
                profile=profile,
                n=n,
                arity=1,
                eps=eps,
                declared_degree_bound=decomp_declared,
                randomness_free=h_recipe.randomness_free,
                params={
                    "spectrum": f.text(),
                    "route": "decomposition",
                    "period_g": report.period_g,
                    "bounded_radius_h": report.bounded_radius_h,
                },
                sampler=sampler,
                targets=(f,),
                children=(h_recipe,),
            )

    if direct_child is None:
        raise ValueError("spectrum too small for any construction route")

    def sampler(stream: SeedStream) -> tuple[PolyExpr, ...]:
        parts = sample_stream(direct_child, stream)
        terms = [(coeffs[j], parts[j - 1]) for j in range(1, n + 1)]
        return (sum_of(field, terms, constant=coeffs[0]),)

    return Recipe(
        kind="general",
        field=field,
        profile=profile,
        n=n,
        arity=1,
        eps=eps,
        declared_degree_bound=direct_declared,
        randomness_free=direct_child.randomness_free,
        params={"spectrum": f.text(), "route": "direct", "t_constant_from": t_top},
        sampler=sampler,
        targets=(f,),
        children=(direct_child,),
    )


# -- combinators --------------------------------------------------------------


def majority_tail(ell: int, eps: Fraction) -> Fraction:
    """P[Binomial(ell, eps) >= ceil(ell/2)], computed exactly."""
    eps = Fraction(eps)
    need = (ell + 1) // 2
    total = Fraction(0)
    for k in range(need, ell + 1):
        total += math.comb(ell, k) * eps**k * (1 - eps) ** (ell - k)
    return total


def amplify(recipe: Recipe, delta: Fraction) -> Recipe:
    """Reduce the error of a recipe to delta by a majority vote of copies.

    Uses the smallest odd ell whose Binomial(ell, eps) majority tail is at
    most delta, and routes ell independent draws through the exact majority
    polynomial.  Fixing a correct majority of the votes already determines
    the majority value, so wayward copies cannot disturb a correct vote.
    """
    delta = Fraction(delta)
    if recipe.eps == 0:
        raise ValueError("recipe is already exact; nothing to amplify")
    if delta >= recipe.eps:
        raise ValueError(
            f"target error {delta} is not below the current error {recipe.eps}"
        )
    if delta <= 0:
        raise ValueError("target error must be positive")
    ell = 1
    while majority_tail(ell, recipe.eps) > delta:
        ell += 2
    if ell == 1:
        return recipe
    field = recipe.field
    maj_poly = exact_sympoly(named_spectrum("MAJ", ell), field)

    def sampler(stream: SeedStream) -> tuple[PolyExpr, ...]:
        draws = [
            sample_stream(recipe, stream.child(("vote", j))) for j in range(ell)
        ]
        return tuple(
            SymApply(maj_poly, tuple(draws[j][c] for j in range(ell)))
            for c in range(recipe.arity)
        )

    return Recipe(
        kind="amplify",
        field=field,
        profile=recipe.profile,
        n=recipe.n,
        arity=recipe.arity,
        eps=delta,
        declared_degree_bound=ell * recipe.declared_degree_bound,
        randomness_free=recipe.randomness_free,
        params={"delta": str(delta), "votes": ell, "child": recipe.to_json()},
        sampler=sampler,
        targets=recipe.target_spectra(),
        children=(recipe,),
    )


def compose(outer: Recipe, inners: Sequence[Recipe]) -> Recipe:
    """Feed inner recipe outputs into the outer recipe's variables.

    The inner components are flattened in order; their count must equal the
    outer variable count, and they must share one variable count and field.
    Errors add: the composite can only fail when some draw fails.
    """
    inners = tuple(inners)
    if outer.arity != 1:
        raise ValueError("outer recipe must have a single component")
    if not inners:
        raise ValueError("need at least one inner recipe")
    total = sum(r.arity for r in inners)
    if total != outer.n:
        raise ValueError(
            f"outer recipe reads {outer.n} inputs but inners provide {total}"
        )
    field = outer.field
    n = inners[0].n
    if any(r.n != n or r.field != field for r in inners):
        raise ValueError("inner recipes must share variable count and field")

    inner_targets = [s for r in inners for s in r.target_spectra()]
    outer_target = outer.target_spectra()[0]
    composite = Spectrum(
        tuple(
            outer_target.values[sum(s.values[w] for s in inner_targets)]
            for w in range(n + 1)
        )
    )
    eps_total = outer.eps + sum(r.eps for r in inners)
    declared = outer.declared_degree_bound * max(
        r.declared_degree_bound for r in inners
    )

    def sampler(stream: SeedStream) -> tuple[PolyExpr, ...]:
        (outer_expr,) = sample_stream(outer, stream.child("outer"))
        pieces: list[PolyExpr] = []
        for idx, r in enumerate(inners):
            pieces.extend(sample_stream(r, stream.child(("inner", idx))))
        return (_substitute_exprs(outer_expr, pieces, field, {}),)

    return Recipe(
        kind="compose",
        field=field,
        profile=outer.profile,
        n=n,
        arity=1,
        eps=eps_total,
        declared_degree_bound=declared,
        randomness_free=outer.randomness_free
        and all(r.randomness_free for r in inners),
        params={
            "outer": outer.to_json(),
            "inners": [r.to_json() for r in inners],
        },
        sampler=sampler,
        targets=(composite,),
        children=(outer,) + inners,
    )


def _substitute_exprs(
    e: PolyExpr, pieces: Sequence[PolyExpr], field: FieldSpec, memo: dict
) -> PolyExpr:
    """Replace Var(j) by pieces[j], preserving sharing."""
    key = id(e)
    hit = memo.get(key)
    if hit is not None:
        return hit
    if isinstance(e, Constant):
        out: PolyExpr = e
    elif isinstance(e, Var):
        out = pieces[e.index]
    elif isinstance(e, LinearForm):
        out = Sum(
            field.element(0),
            tuple((c, pieces[i]) for c, i in zip(e.coeffs, e.indices)),
        )
    elif isinstance(e, Power):
        out = Power(_substitute_exprs(e.base, pieces, field, memo), e.exponent)
    elif isinstance(e, Product):
        out = Product(
            tuple(_substitute_exprs(f, pieces, field, memo) for f in e.factors)
        )
    elif isinstance(e, Sum):
        out = Sum(
            e.constant,
            tuple((c, _substitute_exprs(t, pieces, field, memo)) for c, t in e.terms),
        )
    else:
        out = SymApply(
            e.poly,
            tuple(_substitute_exprs(t, pieces, field, memo) for t in e.inputs),
        )
    memo[key] = out
    return out


def sum_recipes(
    recipes: Sequence[Recipe],
    coefficients: Sequence[FieldElement],
    target: Spectrum,
) -> Recipe:
    """Linear combination of single-component recipes with independent draws.

    The combination is exact whenever every draw is correct, so the error
    adds while the declared degree is just the maximum.
    """
    recipes = tuple(recipes)
    if not recipes:
        raise ValueError("need at least one recipe")
    if len(coefficients) != len(recipes):
        raise ValueError("one coefficient per recipe required")
    field = recipes[0].field
    n = recipes[0].n
    if any(r.n != n or r.field != field or r.arity != 1 for r in recipes):
        raise ValueError("recipes must be single-component on one variable set")
    coeffs = tuple(field.element(c) for c in coefficients)

    def sampler(stream: SeedStream) -> tuple[PolyExpr, ...]:
        terms = []
        for idx, (c, r) in enumerate(zip(coeffs, recipes)):
            (expr,) = sample_stream(r, stream.child(("part", idx)))
            terms.append((c, expr))
        return (sum_of(field, terms),)

    return Recipe(
        kind="sum",
        field=field,
        profile=recipes[0].profile,
        n=n,
        arity=1,
        eps=sum((r.eps for r in recipes), Fraction(0)),
        declared_degree_bound=max(r.declared_degree_bound for r in recipes),
        randomness_free=all(r.randomness_free for r in recipes),
        params={
            "coefficients": [field.format_element(c) for c in coeffs],
            "target": target.text(),
            "parts": [r.to_json() for r in recipes],
        },
        sampler=sampler,
        targets=(target,),
        children=recipes,
    )


def xor_combine(a: Recipe, b: Recipe) -> Recipe:
    """Exclusive-or of two Boolean recipes via a + b - 2ab."""
    if a.n != b.n or a.field != b.field:
        raise ValueError("recipes must share variable count and field")
    if a.arity != 1 or b.arity != 1:
        raise ValueError("xor combines single-component recipes")
    field = a.field
    target = xor_spectra(a.target_spectra()[0], b.target_spectra()[0])

    def sampler(stream: SeedStream) -> tuple[PolyExpr, ...]:
        (ea,) = sample_stream(a, stream.child("a"))
        (eb,) = sample_stream(b, stream.child("b"))
        return (sum_of(field, [(1, ea), (1, eb), (-2, Product((ea, eb)))]),)

    return Recipe(
        kind="xor",
        field=field,
        profile=a.profile,
        n=a.n,
        arity=1,
        eps=a.eps + b.eps,
        declared_degree_bound=a.declared_degree_bound + b.declared_degree_bound,
        randomness_free=a.randomness_free and b.randomness_free,
        params={"a": a.to_json(), "b": b.to_json()},
        sampler=sampler,
        targets=(target,),
        children=(a, b),
    )


# ---------------------------------------------------------------------------
# Exhaustive randomness enumeration (small recipes only)


def enumerate_draws(
    recipe: Recipe, limit: int = 1 << 22
) -> Iterator[tuple[Fraction, tuple[PolyExpr, ...]]]:
    """Yield (probability, drawn tuple) over the whole randomness space.

    Supported for deterministic recipes, the vanishing-form disjunction, and
    majority votes over supported recipes; raises otherwise.  The limit
    guards against runaway spaces.
    """
    if recipe.randomness_free:
        yield Fraction(1), sample(recipe, 0)
        return
    if recipe.kind == "razborov_or":
        p = recipe.field.characteristic
        n = recipe.n
        ell = recipe.params["forms"]
        count = p ** (ell * n)
        if count > limit:
            raise ValueError(f"randomness space {count} exceeds limit {limit}")
        weight = Fraction(1, count)
        negate = recipe.params["negate"]
        for flat in iter_product(range(p), repeat=ell * n):
            alphas = [flat[j * n : (j + 1) * n] for j in range(ell)]
            yield weight, _razborov_exprs(recipe.field, n, alphas, negate)
        return
    if recipe.kind == "amplify":
        child = recipe.children()[0]
        ell = recipe.params["votes"]
        maj_poly = exact_sympoly(named_spectrum("MAJ", ell), recipe.field)
        pools = [list(enumerate_draws(child, limit)) for _ in range(ell)]
        total = 1
        for pool in pools:
            total *= len(pool)
        if total > limit:
            raise ValueError(f"randomness space {total} exceeds limit {limit}")
        for combo in iter_product(*pools):
            prob = Fraction(1)
            for q, _ in combo:
                prob *= q
            exprs = tuple(
                SymApply(maj_poly, tuple(draw[c] for _, draw in combo))
                for c in range(recipe.arity)
            )
            yield prob, exprs
        return
    raise ValueError(f"enumeration not supported for kind {recipe.kind!r}")


# ---------------------------------------------------------------------------
# Serialization


def recipe_from_json(obj: dict) -> Recipe:
    """Rebuild a recipe from its serialized form by re-running its constructor."""
    kind = obj["kind"]
    field = FieldSpec(int(obj["field"]))
    eps = Fraction(obj["eps"])
    profile = (
        ConstantsProfile.from_json(obj["profile"]) if obj.get("profile") else None
    )
    params = obj["params"]
    if kind == "constant":
        return constant_recipe(field, params["n"], params["value"])
    if kind == "exact":
        from .symfun import spectrum as parse_spectrum

        return exact_recipe(field, [parse_spectrum(s) for s in params["spectra"]])
    if kind == "razborov_or":
        return razborov_or(params["n"], eps, field, params["negate"])
    if kind == "char0_or":
        return char0_or(params["n"], eps)
    if kind == "threshold_tuple":
        return threshold_tuple(
            params["n"], tuple(params["thresholds"]), eps, field, profile
        )
    if kind == "t_constant":
        from .symfun import spectrum as parse_spectrum

        return t_constant_recipe(parse_spectrum(params["spectrum"]), eps, field, profile)
    if kind == "bounded":
        from .symfun import spectrum as parse_spectrum

        return bounded_recipe(parse_spectrum(params["spectrum"]), eps, field, profile)
    if kind == "general":
        from .symfun import spectrum as parse_spectrum

        return general_recipe(parse_spectrum(params["spectrum"]), eps, field, profile)
    if kind == "amplify":
        child = recipe_from_json(params["child"])
        return amplify(child, Fraction(params["delta"]))
    if kind == "compose":
        outer = recipe_from_json(params["outer"])
        inners = [recipe_from_json(x) for x in params["inners"]]
        return compose(outer, inners)
    if kind == "sum":
        from .symfun import spectrum as parse_spectrum

        parts = [recipe_from_json(x) for x in params["parts"]]
        coeffs = [field.parse_element(c) for c in params["coefficients"]]
        return sum_recipes(parts, coeffs, parse_spectrum(params["target"]))
    if kind == "xor":
        return xor_combine(
            recipe_from_json(params["a"]), recipe_from_json(params["b"])
        )
    raise ValueError(f"unknown recipe kind {kind!r}")
