"""Empirical and exact validation of sampled polynomial recipes.

Error measurement is per Hamming weight: by symmetry of every construction
(coefficients are drawn identically across variables), the error probability
at any point depends only on its weight, so the stratified mode evaluates
draws on one representative point per weight.  Small variable counts can be
checked exhaustively instead, and a few constructions admit closed-form
error values.
"""

from __future__ import annotations

import bisect
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from .polyalg import (
    FieldElement,
    FieldSpec,
    MultilinearPoly,
    SymPoly,
)
from .probpoly import (
    Constant,
    LinearForm,
    PolyExpr,
    Power,
    Product,
    Recipe,
    SeedStream,
    Sum,
    SymApply,
    Var,
    eval_expr,
    majority_tail,
    recipe_from_json,
    sample_stream,
)
from .symfun import Spectrum

EXHAUSTIVE_LIMIT = 14


@dataclass(frozen=True, slots=True)
class ErrorReport:
    """Worst observed disagreement frequency per weight, with its context.

    slack is three standard deviations of the estimate at the recipe's error
    level; passed means every weight stayed within eps plus slack.
    """

    mode: str
    trials: int
    eps: Fraction
    per_weight: tuple[float, ...]
    worst: float
    worst_weight: int
    slack: float
    passed: bool

    def to_json(self) -> dict:
        return {
            "schema_version": 1,
            "mode": self.mode,
            "trials": self.trials,
            "eps": str(self.eps),
            "per_weight": list(self.per_weight),
            "worst": self.worst,
            "worst_weight": self.worst_weight,
            "slack": self.slack,
            "passed": self.passed,
        }


class _PrefixEvaluator:
    """Evaluates expressions on the points 1^w 0^(n-w) for all w at once.

    Linear forms reduce to prefix sums over their sorted index lists and
    weight polynomials to cached value tables, so one draw can be scored on
    every weight in near-linear time.
    """

    def __init__(self, field: FieldSpec):
        self.field = field
        self.form_cache: dict[int, tuple[list[int], list[FieldElement]]] = {}
        self.poly_cache: dict[int, dict[int, FieldElement]] = {}

    def poly_at(self, poly: SymPoly, w: int) -> FieldElement:
        table = self.poly_cache.setdefault(id(poly), {})
        val = table.get(w)
        if val is None:
            val = poly.value_at_weight(w)
            table[w] = val
        return val

    def eval(self, e: PolyExpr, w: int, memo: dict) -> FieldElement:
        key = id(e)
        hit = memo.get(key)
        if hit is not None:
            return hit
        field = self.field
        p = field.characteristic
        if isinstance(e, Constant):
            val = e.value
        elif isinstance(e, Var):
            val = 1 if e.index < w else 0
        elif isinstance(e, LinearForm):
            cached = self.form_cache.get(key)
            if cached is None:
                pairs = sorted(zip(e.indices, e.coeffs))
                idx = [i for i, _ in pairs]
                prefix: list[FieldElement] = [0]
                acc = 0
                for _, c in pairs:
                    acc = (acc + c) % p if p else acc + c
                    prefix.append(acc)
                cached = (idx, prefix)
                self.form_cache[key] = cached
            idx, prefix = cached
            val = field.element(prefix[bisect.bisect_left(idx, w)])
        elif isinstance(e, Power):
            base = self.eval(e.base, w, memo)
            val = pow(base, e.exponent, p) if p else base**e.exponent
        elif isinstance(e, Product):
            val = 1
            for f in e.factors:
                val = field.mul(val, self.eval(f, w, memo))
                if val == 0:
                    break
        elif isinstance(e, Sum):
            acc = e.constant
            for c, t in e.terms:
                acc += c * self.eval(t, w, memo)
            val = acc % p if p else field.element(acc)
        elif isinstance(e, SymApply):
            vals = [self.eval(t, w, memo) for t in e.inputs]
            if all(v == 0 or v == 1 for v in vals):
                val = self.poly_at(e.poly, int(sum(vals)))
            else:
                d = min(e.poly.degree, len(vals))
                elem = [field.element(1)] + [field.element(0)] * d
                for v in vals:
                    for k in range(min(d, len(elem) - 1), 0, -1):
                        elem[k] = field.add(elem[k], field.mul(elem[k - 1], v))
                val = field.element(0)
                for k, c in enumerate(e.poly.coeffs):
                    if k > d:
                        break
                    if c != 0:
                        val = field.add(val, field.mul(c, elem[k]))
        else:
            raise TypeError(f"unknown expression node {type(e)!r}")
        memo[key] = val
        return val


def _wrong_counts_for_seeds(
    recipe_json: dict, master_seed: int, lo: int, hi: int
) -> list[int]:
    """Per-weight count of draws in [lo, hi) wrong on any component."""
    recipe = recipe_from_json(recipe_json)
    field = recipe.field
    n = recipe.n
    targets = [s.values for s in recipe.target_spectra()]
    counts = [0] * (n + 1)
    root = SeedStream.from_seed(master_seed)
    evaluator = _PrefixEvaluator(field)
    for k in range(lo, hi):
        draw = sample_stream(recipe, root.child(("trial", k)))
        for w in range(n + 1):
            memo: dict = {}
            for expr, target in zip(draw, targets):
                value = evaluator.eval(expr, w, memo)
                if value != field.element(target[w]):
                    counts[w] += 1
                    break
        # Draw-local nodes will not be seen again; drop their caches.
        evaluator.form_cache.clear()
    return counts


def empirical_error(
    recipe: Recipe,
    trials: int = 10_000,
    seed: int = 0,
    jobs: int = 1,
    exhaustive_limit: int = EXHAUSTIVE_LIMIT,
) -> ErrorReport:
    """Monte Carlo error of a recipe against its target spectra.

    Randomness-free recipes are checked with a single draw.  For small n
    every point of every weight is evaluated (exhaustive mode); otherwise
    one representative point per weight is used, which matches the draw
    distribution's symmetry under coordinate permutations.
    """
    n = recipe.n
    field = recipe.field
    targets = [s.values for s in recipe.target_spectra()]

    if recipe.randomness_free:
        draw = sample_stream(recipe, SeedStream.from_seed(seed))
        evaluator = _PrefixEvaluator(field)
        per_weight = []
        for w in range(n + 1):
            memo: dict = {}
            wrong = any(
                evaluator.eval(expr, w, memo) != field.element(target[w])
                for expr, target in zip(draw, targets)
            )
            per_weight.append(1.0 if wrong else 0.0)
        return _finish_report("single-draw", 1, recipe.eps, per_weight)

    if n <= exhaustive_limit:
        return _exhaustive_error(recipe, trials, seed)

    if jobs > 1:
        chunk = (trials + jobs - 1) // jobs
        ranges = [
            (k, min(k + chunk, trials)) for k in range(0, trials, chunk)
        ]
        recipe_json = recipe.to_json()
        totals = [0] * (n + 1)
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            futures = [
                pool.submit(_wrong_counts_for_seeds, recipe_json, seed, lo, hi)
                for lo, hi in ranges
            ]
            for fut in futures:
                for w, c in enumerate(fut.result()):
                    totals[w] += c
    else:
        totals = _wrong_counts_for_seeds(recipe.to_json(), seed, 0, trials)

    per_weight = [c / trials for c in totals]
    return _finish_report("stratified", trials, recipe.eps, per_weight)


def _exhaustive_error(recipe: Recipe, trials: int, seed: int) -> ErrorReport:
    """Evaluate every draw on every point of the cube (small n only)."""
    n = recipe.n
    field = recipe.field
    targets = [s.values for s in recipe.target_spectra()]
    points_by_weight: list[list[tuple[int, ...]]] = [[] for _ in range(n + 1)]
    for mask in range(1 << n):
        x = tuple((mask >> i) & 1 for i in range(n))
        points_by_weight[sum(x)].append(x)
    wrong = [0] * (n + 1)
    totals = [0] * (n + 1)
    root = SeedStream.from_seed(seed)
    for k in range(trials):
        draw = sample_stream(recipe, root.child(("trial", k)))
        for w in range(n + 1):
            for x in points_by_weight[w]:
                memo: dict = {}
                totals[w] += 1
                for expr, target in zip(draw, targets):
                    if eval_expr(expr, x, field, memo) != field.element(target[w]):
                        wrong[w] += 1
                        break
    per_weight = [wrong[w] / totals[w] for w in range(n + 1)]
    return _finish_report("exhaustive", trials, recipe.eps, per_weight)


def _finish_report(
    mode: str, trials: int, eps: Fraction, per_weight: Sequence[float]
) -> ErrorReport:
    worst_weight = max(range(len(per_weight)), key=lambda w: per_weight[w])
    worst = per_weight[worst_weight]
    eps_f = float(eps)
    slack = 3.0 * math.sqrt(max(eps_f * (1.0 - eps_f), 1e-12) / max(trials, 1))
    passed = worst <= eps_f + slack
    return ErrorReport(
        mode=mode,
        trials=trials,
        eps=eps,
        per_weight=tuple(per_weight),
        worst=worst,
        worst_weight=worst_weight,
        slack=slack,
        passed=passed,
    )


def exact_error(recipe: Recipe) -> tuple[Fraction, ...]:
    """Per-weight error probability in closed form, where one exists.

    Available for randomness-free recipes (all zeros after a correctness
    check), the vanishing-form disjunction, the rational disjunction, and
    majority amplification of always-Boolean recipes.
    """
    n = recipe.n
    if recipe.randomness_free:
        report = empirical_error(recipe, trials=1)
        if report.worst > 0:
            raise AssertionError("randomness-free recipe disagrees with target")
        return tuple(Fraction(0) for _ in range(n + 1))
    if recipe.kind == "razborov_or":
        p = recipe.field.characteristic
        ell = recipe.params["forms"]
        miss = Fraction(1, p) ** ell
        if recipe.params["negate"]:
            return tuple(miss if w < n else Fraction(0) for w in range(n + 1))
        return tuple(Fraction(0) if w == 0 else miss for w in range(n + 1))
    if recipe.kind == "char0_or":
        ell = recipe.params["runs"]
        scales = math.ceil(math.log2(n)) if n > 1 else 0
        out = [Fraction(0)]
        for w in range(1, n + 1):
            fail_run = Fraction(1)
            for j in range(scales + 1):
                q = Fraction(1, 1 << j)
                hit_exactly_one = w * q * (1 - q) ** (w - 1)
                fail_run *= 1 - hit_exactly_one
            out.append(fail_run**ell)
        return tuple(out)
    if recipe.kind == "amplify":
        child = recipe.children()[0]
        if child.kind == "razborov_or":
            # Wrong copies still output the complementary bit, so the vote
            # is wrong exactly when a majority of copies is wrong.
            child_err = exact_error(child)
            ell = recipe.params["votes"]
            return tuple(majority_tail(ell, q) for q in child_err)
    raise NotImplementedError(f"no closed-form error for kind {recipe.kind!r}")


@dataclass(frozen=True, slots=True)
class DegreeAudit:
    declared: int
    max_tracked: int
    draws: int
    expanded: bool
    max_expanded: int | None

    def to_json(self) -> dict:
        return {
            "schema_version": 1,
            "declared": self.declared,
            "max_tracked": self.max_tracked,
            "draws": self.draws,
            "expanded": self.expanded,
            "max_expanded": self.max_expanded,
        }


def degree_audit(
    recipe: Recipe, draws: int = 100, seed: int = 0, expand_limit: int = 16
) -> DegreeAudit:
    """Check tracked degrees of sampled draws against the declared bound.

    For recipes on at most expand_limit variables each draw is also expanded
    into an explicit multilinear polynomial, whose true degree must not
    exceed the tracked degree.
    """
    root = SeedStream.from_seed(seed)
    if recipe.randomness_free:
        draws = 1
    max_tracked = 0
    max_expanded: int | None = None
    can_expand = recipe.n <= expand_limit
    for k in range(draws):
        tuple_k = sample_stream(recipe, root.child(("trial", k)))
        for expr in tuple_k:
            tracked = expr.deg
            max_tracked = max(max_tracked, tracked)
            if tracked > recipe.declared_degree_bound:
                raise AssertionError(
                    f"tracked degree {tracked} exceeds declared bound "
                    f"{recipe.declared_degree_bound}"
                )
            if can_expand:
                poly = expand_expr(expr, recipe.n, recipe.field)
                if poly.degree > tracked:
                    raise AssertionError(
                        f"expanded degree {poly.degree} exceeds tracked {tracked}"
                    )
                if max_expanded is None or poly.degree > max_expanded:
                    max_expanded = poly.degree
    return DegreeAudit(
        declared=recipe.declared_degree_bound,
        max_tracked=max_tracked,
        draws=draws,
        expanded=can_expand,
        max_expanded=max_expanded,
    )


def expand_expr(
    expr: PolyExpr, n: int, field: FieldSpec, memo: dict | None = None
) -> MultilinearPoly:
    """Expand an expression DAG into its multilinear normal form."""
    if memo is None:
        memo = {}
    key = id(expr)
    hit = memo.get(key)
    if hit is not None:
        return hit
    if isinstance(expr, Constant):
        out = MultilinearPoly.constant(field, n, expr.value)
    elif isinstance(expr, Var):
        out = MultilinearPoly.variable(field, n, expr.index)
    elif isinstance(expr, LinearForm):
        out = MultilinearPoly(
            field,
            n,
            {},
        )
        for c, i in zip(expr.coeffs, expr.indices):
            out = out.add(MultilinearPoly(field, n, {frozenset([i]): c}))
    elif isinstance(expr, Power):
        base = expand_expr(expr.base, n, field, memo)
        out = MultilinearPoly.constant(field, n, 1)
        for _ in range(expr.exponent):
            out = out.mul(base)
    elif isinstance(expr, Product):
        out = MultilinearPoly.constant(field, n, 1)
        for f in expr.factors:
            out = out.mul(expand_expr(f, n, field, memo))
    elif isinstance(expr, Sum):
        out = MultilinearPoly.constant(field, n, expr.constant)
        for c, t in expr.terms:
            out = out.add(expand_expr(t, n, field, memo).scale(c))
    elif isinstance(expr, SymApply):
        inputs = [expand_expr(t, n, field, memo) for t in expr.inputs]
        d = min(expr.poly.degree, len(inputs))
        elem = [MultilinearPoly.constant(field, n, 1)] + [
            MultilinearPoly(field, n) for _ in range(d)
        ]
        for q in inputs:
            for k in range(min(d, len(elem) - 1), 0, -1):
                elem[k] = elem[k].add(elem[k - 1].mul(q))
        out = MultilinearPoly(field, n)
        for k, c in enumerate(expr.poly.coeffs):
            if k > d:
                break
            if c != 0:
                out = out.add(elem[k].scale(c))
    else:
        raise TypeError(f"unknown expression node {type(expr)!r}")
    memo[key] = out
    return out


def identity_check(
    target: Spectrum,
    operands: Sequence[Spectrum],
    combine: Callable[[Sequence[FieldElement], FieldSpec], FieldElement],
    field: FieldSpec,
    weights: Sequence[int] | None = None,
) -> bool:
    """Verify that combining the operand spectra reproduces the target.

    The combiner receives the operand values at one weight and returns a
    field element; the identity holds when it matches the target bit at
    every requested weight (all weights by default).
    """
    return not identity_failures(target, operands, combine, field, weights)


def identity_failures(
    target: Spectrum,
    operands: Sequence[Spectrum],
    combine: Callable[[Sequence[FieldElement], FieldSpec], FieldElement],
    field: FieldSpec,
    weights: Sequence[int] | None = None,
) -> list[tuple[int, FieldElement, int]]:
    """Weights where the combined value misses the target, with both values."""
    if weights is None:
        weights = range(target.n + 1)
    failures = []
    for w in weights:
        values = [field.element(op.values[w]) for op in operands]
        got = field.element(combine(values, field))
        want = field.element(target.values[w])
        if got != want:
            failures.append((w, got, want))
    return failures


def expected_spectrum_values(
    spectra: Sequence[Spectrum], weight: int
) -> list[int]:
    """Operand values at one weight, a convenience for combiner debugging."""
    return [s.values[weight] for s in spectra]
