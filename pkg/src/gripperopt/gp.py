"""Weighted geometric programming with monomial constraints.

A two-objective posynomial program is scalarized with a weight pair into
a single standard-form GP::

    minimize    sum_i c_i * prod_j x_j ** a_ij
    subject to  sum_k d_k * prod_j x_j ** b_kj <= 1   (one posynomial per constraint)

and solved through its dual. Problems with degree of difficulty 0 have a
unique dual point; degree 1 gives a one-parameter family of dual points
which is searched for the maximum of the dual value. The primal point is
then recovered from the log-linear term relations.

The gripper sizing problem (disk radius ``r2``, slider length ``r4a``)
is provided by :func:`gripper_problem`, together with the fixed-lambda
recipe that regenerates the published weight sweep.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Mapping, Optional, Sequence

import numpy as np
from scipy import linalg, optimize
from scipy.special import xlogy

from .errors import DomainError, InfeasibleError, NumericalError, UnsupportedProblemError

POSITIVITY_FLOOR = 1e-6  # lower bound on every design variable, metres
WEIGHT_SUM_TOL = 1e-12
CONSTRAINT_TOL = 1e-9
RESIDUAL_TOL = 1e-6

PAPER_RECIPE = "paper-recipe"
RIGOROUS = "rigorous"

# Dual point used to build the published weight sweep.
PAPER_LAMBDA = (1.0 / 6.0, 1.0 / 6.0, 2.0 / 3.0, 1.0 / 6.0)


class UnderdeterminedPrimalError(NumericalError):
    """The active term exponents do not pin down every variable."""


@dataclass(frozen=True)
class Monomial:
    coefficient: float
    exponents: Mapping[str, float] = field(default_factory=dict)

    def __post_init__(self):
        if not self.coefficient > 0:
            raise DomainError(f"monomial coefficient must be positive, got {self.coefficient}")
        object.__setattr__(self, "exponents", {k: float(v) for k, v in self.exponents.items() if v != 0})

    def evaluate(self, values: Mapping[str, float]) -> float:
        out = self.coefficient
        for name, power in self.exponents.items():
            out *= values[name] ** power
        return out

    def scaled(self, factor: float) -> "Monomial":
        return Monomial(self.coefficient * factor, self.exponents)

    def reciprocal(self) -> "Monomial":
        return Monomial(1.0 / self.coefficient, {k: -v for k, v in self.exponents.items()})

    def __str__(self):
        parts = [f"{self.coefficient:.6g}"]
        parts += [name if p == 1 else f"{name}^{p:g}" for name, p in self.exponents.items()]
        return "*".join(parts)


@dataclass(frozen=True)
class Posynomial:
    terms: tuple[Monomial, ...]

    def __post_init__(self):
        object.__setattr__(self, "terms", tuple(self.terms))
        if not self.terms:
            raise DomainError("a posynomial needs at least one term")

    def evaluate(self, values: Mapping[str, float]) -> float:
        return sum(t.evaluate(values) for t in self.terms)

    def scaled(self, factor: float) -> "Posynomial":
        return Posynomial(tuple(t.scaled(factor) for t in self.terms))

    def __str__(self):
        return " + ".join(str(t) for t in self.terms)


@dataclass(frozen=True)
class Objective:
    expression: Posynomial
    sense: str = "min"

    def __post_init__(self):
        if self.sense not in ("min", "max"):
            raise DomainError(f"objective sense must be 'min' or 'max', got {self.sense!r}")


@dataclass(frozen=True)
class MonomialConstraint:
    """``monomial <= bound``."""

    monomial: Monomial
    bound: float = 1.0

    def __post_init__(self):
        if not self.bound > 0:
            raise DomainError(f"constraint bound must be positive, got {self.bound}")

    def normalized(self) -> Monomial:
        return self.monomial.scaled(1.0 / self.bound)


@dataclass(frozen=True)
class WeightedGP:
    objectives: tuple[Objective, ...]
    constraints: tuple[MonomialConstraint, ...]
    weights: tuple[float, ...]

    def __post_init__(self):
        object.__setattr__(self, "objectives", tuple(self.objectives))
        object.__setattr__(self, "constraints", tuple(self.constraints))
        object.__setattr__(self, "weights", tuple(float(w) for w in self.weights))
        check_weights(self.weights, len(self.objectives))


def check_weights(weights: Sequence[float], n_objectives: int = 2) -> None:
    if len(weights) != n_objectives:
        raise DomainError(f"expected {n_objectives} weights, got {len(weights)}")
    if any(not w > 0 for w in weights):
        raise DomainError(f"weights must be strictly positive, got {tuple(weights)}")
    if abs(sum(weights) - 1.0) > WEIGHT_SUM_TOL:
        raise DomainError(f"weights must sum to 1, got {tuple(weights)}")


def weight_pair(w1: float) -> tuple[float, float]:
    """``(w1, 1 - w1)``, rejecting the closed endpoints."""
    if not 0.0 < w1 < 1.0:
        raise DomainError(f"w1 must lie strictly between 0 and 1, got {w1}")
    return (w1, 1.0 - w1)


@dataclass(frozen=True)
class StandardGP:
    """Single-objective GP in standard minimisation form."""

    objective: Posynomial
    constraints: tuple[Posynomial, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "constraints", tuple(self.constraints))

    @property
    def variables(self) -> tuple[str, ...]:
        seen: dict[str, None] = {}
        for poly in (self.objective, *self.constraints):
            for term in poly.terms:
                for name in term.exponents:
                    seen.setdefault(name)
        return tuple(seen)

    @property
    def terms(self) -> list[Monomial]:
        out = list(self.objective.terms)
        for c in self.constraints:
            out.extend(c.terms)
        return out

    @property
    def groups(self) -> list[int]:
        """Group index per term: 0 for the objective, k for constraint k."""
        out = [0] * len(self.objective.terms)
        for k, c in enumerate(self.constraints, start=1):
            out.extend([k] * len(c.terms))
        return out

    def exponent_matrix(self) -> np.ndarray:
        names = self.variables
        return np.array([[t.exponents.get(n, 0.0) for n in names] for t in self.terms], dtype=float).reshape(
            len(self.terms), len(names)
        )

    def coefficients(self) -> np.ndarray:
        return np.array([t.coefficient for t in self.terms], dtype=float)

    def evaluate(self, values: Mapping[str, float]) -> float:
        return self.objective.evaluate(values)

    def constraint_values(self, values: Mapping[str, float]) -> tuple[float, ...]:
        return tuple(c.evaluate(values) for c in self.constraints)


def scalarize(problem: WeightedGP) -> StandardGP:
    """Weighted-sum single objective in standard min form.

    A maximised monomial ``c * x**a`` is replaced by minimising
    ``(1/c) * x**-a``; constraints ``m <= b`` become ``m / b <= 1``.
    """
    terms: list[Monomial] = []
    for obj, w in zip(problem.objectives, problem.weights):
        expr = obj.expression
        if obj.sense == "max":
            if len(expr.terms) != 1:
                raise UnsupportedProblemError(
                    f"a maximised objective must be a single monomial, got {len(expr.terms)} terms"
                )
            expr = Posynomial((expr.terms[0].reciprocal(),))
        terms.extend(expr.scaled(w).terms)
    constraints = tuple(Posynomial((c.normalized(),)) for c in problem.constraints)
    return StandardGP(Posynomial(tuple(terms)), constraints)


def degree_of_difficulty(problem: StandardGP) -> int:
    return len(problem.terms) - len(problem.variables) - 1


@dataclass
class DualProgram:
    """Normality/orthogonality system and dual value of a standard GP.

    Feasible dual points are ``particular + null_basis @ t``.
    """

    problem: StandardGP
    conditions: np.ndarray  # (1 + n_vars, n_terms)
    rhs: np.ndarray
    particular: np.ndarray
    null_basis: np.ndarray  # (n_terms, family dimension)

    @property
    def coefficients(self) -> np.ndarray:
        return self.problem.coefficients()

    @property
    def groups(self) -> np.ndarray:
        return np.array(self.problem.groups)

    @property
    def family_dimension(self) -> int:
        return self.null_basis.shape[1]

    def condition_residual(self, lambdas) -> float:
        return float(np.max(np.abs(self.conditions @ np.asarray(lambdas, dtype=float) - self.rhs)))

    def log_value(self, lambdas) -> float:
        """``log V``, using ``(c/0)**0 = 1`` and ``0**0 = 1``."""
        lam = np.asarray(lambdas, dtype=float)
        c = self.coefficients
        out = float(np.sum(xlogy(lam, c) - xlogy(lam, lam)))
        groups = self.groups
        for k in range(1, len(self.problem.constraints) + 1):
            total = float(np.sum(lam[groups == k]))
            out += float(xlogy(total, total))
        return out

    def value(self, lambdas) -> float:
        return math.exp(self.log_value(lambdas))

    def family_point(self, t) -> np.ndarray:
        return self.particular + self.null_basis @ np.atleast_1d(np.asarray(t, dtype=float))

    def family_parameter(self, lambdas) -> np.ndarray:
        return self.null_basis.T @ (np.asarray(lambdas, dtype=float) - self.particular)

    def log_value_slope(self, t: float) -> float:
        """Derivative of ``log V`` along a one-dimensional family."""
        lam = self.family_point(t)
        n = self.null_basis[:, 0]
        slope = float(np.sum(n * (np.log(self.coefficients) - np.log(lam))))
        groups = self.groups
        for k in range(1, len(self.problem.constraints) + 1):
            mask = groups == k
            slope += float(np.sum(n[mask])) * math.log(float(np.sum(lam[mask])))
        return slope


def build_dual(problem: StandardGP) -> DualProgram:
    A = problem.exponent_matrix()
    n_terms = A.shape[0]
    normality = np.zeros(n_terms)
    normality[: len(problem.objective.terms)] = 1.0
    conditions = np.vstack([normality, A.T])
    rhs = np.zeros(conditions.shape[0])
    rhs[0] = 1.0
    particular, *_ = np.linalg.lstsq(conditions, rhs, rcond=None)
    if np.max(np.abs(conditions @ particular - rhs)) > 1e-10:
        raise InfeasibleError("normality and orthogonality conditions are inconsistent")
    null_basis = linalg.null_space(conditions)
    if null_basis.shape[1] == 1:
        # Orient so the largest component is positive, for a reproducible parameter.
        n = null_basis[:, 0]
        if n[np.argmax(np.abs(n))] < 0:
            null_basis = -null_basis
    return DualProgram(problem, conditions, rhs, particular, null_basis)


@dataclass(frozen=True)
class DualSolution:
    lambdas: np.ndarray
    dual_value_V: float
    family_parameter: float  # position along the family; 0.0 when the dual point is unique
    condition_residual: float


@dataclass(frozen=True)
class PrimalSolution:
    variables: dict[str, float]
    objective_value: float  # scalarized objective at the point
    objective_values: tuple[float, ...]  # each original objective, empty if unknown
    constraint_values: tuple[float, ...]
    constraint_active: tuple[bool, ...]
    feasible: bool
    recovery_method: str
    residual: float  # log-linear term-relation residual (max abs)

    @property
    def consistent(self) -> bool:
        return self.residual < RESIDUAL_TOL

    def __getitem__(self, name: str) -> float:
        return self.variables[name]


def _positive_interval(dual: DualProgram) -> tuple[float, float]:
    p, n = dual.particular, dual.null_basis[:, 0]
    lo, hi = -math.inf, math.inf
    for pi, ni in zip(p, n):
        if abs(ni) < 1e-14:
            if pi <= 0:
                raise InfeasibleError("a dual weight is pinned at a non-positive value")
        elif ni > 0:
            lo = max(lo, -pi / ni)
        else:
            hi = min(hi, -pi / ni)
    if not lo < hi:
        raise InfeasibleError("no strictly positive dual point exists")
    return lo, hi


def maximize_dual(dual: DualProgram, xtol: float = 1e-12) -> DualSolution:
    """Dual point of maximum value.

    Degree of difficulty 0 solves the conditions directly. Degree 1
    brackets the stationary point of ``log V`` (concave along the family)
    inside the strictly positive interval and locates it by root finding
    on the slope.
    """
    dim = dual.family_dimension
    if dim == 0:
        lam = dual.particular
        if np.any(lam <= 0):
            raise InfeasibleError(f"unique dual point is not strictly positive: {lam}")
        t = 0.0
    elif dim == 1:
        lo, hi = _positive_interval(dual)
        if not (math.isfinite(lo) and math.isfinite(hi)):
            raise InfeasibleError("dual family is unbounded; the primal is unbounded below")
        pad = 1e-13 * (hi - lo)
        a, b = lo + pad, hi - pad
        fa, fb = dual.log_value_slope(a), dual.log_value_slope(b)
        if fa > 0 > fb:
            t = optimize.brentq(dual.log_value_slope, a, b, xtol=xtol, rtol=4 * np.finfo(float).eps)
        else:
            res = optimize.minimize_scalar(
                lambda s: -dual.log_value(dual.family_point(s)), bounds=(lo, hi), method="bounded",
                options={"xatol": xtol},
            )
            t = float(res.x)
        lam = dual.family_point(t)
    else:
        raise UnsupportedProblemError(f"degree of difficulty {dim} is not supported (max 1)")
    return DualSolution(lam, dual.value(lam), float(t), dual.condition_residual(lam))


def dual_solution_at(dual: DualProgram, lambdas: Sequence[float]) -> DualSolution:
    """Wrap a given dual point, e.g. a hand-picked member of the family."""
    lam = np.asarray(lambdas, dtype=float)
    if lam.shape != dual.particular.shape:
        raise DomainError(f"expected {dual.particular.size} dual weights, got {lam.size}")
    t = dual.family_parameter(lam)
    return DualSolution(lam, dual.value(lam), float(t[0]) if t.size else 0.0, dual.condition_residual(lam))


def _term_relations(dual: DualProgram, solution: DualSolution, tol: float = 1e-12):
    """Rows ``a_i . log(x) = rhs_i`` implied by optimality for each active term."""
    problem = dual.problem
    A = problem.exponent_matrix()
    c = problem.coefficients()
    groups = dual.groups
    lam = solution.lambdas
    rows, rhs = [], []
    for i in range(len(lam)):
        if lam[i] <= tol:
            continue
        if groups[i] == 0:
            target = lam[i] * solution.dual_value_V
        else:
            target = lam[i] / float(np.sum(lam[groups == groups[i]]))
        rows.append(A[i])
        rhs.append(math.log(target / c[i]))
    return np.array(rows).reshape(len(rows), A.shape[1]), np.array(rhs)


def _primal_report(
    problem: StandardGP, values: dict[str, float], method: str, residual: float, source: Optional[WeightedGP]
) -> PrimalSolution:
    cons = problem.constraint_values(values)
    active = tuple(abs(g - 1.0) <= CONSTRAINT_TOL for g in cons)
    feasible = all(g <= 1.0 + CONSTRAINT_TOL for g in cons) and all(v >= POSITIVITY_FLOOR for v in values.values())
    objectives: tuple[float, ...] = ()
    if source is not None:
        objectives = tuple(o.expression.evaluate(values) for o in source.objectives)
    return PrimalSolution(values, problem.evaluate(values), objectives, cons, active, feasible, method, residual)


def recover_primal_rigorous(
    dual: DualProgram, solution: DualSolution, source: Optional[WeightedGP] = None
) -> PrimalSolution:
    """Least-squares solve of the term relations in ``log x``.

    At a true dual optimum the relations are consistent and the residual
    vanishes; a large residual means the dual point is not optimal.
    """
    rows, rhs = _term_relations(dual, solution)
    names = dual.problem.variables
    if rows.shape[0] == 0 or np.linalg.matrix_rank(rows) < len(names):
        raise UnderdeterminedPrimalError(
            f"active term exponents have rank {np.linalg.matrix_rank(rows) if rows.size else 0} "
            f"for {len(names)} variables"
        )
    y, *_ = np.linalg.lstsq(rows, rhs, rcond=None)
    residual = float(np.max(np.abs(rows @ y - rhs)))
    values = {n: float(math.exp(v)) for n, v in zip(names, y)}
    return _primal_report(dual.problem, values, RIGOROUS, residual, source)


def solve(problem: WeightedGP) -> tuple[DualSolution, PrimalSolution]:
    """Scalarize, maximise the dual and recover the primal point."""
    standard = scalarize(problem)
    dual = build_dual(standard)
    sol = maximize_dual(dual)
    return sol, recover_primal_rigorous(dual, sol, problem)


# -- gripper disk/slider sizing ------------------------------------------------

R2, R4A = "r2", "r4a"


def gripper_problem(
    weights: Sequence[float], release_force: float = 75.0, ratio_bound: float = 0.25
) -> WeightedGP:
    """Minimise the plane area ``4 r2^2 + 2 r2 r4a`` and maximise the torque
    coefficient ``F r2`` subject to ``r2 / r4a <= ratio_bound``."""
    if not release_force > 0:
        raise DomainError(f"release_force must be positive, got {release_force}")
    area = Posynomial((Monomial(4.0, {R2: 2}), Monomial(2.0, {R2: 1, R4A: 1})))
    torque = Posynomial((Monomial(release_force, {R2: 1}),))
    ratio = MonomialConstraint(Monomial(1.0, {R2: 1, R4A: -1}), ratio_bound)
    return WeightedGP((Objective(area, "min"), Objective(torque, "max")), (ratio,), tuple(weights))


def paper_lambda_recipe(
    weights: Sequence[float], release_force: float = 75.0
) -> tuple[DualSolution, PrimalSolution]:
    """Fixed dual point ``(1/6, 1/6, 2/3, 1/6)`` with the published recovery.

    The disk radius is taken from ``4 r2^2 = lambda2 * V`` (unweighted
    disk-area term) and the slider length from the tight ratio
    constraint, ``r4a = 4 r2``. This is not the dual optimum; see
    :func:`gripper_optimum` for that.
    """
    problem = gripper_problem(weights, release_force)
    standard = scalarize(problem)
    dual = build_dual(standard)
    sol = dual_solution_at(dual, PAPER_LAMBDA)
    r2 = math.sqrt(sol.lambdas[1] * sol.dual_value_V / 4.0)
    r4a = 4.0 * r2
    rows, rhs = _term_relations(dual, sol)
    y = np.log([r2, r4a])
    residual = float(np.max(np.abs(rows @ y - rhs)))
    return sol, _primal_report(standard, {R2: r2, R4A: r4a}, PAPER_RECIPE, residual, problem)


def gripper_optimum(
    weights: Sequence[float], release_force: float = 75.0
) -> tuple[DualSolution, PrimalSolution]:
    return solve(gripper_problem(weights, release_force))


@dataclass(frozen=True)
class Table1Row:
    w1: float
    w2: float
    r2: float
    r4a: float
    V: float


def sweep_weights() -> list[tuple[float, float]]:
    return [(k / 10.0, (10 - k) / 10.0) for k in range(1, 10)]


def reproduce_table1(release_force: float = 75.0) -> list[Table1Row]:
    rows = []
    for w1, w2 in sweep_weights():
        sol, primal = paper_lambda_recipe((w1, w2), release_force)
        rows.append(Table1Row(w1, w2, primal[R2], primal[R4A], sol.dual_value_V))
    return rows


def rigorous_table(release_force: float = 75.0) -> list[Table1Row]:
    rows = []
    for w1, w2 in sweep_weights():
        sol, primal = gripper_optimum((w1, w2), release_force)
        rows.append(Table1Row(w1, w2, primal[R2], primal[R4A], sol.dual_value_V))
    return rows
