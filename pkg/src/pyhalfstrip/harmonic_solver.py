"""Series solution of the nonlocal Laplace problem on the half-strip (0, 2π) × (0, ∞).

Given a trace ``f`` on the bottom edge the solver returns

    u(x, y) = a0 + Σₙ e^{-ny} [ aₙ cos nx + γₙ y cos nx + bₙ x sin nx ],

where ``a0, aₙ, bₙ`` are the biorthogonal coefficients of ``f``. Each block is harmonic exactly when
``γₙ = bₙ``: the Laplacian of ``y e^{-ny} cos nx`` is ``−2n e^{-ny} cos nx`` and the Laplacian of
``x e^{-ny} sin nx`` is ``+2n e^{-ny} cos nx``. The ``strict-paper`` convention keeps the printed
formula ``γₙ = (1/2π)∫ f sin nx dx = (π/2) bₙ`` for comparison; its Laplacian does not vanish.

Every term is ``u(0, y) = u(2π, y)`` and ``∂ₓu(0, y) = 0`` termwise, so the nonlocal boundary
conditions hold for any truncation.
"""

from __future__ import annotations

import math
from collections.abc import Sequence
from enum import Enum
from pathlib import Path

import numpy as np
import pydantic_core
from loguru import logger
from pydantic import Field, computed_field, model_validator

from pyhalfstrip._base import (
    CapabilityError,
    DegenerateInputError,
    FrozenModel,
    ParameterError,
    RealArray,
)
from pyhalfstrip.config import get_settings
from pyhalfstrip.rootbasis import RootCoefficients, reconstruct, root_coeffs
from pyhalfstrip.vectorfn import (
    TWO_PI,
    FunctionOnI,
    NormParams,
    QuadratureKind,
    QuadratureRule,
    default_rule,
    finite_difference,
    lp_norm_of_values,
    make_quadrature,
    sobolev2_norm,
)

DERIVATIVE_ORDERS: tuple[tuple[int, int], ...] = ((0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (0, 2))


class Convention(Enum):
    HARMONIC_CONSISTENT = "harmonic-consistent"
    STRICT_PAPER = "strict-paper"

    @property
    def y_term_factor(self) -> float:
        """
        Returns:
            float: Ratio ``γₙ / bₙ`` of the ``y e^{-ny} cos nx`` coefficient to the sine coefficient.
        """
        if self is Convention.STRICT_PAPER:
            return math.pi / 2
        return 1.0


class HarmonicSolution(FrozenModel):
    coeffs: RootCoefficients
    convention: Convention = Convention.HARMONIC_CONSISTENT
    finite_mixed_norm: bool = Field(
        default=True,
        description="False when the constant mode a0 is nonzero: the mixed norm over the unbounded strip diverges.",
    )

    @property
    def dim(self) -> int:
        return self.coeffs.dim

    @property
    def N(self) -> int:  # noqa: N802
        return self.coeffs.N

    @property
    def y_coefficients(self) -> np.ndarray:
        return self.convention.y_term_factor * self.coeffs.b

    def __call__(self, x: float | np.ndarray, y: float | np.ndarray, /) -> np.ndarray:
        return eval_solution(self, x, y)

    def at_height(self, y: float, /) -> FunctionOnI:
        """``u(·, y)`` as a function on I with analytic x-derivatives."""

        def at(order: int):
            return lambda x: eval_partial(self, x, np.full_like(x, y), (order, 0))

        return FunctionOnI(dim=self.dim, evaluator=at(0), deriv1=at(1), deriv2=at(2), name=f"u(.,{y!r})")

    def tail_bound(self, xi: float, /) -> float:
        """``Σₙ (‖aₙ‖ + ‖γₙ‖ + ‖bₙ‖) e^{-nξ} / n``, a bound on what lies above height ``xi``."""
        n = np.arange(1, self.N + 1)
        sizes = sum(np.linalg.norm(part, axis=1) for part in (self.coeffs.a, self.y_coefficients, self.coeffs.b))
        return float(np.sum(sizes * np.exp(-n * xi) / n))

    def to_payload(self) -> dict:
        return {**self.coeffs.to_payload(), "convention": self.convention.value}

    def to_json(self, *, indent: int | None = 2) -> str:
        """Serializes to ``{dim, N, a0, a, b, convention}``."""
        return pydantic_core.to_json(self.to_payload(), indent=indent).decode()

    @classmethod
    def from_json(cls, text: str | bytes, /) -> HarmonicSolution:
        payload = pydantic_core.from_json(text)
        convention = Convention(payload.pop("convention", Convention.HARMONIC_CONSISTENT.value))
        coeffs = RootCoefficients.model_validate(payload)
        return cls(coeffs=coeffs, convention=convention, finite_mixed_norm=_is_zero(coeffs.a0))


def _is_zero(vector: np.ndarray, tol: float | None = None) -> bool:
    tol = get_settings().compatibility_tolerance if tol is None else tol
    return bool(np.linalg.norm(vector) <= tol)


class CompatibilityReport(FrozenModel):
    f_at_0: RealArray
    f_at_2pi: RealArray
    fprime_at_0: RealArray
    weighted_integral: RealArray = Field(description="∫ f(x)(2π − x) dx")
    tolerance: float = Field(gt=0)

    @computed_field
    @property
    def satisfied(self) -> dict[str, bool]:
        return {
            name: bool(np.linalg.norm(getattr(self, name)) <= self.tolerance)
            for name in ("f_at_0", "f_at_2pi", "fprime_at_0", "weighted_integral")
        }

    @property
    def all_satisfied(self) -> bool:
        return all(self.satisfied.values())

    @property
    def violations(self) -> list[str]:
        return [name for name, ok in self.satisfied.items() if not ok]


class StripGrid(FrozenModel):
    """Nodes on the truncated strip ``I × (0, ξ]``, optionally with tensor quadrature weights."""

    xs: RealArray
    ys: RealArray
    xi: float = Field(gt=0)
    x_weights: RealArray | None = None
    y_weights: RealArray | None = None

    @model_validator(mode="after")
    def _check_nodes(self) -> StripGrid:
        for name in ("xs", "ys"):
            nodes = getattr(self, name)
            if nodes.ndim != 1 or nodes.size == 0 or np.any(np.diff(nodes) <= 0):
                raise ValueError(f"{name} must be a nonempty strictly increasing list")
        if self.xs[0] < 0 or self.xs[-1] > TWO_PI:
            raise ValueError("xs must lie in [0, 2π]")
        if self.ys[0] <= 0 or self.ys[-1] > self.xi:
            raise ValueError(f"ys must lie in (0, {self.xi}]")
        for nodes, weights in ((self.xs, self.x_weights), (self.ys, self.y_weights)):
            if weights is not None and weights.shape != nodes.shape:
                raise ValueError("weights must match their nodes")
        return self

    @property
    def shape(self) -> tuple[int, int]:
        return self.xs.size, self.ys.size

    @property
    def has_weights(self) -> bool:
        return self.x_weights is not None and self.y_weights is not None

    @classmethod
    def uniform(cls, xi: float, nx: int, ny: int) -> StripGrid:
        """``xs = linspace(0, 2π, nx)``, ``ys = ξ j / ny`` for ``j = 1..ny``."""
        if nx < 2 or ny < 1:
            raise ParameterError(f"grid needs nx >= 2 and ny >= 1, got {nx}x{ny}")
        return cls(xs=np.linspace(0, TWO_PI, nx), ys=xi * np.arange(1, ny + 1) / ny, xi=xi)

    @classmethod
    def gauss(
        cls,
        xi: float,
        /,
        *,
        x_rule: QuadratureRule | None = None,
        y_panels: int = 32,
        y_order: int = 8,
    ) -> StripGrid:
        """Tensor Gauss grid; y-panels are graded quadratically towards ``y = 0`` where high modes live."""
        x_rule = default_rule() if x_rule is None else x_rule
        edges = xi * (np.arange(y_panels + 1) / y_panels) ** 2
        panels = [
            make_quadrature(QuadratureKind.GAUSS_COMPOSITE, 1, y_order, (float(lo), float(hi)))
            for lo, hi in zip(edges[:-1], edges[1:], strict=True)
        ]
        return cls(
            xs=x_rule.nodes,
            ys=np.concatenate([rule.nodes for rule in panels]),
            xi=xi,
            x_weights=x_rule.weights,
            y_weights=np.concatenate([rule.weights for rule in panels]),
        )


# -- operations ---------------------------------------------------------------------------------


def check_compatibility(
    f: FunctionOnI,
    rule: QuadratureRule | None = None,
    tol: float | None = None,
    /,
    *,
    fallback: bool = False,
) -> CompatibilityReport:
    """Evaluates ``f(0)``, ``f(2π)``, ``f′(0)`` and ``∫ f(x)(2π − x) dx``.

    The four conditions are sufficient for the solution to lie in the mixed Sobolev space, not
    necessary, so violations are logged as warnings and never raised.

    Raises:
        pyhalfstrip.CapabilityError: If ``f`` has no ``deriv1`` and ``fallback`` is False.
    """
    rule = default_rule() if rule is None else rule
    tol = get_settings().compatibility_tolerance if tol is None else tol
    if f.deriv1 is not None:
        fprime_at_0 = f.derivative(0.0, 1)
    elif fallback:
        fprime_at_0 = finite_difference(f, np.array([0.0]), 1)[0]
    else:
        raise CapabilityError(f"{f.name} has no first derivative and the finite-difference fallback is off")
    report = CompatibilityReport(
        f_at_0=f(0.0),
        f_at_2pi=f(TWO_PI),
        fprime_at_0=fprime_at_0,
        weighted_integral=rule.apply((TWO_PI - rule.nodes)[:, None] * f(rule.nodes)),
        tolerance=tol,
    )
    for name in report.violations:
        size = np.linalg.norm(getattr(report, name))
        logger.warning("{}: compatibility condition {} violated (norm {:.3e})", f.name, name, size)
    return report


def solve(
    f: FunctionOnI,
    N: int,  # noqa: N803
    rule: QuadratureRule | None = None,
    /,
    *,
    convention: Convention | str = Convention.HARMONIC_CONSISTENT,
) -> HarmonicSolution:
    """Assembles the truncated series solution with trace ``f``.

    The n-th block carries ``uₙ(y) = aₙ e^{-ny} + γₙ y e^{-ny}`` on ``cos nx`` and ``vₙ(y) = bₙ e^{-ny}``
    on ``x sin nx``. A nonzero constant mode is kept but marks the solution as outside the mixed space.

    >>> sol = solve(catalog("xsin_3"), 8)
    >>> sol(0.0, 1.0)
    array([0.04978707])

    Args:
        f (FunctionOnI): Boundary datum on ``y = 0``.
        N (int): Truncation, ``N >= 1``.
        rule (QuadratureRule | None): Quadrature for the coefficient functionals.
        convention (Convention | str): Coefficient of the ``y e^{-ny} cos nx`` term.

    Returns:
        pyhalfstrip.harmonic_solver.HarmonicSolution: The solution.

    Raises:
        pyhalfstrip.ParameterError: If ``N < 1``.
    """
    if N < 1:
        raise ParameterError(f"truncation N must be >= 1, got {N}")
    rule = default_rule() if rule is None else rule
    coeffs = root_coeffs(f, N, rule)
    finite = _is_zero(coeffs.a0)
    if not finite:
        logger.warning("{}: constant mode a0 = {} is nonzero, u is not in L^(p,1) of the strip", f.name, coeffs.a0)
    return HarmonicSolution(coeffs=coeffs, convention=Convention(convention), finite_mixed_norm=finite)


def eval_partial(
    sol: HarmonicSolution,
    x: float | np.ndarray,
    y: float | np.ndarray,
    order: tuple[int, int],
    /,
) -> np.ndarray:
    """Exact termwise ``∂ₓ^ox ∂ᵧ^oy u`` for ``ox + oy <= 2``; shape ``broadcast(x, y).shape + (d,)``.

    Raises:
        pyhalfstrip.CapabilityError: If ``ox + oy > 2``.
    """
    ox, oy = order
    if ox < 0 or oy < 0:
        raise ParameterError(f"derivative orders must be nonnegative, got {order}")
    if ox + oy > 2:
        raise CapabilityError(f"partials are provided up to total order 2, got {order}")
    xx, yy = np.broadcast_arrays(np.asarray(x, dtype=float), np.asarray(y, dtype=float))
    shape = xx.shape
    xx, yy = xx.ravel(), yy.ravel()
    n = np.arange(1, sol.N + 1)

    phase = np.multiply.outer(xx, n)
    cos, sin = np.cos(phase), np.sin(phase)
    x_col = xx[:, None]
    if ox == 0:
        c_part, s_part = cos, x_col * sin
    elif ox == 1:
        c_part, s_part = -n * sin, sin + n * x_col * cos
    else:
        c_part, s_part = -(n**2) * cos, 2 * n * cos - n**2 * x_col * sin

    decay = np.exp(-np.multiply.outer(yy, n))
    y_col = yy[:, None]
    if oy == 0:
        e_part, ye_part = decay, y_col * decay
    elif oy == 1:
        e_part, ye_part = -n * decay, (1 - n * y_col) * decay
    else:
        e_part, ye_part = n**2 * decay, (n**2 * y_col - 2 * n) * decay

    values = (
        (c_part * e_part) @ sol.coeffs.a
        + (c_part * ye_part) @ sol.y_coefficients
        + (s_part * e_part) @ sol.coeffs.b
    )
    if ox == oy == 0:
        values = values + sol.coeffs.a0
    return values.reshape((*shape, sol.dim))


def eval_solution(sol: HarmonicSolution, x: float | np.ndarray, y: float | np.ndarray, /) -> np.ndarray:
    """``u(x, y)``; shape ``broadcast(x, y).shape + (d,)``."""
    return eval_partial(sol, x, y, (0, 0))


def laplacian(sol: HarmonicSolution, x: float | np.ndarray, y: float | np.ndarray, /) -> np.ndarray:
    return eval_partial(sol, x, y, (2, 0)) + eval_partial(sol, x, y, (0, 2))


def boundary_residuals(sol: HarmonicSolution, ys: Sequence[float] | np.ndarray, /) -> tuple[float, float]:
    """``(max ‖u(0, y) − u(2π, y)‖, max ‖∂ₓu(0, y)‖)`` over ``ys``."""
    ys = np.asarray(ys, dtype=float)
    if ys.size == 0:
        return 0.0, 0.0
    if np.any(ys <= 0):
        raise ParameterError("boundary residuals are taken at heights y > 0")
    jump = eval_solution(sol, 0.0, ys) - eval_solution(sol, TWO_PI, ys)
    flux = eval_partial(sol, 0.0, ys, (1, 0))
    return float(np.max(np.linalg.norm(jump, axis=-1))), float(np.max(np.linalg.norm(flux, axis=-1)))


def trace_error(
    sol: HarmonicSolution,
    f: FunctionOnI,
    y: float,
    p: float,
    rule: QuadratureRule | None = None,
    /,
) -> float:
    """``‖u(·, 0) − S_N f‖_p`` at ``y = 0``, ``‖u(·, y) − f‖_p`` for ``y > 0``."""
    if y < 0:
        raise ParameterError(f"height must be nonnegative, got {y}")
    rule = default_rule() if rule is None else rule
    values = eval_solution(sol, rule.nodes, y)
    target = reconstruct(sol.coeffs, rule.nodes) if y == 0 else f(rule.nodes)
    return lp_norm_of_values(values - target, p, rule)


def _slice_norms(
    sol: HarmonicSolution,
    p: float,
    nodes: tuple[np.ndarray, np.ndarray],
    x_weights: np.ndarray,
    order: tuple[int, int],
) -> np.ndarray:
    xx, yy = np.meshgrid(*nodes, indexing="ij")
    pointwise = np.linalg.norm(eval_partial(sol, xx, yy, order), axis=-1)
    return np.tensordot(x_weights, pointwise**p, axes=(0, 0)) ** (1 / p)


def _trapezoid_weights(nodes: np.ndarray) -> np.ndarray:
    half_steps = np.diff(nodes) / 2
    weights = np.zeros_like(nodes)
    weights[:-1] += half_steps
    weights[1:] += half_steps
    return weights


def mixed_norm(sol: HarmonicSolution, params: NormParams, grid: StripGrid, /, derivatives: bool = False) -> float:
    """``∫₀^ξ ‖u(·, y)‖_{L^p} dy`` on the truncated strip ``Π_ξ``.

    With ``derivatives`` the six terms ``∂^α u``, ``|α| <= 2``, are summed (the W²_{p,1} norm).
    Weighted grids (:meth:`StripGrid.gauss`) use their tensor rule. Grids without weights fall back
    to the composite trapezoid rule over ``xs`` and over ``0, *ys``, accurate to ``O(h²)``.

    Raises:
        pyhalfstrip.ParameterError: If the grid height differs from ``params.xi``.
    """
    if not math.isclose(grid.xi, params.xi, rel_tol=1e-12):
        raise ParameterError(f"grid truncation {grid.xi} differs from params.xi={params.xi}")
    if grid.has_weights:
        ys, x_weights, y_weights = grid.ys, grid.x_weights, grid.y_weights
    else:
        ys = np.concatenate([[0.0], grid.ys])
        x_weights, y_weights = _trapezoid_weights(grid.xs), _trapezoid_weights(ys)
    orders = DERIVATIVE_ORDERS if derivatives else DERIVATIVE_ORDERS[:1]
    return float(sum(y_weights @ _slice_norms(sol, params.p, (grid.xs, ys), x_weights, order) for order in orders))


def apriori_ratio(
    f: FunctionOnI,
    sol: HarmonicSolution,
    params: NormParams,
    rule: QuadratureRule,
    grid: StripGrid,
    /,
) -> float:
    """``‖u‖_{W²_{p,1}(Π_ξ)} / ‖f‖_{W²_p(I)}``.

    Raises:
        pyhalfstrip.DegenerateInputError: If ``‖f‖_{W²_p} = 0``.
    """
    denominator = sobolev2_norm(f, params.p, rule)
    if denominator == 0:
        raise DegenerateInputError(f"{f.name} has zero W2_p norm")
    return mixed_norm(sol, params, grid, derivatives=True) / denominator


def decay_rate(
    sol: HarmonicSolution,
    ys: Sequence[float] | np.ndarray,
    rule: QuadratureRule | None = None,
    /,
    *,
    mode: int | None = None,
) -> float:
    """Least-squares slope of ``log ‖b(y)‖`` where ``b(y)`` are the sine coefficients of ``u(·, y)``.

    For a single-mode datum ``x sin nx`` the coefficients are exactly ``e^{-ny}``, so the slope is ``−n``.
    """
    rule = default_rule() if rule is None else rule
    ys = np.asarray(ys, dtype=float)
    sizes = []
    for y in ys:
        b = root_coeffs(sol.at_height(float(y)), sol.N, rule).b
        sizes.append(np.linalg.norm(b if mode is None else b[mode - 1]))
    sizes = np.asarray(sizes)
    if ys.size < 2 or np.any(sizes <= 0):
        raise DegenerateInputError("decay rate needs at least two heights with nonzero sine coefficients")
    return float(np.polyfit(ys, np.log(sizes), 1)[0])


def sample_field(sol: HarmonicSolution, grid: StripGrid, /) -> np.ndarray:
    """``u`` on the grid, shape ``(nx, ny, d)``."""
    xx, yy = np.meshgrid(grid.xs, grid.ys, indexing="ij")
    return eval_solution(sol, xx, yy)


def write_field_csv(sol: HarmonicSolution, grid: StripGrid, path: Path | str, /) -> None:
    """Writes ``x,y,component_0..component_{d-1}`` rows with 17 significant digits."""
    xx, yy = np.meshgrid(grid.xs, grid.ys, indexing="ij")
    values = sample_field(sol, grid).reshape(-1, sol.dim)
    table = np.column_stack([xx.ravel(), yy.ravel(), values])
    header = ",".join(["x", "y", *(f"component_{j}" for j in range(sol.dim))])
    np.savetxt(path, table, fmt="%.16e", delimiter=",", header=header, comments="")
