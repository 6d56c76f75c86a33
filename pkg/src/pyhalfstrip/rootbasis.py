"""Root functions of the nonlocal spectral problem and their biorthogonal system.

The spectral problem ``φ″ + λφ = 0`` on ``(0, 2π)`` with ``φ(0) = φ(2π)``, ``φ′(0) = 0`` has
eigenvalues ``λₙ = n²`` with eigenfunctions ``φₙ^c = cos nx``. The eigenfunctions alone are not
complete, so each is completed by the associated function ``φₙ^s = x sin nx``, which satisfies
``(−∂² − n²) φₙ^s = −2n φₙ^c``. The root system ``{1, cos nx, x sin nx}`` is not orthogonal; expansion
coefficients are obtained by integrating against the weight functions

    v₀^c = (2π − x) / 2π²,   vₙ^c = (2π − x) cos(nx) / π²,   vₙ^s = sin(nx) / π²,

which are biorthogonal to it: ``∫ φᵢ vⱼ dx = δᵢⱼ``.
"""

from __future__ import annotations

import math
from enum import Enum
from typing import Any

import numpy as np
import pydantic_core
from pydantic import Field, model_validator

from pyhalfstrip._base import ComplexArray, FrozenModel, ModeRangeError, ParameterError, RealArray
from pyhalfstrip.vectorfn import TWO_PI, FunctionOnI, QuadratureRule, lp_norm

PI_SQUARED = math.pi**2


class RootKind(Enum):
    CONST = "const"
    COS = "cos"
    XSIN = "xsin"


class BioKind(Enum):
    CONST = "const"
    COS = "cos"
    SIN = "sin"


class ProjectionSign(Enum):
    PLUS = "plus"
    MINUS = "minus"


def _check_index(kind: Enum, n: int) -> None:
    if kind.value == "const" and n != 0:
        raise ValueError(f"the constant element has index 0, got {n}")
    if kind.value != "const" and n < 1:
        raise ValueError(f"{kind.value} elements are indexed from 1, got {n}")


class RootSystemElement(FrozenModel):
    kind: RootKind
    n: int = Field(ge=0)

    @model_validator(mode="after")
    def _check_n(self) -> RootSystemElement:
        _check_index(self.kind, self.n)
        return self

    def __call__(self, x: float | np.ndarray, /) -> float | np.ndarray:
        return self.derivative(x, 0)

    def derivative(self, x: float | np.ndarray, /, order: int) -> float | np.ndarray:
        """Analytic derivative of order 0, 1 or 2."""
        x = np.asarray(x, dtype=float)
        n = self.n
        if self.kind is RootKind.CONST:
            values = np.ones_like(x) if order == 0 else np.zeros_like(x)
        elif self.kind is RootKind.COS:
            values = (np.cos(n * x), -n * np.sin(n * x), -(n**2) * np.cos(n * x))[order]
        elif order == 0:
            values = x * np.sin(n * x)
        elif order == 1:
            values = np.sin(n * x) + n * x * np.cos(n * x)
        else:
            values = np.asarray(sum(weight * element(x) for element, weight in self.second_derivative_terms().items()))
        return values if values.ndim else float(values)

    def second_derivative_terms(self) -> dict[RootSystemElement, float]:
        """Second derivative expanded in the root system.

        ``(cos nx)″ = −n² cos nx`` and ``(x sin nx)″ = 2n cos nx − n² x sin nx``.
        """
        n = self.n
        if self.kind is RootKind.CONST:
            return {}
        if self.kind is RootKind.COS:
            return {self: float(-(n**2))}
        return {RootSystemElement(kind=RootKind.COS, n=n): float(2 * n), self: float(-(n**2))}

    def __str__(self) -> str:
        return "1" if self.kind is RootKind.CONST else f"{self.kind.value}_{self.n}"


class BioSystemElement(FrozenModel):
    kind: BioKind
    n: int = Field(ge=0)

    @model_validator(mode="after")
    def _check_n(self) -> BioSystemElement:
        _check_index(self.kind, self.n)
        return self

    def __call__(self, x: float | np.ndarray, /) -> float | np.ndarray:
        x = np.asarray(x, dtype=float)
        if self.kind is BioKind.CONST:
            values = (TWO_PI - x) / (2 * PI_SQUARED)
        elif self.kind is BioKind.COS:
            values = (TWO_PI - x) * np.cos(self.n * x) / PI_SQUARED
        else:
            values = np.sin(self.n * x) / PI_SQUARED
        return values if values.ndim else float(values)

    def __str__(self) -> str:
        return f"v_{self.kind.value}_{self.n}"


def eval_root(el: RootSystemElement, x: float | np.ndarray, /) -> float | np.ndarray:
    """Value of ``1``, ``cos nx`` or ``x sin nx`` at ``x``."""
    return el(x)


def eval_bio(el: BioSystemElement, x: float | np.ndarray, /) -> float | np.ndarray:
    """Value of the biorthogonal weight function at ``x``."""
    return el(x)


def eigenvalue(n: int, /) -> int:
    if n < 0:
        raise ParameterError(f"eigenvalues are indexed from 0, got {n}")
    return n * n


def root_system(N: int, /) -> list[RootSystemElement]:  # noqa: N803
    """Ordered root functions ``1, cos 1x..cos Nx, x sin 1x..x sin Nx``."""
    return [
        RootSystemElement(kind=RootKind.CONST, n=0),
        *(RootSystemElement(kind=RootKind.COS, n=k) for k in range(1, N + 1)),
        *(RootSystemElement(kind=RootKind.XSIN, n=k) for k in range(1, N + 1)),
    ]


def bio_system(N: int, /) -> list[BioSystemElement]:  # noqa: N803
    """Ordered weight functions matching :func:`root_system`."""
    return [
        BioSystemElement(kind=BioKind.CONST, n=0),
        *(BioSystemElement(kind=BioKind.COS, n=k) for k in range(1, N + 1)),
        *(BioSystemElement(kind=BioKind.SIN, n=k) for k in range(1, N + 1)),
    ]


def _root_matrix(x: np.ndarray, N: int, order: int = 0) -> np.ndarray:  # noqa: N803
    if order == 0:
        return np.column_stack([eval_root(el, x) * np.ones_like(x) for el in root_system(N)])
    return np.column_stack([el.derivative(x, order) * np.ones_like(x) for el in root_system(N)])


def _bio_matrix(x: np.ndarray, N: int) -> np.ndarray:  # noqa: N803
    return np.column_stack([eval_bio(el, x) * np.ones_like(x) for el in bio_system(N)])


# -- coefficient sets ---------------------------------------------------------------------------


def _normalize_coefficient_payload(data: Any, zero_name: str, names: tuple[str, str]) -> Any:
    if not isinstance(data, dict):
        return data
    data = dict(data)
    zero = np.atleast_1d(np.asarray(data.get(zero_name, []), dtype=float))
    dim = int(data.pop("dim", zero.size))
    declared_n = data.pop("N", None)
    for name in names:
        value = data.get(name, [])
        if isinstance(value, np.ndarray):
            array = value
        else:
            array = np.asarray(value, dtype=complex if _has_complex(value) else float)
        if array.size == 0:
            array = np.zeros((0, dim), dtype=array.dtype)
        data[name] = array
    if zero.size != dim:
        raise ValueError(f"{zero_name} has {zero.size} components, dim is {dim}")
    if declared_n is not None and any(len(data[name]) != int(declared_n) for name in names):
        raise ValueError(f"declared N={declared_n} does not match the coefficient lists")
    return data


def _has_complex(value: Any) -> bool:
    return np.iscomplexobj(np.asarray(value))


class _CoefficientSet(FrozenModel):
    @property
    def dim(self) -> int:
        raise NotImplementedError()

    @property
    def N(self) -> int:  # noqa: N802
        raise NotImplementedError()

    def to_payload(self) -> dict[str, Any]:
        return {"dim": self.dim, "N": self.N, **self.model_dump(mode="json")}

    def to_json(self, *, indent: int | None = 2) -> str:
        """Serializes to ``{dim, N, ...}`` with arrays of length-d number arrays."""
        return pydantic_core.to_json(self.to_payload(), indent=indent).decode()

    @classmethod
    def from_json(cls, text: str | bytes, /):
        return cls.model_validate(pydantic_core.from_json(text))


class RootCoefficients(_CoefficientSet):
    """Expansion coefficients against the root system: ``a0·1 + Σ aₖ cos kx + Σ bₖ x sin kx``."""

    a0: RealArray
    a: RealArray
    b: RealArray

    @model_validator(mode="before")
    @classmethod
    def _normalize(cls, data: Any) -> Any:
        return _normalize_coefficient_payload(data, "a0", ("a", "b"))

    @model_validator(mode="after")
    def _check_shapes(self) -> RootCoefficients:
        d = self.a0.shape
        if len(d) != 1 or self.a.shape != self.b.shape or self.a.shape[1:] != d:
            raise ValueError(f"inconsistent shapes a0={self.a0.shape}, a={self.a.shape}, b={self.b.shape}")
        return self

    @property
    def dim(self) -> int:
        return self.a0.shape[0]

    @property
    def N(self) -> int:  # noqa: N802
        return self.a.shape[0]

    @classmethod
    def zeros(cls, dim: int, N: int) -> RootCoefficients:  # noqa: N803
        return cls(a0=np.zeros(dim), a=np.zeros((N, dim)), b=np.zeros((N, dim)))

    @classmethod
    def from_stacked(cls, stacked: np.ndarray, /) -> RootCoefficients:
        """Inverse of :meth:`stacked`."""
        N = (stacked.shape[0] - 1) // 2  # noqa: N806
        return cls(a0=stacked[0], a=stacked[1 : N + 1], b=stacked[N + 1 :])

    def stacked(self) -> np.ndarray:
        """Coefficients as a ``(2N + 1, d)`` array in :func:`root_system` order."""
        return np.concatenate([self.a0[None, :], self.a, self.b])

    def truncated(self, n: int, /) -> RootCoefficients:
        """Keeps modes ``k <= n``, padding with zeros when ``n > N``."""
        if n <= self.N:
            return RootCoefficients(a0=self.a0, a=self.a[:n], b=self.b[:n])
        pad = np.zeros((n - self.N, self.dim))
        return RootCoefficients(a0=self.a0, a=np.concatenate([self.a, pad]), b=np.concatenate([self.b, pad]))

    def cosine_part(self) -> RootCoefficients:
        return RootCoefficients(a0=self.a0, a=self.a, b=np.zeros_like(self.b))

    def sine_part(self) -> RootCoefficients:
        return RootCoefficients(a0=np.zeros_like(self.a0), a=np.zeros_like(self.a), b=self.b)

    def __add__(self, other: RootCoefficients) -> RootCoefficients:
        size = max(self.N, other.N)
        return RootCoefficients.from_stacked(self.truncated(size).stacked() + other.truncated(size).stacked())

    def __mul__(self, scalar: float) -> RootCoefficients:
        return RootCoefficients.from_stacked(float(scalar) * self.stacked())

    __rmul__ = __mul__


class TrigCoefficients(_CoefficientSet):
    """Coefficients against ``{1, cos kx, sin kx}`` with the ℓ-functionals normalisation."""

    c0: RealArray
    c: RealArray
    s: RealArray

    @model_validator(mode="before")
    @classmethod
    def _normalize(cls, data: Any) -> Any:
        return _normalize_coefficient_payload(data, "c0", ("c", "s"))

    @model_validator(mode="after")
    def _check_shapes(self) -> TrigCoefficients:
        d = self.c0.shape
        if len(d) != 1 or self.c.shape != self.s.shape or self.c.shape[1:] != d:
            raise ValueError(f"inconsistent shapes c0={self.c0.shape}, c={self.c.shape}, s={self.s.shape}")
        return self

    @property
    def dim(self) -> int:
        return self.c0.shape[0]

    @property
    def N(self) -> int:  # noqa: N802
        return self.c.shape[0]


class ExponentialCoefficients(FrozenModel):
    """Two-sided coefficients ``f̂(n)``, ``n = −N..N``, with values in ℂ^d.

    ``modes[n + N]`` holds ``f̂(n)``.
    """

    modes: ComplexArray

    @model_validator(mode="after")
    def _check_shape(self) -> ExponentialCoefficients:
        if self.modes.ndim != 2 or self.modes.shape[0] % 2 != 1:
            raise ValueError(f"modes must have shape (2N + 1, d), got {self.modes.shape}")
        return self

    @property
    def N(self) -> int:  # noqa: N802
        return (self.modes.shape[0] - 1) // 2

    @property
    def dim(self) -> int:
        return self.modes.shape[1]

    @property
    def indices(self) -> np.ndarray:
        return np.arange(-self.N, self.N + 1)

    def mode(self, n: int, /) -> np.ndarray:
        if abs(n) > self.N:
            raise ModeRangeError(f"mode {n} outside -{self.N}..{self.N}")
        return self.modes[n + self.N]

    @classmethod
    def from_trig(cls, tc: TrigCoefficients, /) -> ExponentialCoefficients:
        """``f̂(0) = c0``, ``f̂(±n) = (cₙ ∓ i sₙ) / 2``."""
        positive = (tc.c - 1j * tc.s) / 2
        negative = (tc.c + 1j * tc.s) / 2
        return cls(modes=np.concatenate([negative[::-1], tc.c0[None, :].astype(complex), positive]))

    def to_trig_arrays(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Complex ``(c0, c, s)`` with ``cₙ = f̂(n) + f̂(−n)`` and ``sₙ = i (f̂(n) − f̂(−n))``."""
        N = self.N  # noqa: N806
        positive = self.modes[N + 1 :]
        negative = self.modes[:N][::-1]
        return self.modes[N], positive + negative, 1j * (positive - negative)

    def __call__(self, x: float | np.ndarray, /) -> np.ndarray:
        """Complex values ``Σ f̂(n) e^{inx}``; shape ``x.shape + (d,)``."""
        x = np.asarray(x, dtype=float)
        phases = np.exp(1j * np.multiply.outer(x, self.indices))
        return phases @ self.modes

    def __add__(self, other: ExponentialCoefficients) -> ExponentialCoefficients:
        if other.modes.shape != self.modes.shape:
            raise ParameterError(f"shape mismatch {self.modes.shape} vs {other.modes.shape}")
        return ExponentialCoefficients(modes=self.modes + other.modes)


# -- functionals ----------------------------------------------------------------------------------


def _check_truncation(N: int, minimum: int) -> None:  # noqa: N803
    if N < minimum:
        raise ParameterError(f"truncation N must be >= {minimum}, got {N}")


def _trig_coeffs_of_values(values: np.ndarray, N: int, rule: QuadratureRule) -> TrigCoefficients:  # noqa: N803
    k = np.arange(1, N + 1)
    phase = np.multiply.outer(rule.nodes, k)
    weighted = rule.weights[:, None]
    return TrigCoefficients(
        c0=rule.apply(values) / TWO_PI,
        c=(np.cos(phase) * weighted).T @ values / math.pi,
        s=(np.sin(phase) * weighted).T @ values / math.pi,
    )


def trig_coeffs(f: FunctionOnI, N: int, rule: QuadratureRule, /) -> TrigCoefficients:  # noqa: N803
    """Fourier coefficients ``ℓ₀^c = (1/2π)∫f``, ``ℓₖ^c = (1/π)∫f cos kx``, ``ℓₖ^s = (1/π)∫f sin kx``.

    Raises:
        pyhalfstrip.ParameterError: If ``N < 0``.
    """
    _check_truncation(N, 0)
    return _trig_coeffs_of_values(f(rule.nodes), N, rule)


def weighted_trig_coeffs(f: FunctionOnI, N: int, rule: QuadratureRule, /) -> TrigCoefficients:  # noqa: N803
    """Fourier coefficients of ``g(x) = (2π − x) f(x)``.

    They reduce the cosine functionals of the root system to the trigonometric ones:
    ``v₀^c(f) = ℓ₀^c(g) / π``, ``vₖ^c(f) = ℓₖ^c(g) / π``, while ``vₖ^s(f) = ℓₖ^s(f) / π``.
    """
    _check_truncation(N, 0)
    return _trig_coeffs_of_values((TWO_PI - rule.nodes)[:, None] * f(rule.nodes), N, rule)


def root_coeffs(f: FunctionOnI, N: int, rule: QuadratureRule, /) -> RootCoefficients:  # noqa: N803
    """Biorthogonal coefficients ``a0 = ∫f v₀^c``, ``aₖ = ∫f vₖ^c``, ``bₖ = ∫f vₖ^s``.

    Args:
        f (FunctionOnI): Function to expand.
        N (int): Truncation, ``N >= 1``.
        rule (QuadratureRule): Quadrature on ``[0, 2π]``.

    Returns:
        pyhalfstrip.rootbasis.RootCoefficients: The coefficients.

    Raises:
        pyhalfstrip.ParameterError: If ``N < 1``.
    """
    _check_truncation(N, 1)
    weights = _bio_matrix(rule.nodes, N) * rule.weights[:, None]
    return RootCoefficients.from_stacked(weights.T @ f(rule.nodes))


def reconstruct(coeffs: RootCoefficients, x: float | np.ndarray, /) -> np.ndarray:
    """Partial sum ``a0 + Σ aₖ cos kx + Σ bₖ x sin kx``; shape ``x.shape + (d,)``."""
    x = np.asarray(x, dtype=float)
    basis = _root_matrix(x.ravel(), coeffs.N)
    return (basis @ coeffs.stacked()).reshape((*x.shape, coeffs.dim))


def root_combination(coeffs: RootCoefficients, /, *, name: str | None = None) -> FunctionOnI:
    """The finite root combination with coefficients ``coeffs`` as a function with analytic derivatives."""
    stacked = coeffs.stacked()

    def evaluator(order: int):
        return lambda x: _root_matrix(x, coeffs.N, order) @ stacked

    return FunctionOnI(
        dim=coeffs.dim,
        evaluator=evaluator(0),
        deriv1=evaluator(1),
        deriv2=evaluator(2),
        name=name or f"root_combination(N={coeffs.N})",
    )


def projector_cos(f: FunctionOnI, n: int, rule: QuadratureRule, /) -> FunctionOnI:
    """``Pₙ^c f = Σ_{k≤n} vₖ^c(f) φₖ^c`` for ``n >= 0``."""
    _check_truncation(n, 0)
    coeffs = root_coeffs(f, max(n, 1), rule).truncated(n).cosine_part()
    return root_combination(coeffs, name=f"P{n}c[{f.name}]")


def projector_sin(f: FunctionOnI, n: int, rule: QuadratureRule, /) -> FunctionOnI:
    """``Pₙ^s f = Σ_{1≤k≤n} vₖ^s(f) φₖ^s`` for ``n >= 1``."""
    _check_truncation(n, 1)
    coeffs = root_coeffs(f, n, rule).sine_part()
    return root_combination(coeffs, name=f"P{n}s[{f.name}]")


def trig_partial_sum(tc: TrigCoefficients, x: float | np.ndarray, /) -> np.ndarray:
    """``Sₙ f = ℓ₀ + Σ ℓₖ^c cos kx + ℓₖ^s sin kx``; shape ``x.shape + (d,)``."""
    x = np.asarray(x, dtype=float)
    phase = np.multiply.outer(x, np.arange(1, tc.N + 1))
    return tc.c0 + np.cos(phase) @ tc.c + np.sin(phase) @ tc.s


def _trig_function(tc: TrigCoefficients, name: str) -> FunctionOnI:
    k = np.arange(1, tc.N + 1)

    def value(x):
        phase = np.multiply.outer(x, k)
        return tc.c0 + np.cos(phase) @ tc.c + np.sin(phase) @ tc.s

    def first(x):
        phase = np.multiply.outer(x, k)
        return (-np.sin(phase) * k) @ tc.c + (np.cos(phase) * k) @ tc.s

    def second(x):
        phase = np.multiply.outer(x, k)
        return (-np.cos(phase) * k**2) @ tc.c + (-np.sin(phase) * k**2) @ tc.s

    return FunctionOnI(dim=tc.dim, evaluator=value, deriv1=first, deriv2=second, name=name)


def trig_projector_cos(f: FunctionOnI, n: int, rule: QuadratureRule, /) -> FunctionOnI:
    """Cosine partial sum ``Sₙ^c f = Σ_{k≤n} ℓₖ^c(f) cos kx`` of the trigonometric system."""
    tc = trig_coeffs(f, n, rule)
    return _trig_function(TrigCoefficients(c0=tc.c0, c=tc.c, s=np.zeros_like(tc.s)), f"S{n}c[{f.name}]")


def trig_projector_sin(f: FunctionOnI, n: int, rule: QuadratureRule, /) -> FunctionOnI:
    """Sine partial sum ``Sₙ^s f = Σ_{1≤k≤n} ℓₖ^s(f) sin kx`` of the trigonometric system."""
    _check_truncation(n, 1)
    tc = trig_coeffs(f, n, rule)
    return _trig_function(
        TrigCoefficients(c0=np.zeros_like(tc.c0), c=np.zeros_like(tc.c), s=tc.s),
        f"S{n}s[{f.name}]",
    )


def riesz_projection(tc: TrigCoefficients, m: int, sign: ProjectionSign | str, /) -> ExponentialCoefficients:
    """Riesz projection ``R_m^+`` (modes ``n >= m``) or ``R_m^-`` (modes ``n < m``).

    >>> plus = riesz_projection(tc, m, "plus")
    >>> minus = riesz_projection(tc, m, "minus")
    >>> (plus + minus).modes == ExponentialCoefficients.from_trig(tc).modes

    Raises:
        pyhalfstrip.ModeRangeError: If ``|m| > N``.
    """
    sign = ProjectionSign(sign)
    if abs(m) > tc.N:
        raise ModeRangeError(f"|m| must not exceed N={tc.N}, got m={m}")
    full = ExponentialCoefficients.from_trig(tc)
    keep = full.indices >= m if sign is ProjectionSign.PLUS else full.indices < m
    return ExponentialCoefficients(modes=np.where(keep[:, None], full.modes, 0))


def gram_matrix(N: int, rule: QuadratureRule, /) -> np.ndarray:  # noqa: N803
    """``G[i, j] = ∫ φᵢ vⱼ dx`` over :func:`root_system` × :func:`bio_system` order.

    Raises:
        pyhalfstrip.ParameterError: If ``N < 1``.
    """
    _check_truncation(N, 1)
    roots = _root_matrix(rule.nodes, N)
    weights = _bio_matrix(rule.nodes, N) * rule.weights[:, None]
    return roots.T @ weights


def _shifted_operator_terms(el: RootSystemElement, lam: float, /) -> dict[RootSystemElement, float]:
    # (𝓛 − λ)φ = −φ″ − λφ, collected per root element
    terms = {element: -weight for element, weight in el.second_derivative_terms().items()}
    terms[el] = terms.get(el, 0.0) - lam
    return terms


def _evaluate_terms(terms: dict[RootSystemElement, float], grid: np.ndarray) -> np.ndarray:
    return sum((weight * eval_root(element, grid) for element, weight in terms.items()), np.zeros_like(grid))


def spectral_residual(n: int, grid: np.ndarray | list[float], /) -> tuple[float, float]:
    """Residuals of the eigen- and associated-function equations on ``grid``.

    Second derivatives are taken in the root system, so both residuals vanish up to rounding
    at every mode.

    Returns:
        tuple[float, float]: ``max |(φₙ^c)″ + n² φₙ^c|`` and
        ``max |(−(φₙ^s)″ − n² φₙ^s) + 2n φₙ^c|``.
    """
    _check_truncation(n, 1)
    grid = np.asarray(grid, dtype=float)
    eigen = RootSystemElement(kind=RootKind.COS, n=n)
    associated = RootSystemElement(kind=RootKind.XSIN, n=n)
    lam = eigenvalue(n)

    first = {element: -weight for element, weight in _shifted_operator_terms(eigen, lam).items()}
    second = _shifted_operator_terms(associated, lam)
    second[eigen] = second.get(eigen, 0.0) + 2 * n
    return (
        float(np.max(np.abs(_evaluate_terms(first, grid)))),
        float(np.max(np.abs(_evaluate_terms(second, grid)))),
    )


def pointwise_spectral_residual(n: int, grid: np.ndarray | list[float], /) -> tuple[float, float]:
    """Same residuals as :func:`spectral_residual`, with every term evaluated on ``grid`` before summing.

    Rounding grows like ``n² max|x| ε``; compare against a tolerance scaled by the eigenvalue.
    """
    _check_truncation(n, 1)
    x = np.asarray(grid, dtype=float)
    lam = eigenvalue(n)
    cos_nx = eval_root(RootSystemElement(kind=RootKind.COS, n=n), x)
    x_sin_nx = eval_root(RootSystemElement(kind=RootKind.XSIN, n=n), x)
    second_eigen = -(n**2) * np.cos(n * x)
    second_associated = 2 * n * np.cos(n * x) - n**2 * x * np.sin(n * x)
    return (
        float(np.max(np.abs(second_eigen + lam * cos_nx))),
        float(np.max(np.abs(-second_associated - lam * x_sin_nx + 2 * n * cos_nx))),
    )


def hausdorff_young_gap(f: FunctionOnI, p: float, N: int, rule: QuadratureRule, /) -> float:  # noqa: N803
    """``‖f‖_{L^p(dx/2π)} − (Σ_{|n|≤N} ‖f̂(n)‖^{p′})^{1/p′}`` for ``1 < p <= 2``.

    A nonnegative value certifies the Hausdorff-Young inequality on the truncation.

    Raises:
        pyhalfstrip.ParameterError: If ``p`` is outside ``(1, 2]``.
    """
    if not 1 < p <= 2:
        raise ParameterError(f"p must lie in (1, 2], got {p!r}; use the dual exponent for p > 2")
    dual = p / (p - 1)
    lhs = lp_norm(f, p, rule) / TWO_PI ** (1 / p)
    modes = ExponentialCoefficients.from_trig(trig_coeffs(f, N, rule)).modes
    rhs = np.sum(np.linalg.norm(modes, axis=1) ** dual) ** (1 / dual)
    return float(lhs - rhs)
