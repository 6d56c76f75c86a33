"""Command line front end: ``pyhalfstrip expand|solve|verify|norms|catalog``.

Exit codes: 0 success, 1 verification failure, 2 usage error (including unknown function names),
3 input/output failure.
"""

from __future__ import annotations

import functools
import math
import re
import sys
from collections.abc import Callable
from enum import Enum
from pathlib import Path
from typing import Any

import click
import numpy as np
import pydantic_core
from loguru import logger
from pydantic import Field, PositiveInt, ValidationError, field_validator

from pyhalfstrip import __version__
from pyhalfstrip._base import (
    BaseHalfStripError,
    DegenerateInputError,
    FrozenModel,
    ParameterError,
    UnknownFunctionError,
)
from pyhalfstrip.config import ENV_PREFIX, get_settings
from pyhalfstrip.diagnostics import SuiteConfig, run_suite
from pyhalfstrip.harmonic_solver import (
    Convention,
    StripGrid,
    apriori_ratio,
    check_compatibility,
    mixed_norm,
    solve,
    write_field_csv,
)
from pyhalfstrip.rootbasis import RootCoefficients, reconstruct, root_coeffs, root_combination, trig_coeffs
from pyhalfstrip.vectorfn import (
    Catalog,
    FunctionOnI,
    NormParams,
    QuadratureKind,
    QuadratureRule,
    catalog,
    lp_norm,
    lp_norm_of_values,
    make_quadrature,
    sobolev2_norm,
)

LOG_LEVELS = ("TRACE", "DEBUG", "INFO", "SUCCESS", "WARNING", "ERROR", "CRITICAL")
_GRID = re.compile(r"^(?P<nx>[0-9]+)x(?P<ny>[0-9]+)$")


class OutputError(click.ClickException):
    """Reading or writing a file failed."""

    exit_code = 3


class Command(Enum):
    EXPAND = "expand"
    SOLVE = "solve"
    VERIFY = "verify"
    NORMS = "norms"
    CATALOG = "catalog"


class OutputFormat(Enum):
    JSON = "json"
    CSV = "csv"


class CliConfig(FrozenModel):
    command: Command
    function: str = "xsin_3"
    N: PositiveInt = 8
    p: float = Field(default=2.0, gt=1)
    xi: float = Field(default_factory=lambda: get_settings().xi, gt=0)
    dim: PositiveInt = 1
    quadrature: QuadratureKind = QuadratureKind.GAUSS_COMPOSITE
    panels: PositiveInt = 64
    order: int = Field(default=8, ge=2)
    grid: tuple[PositiveInt, PositiveInt] = (65, 65)
    output: Path | None = None
    output_format: OutputFormat = OutputFormat.JSON
    convention: Convention = Convention.HARMONIC_CONSISTENT

    @field_validator("grid", mode="before")
    @classmethod
    def _parse_grid(cls, value: Any) -> Any:
        if isinstance(value, str):
            match = _GRID.match(value.strip())
            if match is None:
                raise ValueError(f'grid must look like NXxNY, e.g. 65x65, got "{value}"')
            return int(match["nx"]), int(match["ny"])
        return value

    def rule(self) -> QuadratureRule:
        return make_quadrature(self.quadrature, self.panels, self.order)

    def strip_grid(self) -> StripGrid:
        nx, ny = self.grid
        return StripGrid.uniform(self.xi, nx, ny)


def _build_config(**values: Any) -> CliConfig:
    try:
        return CliConfig.model_validate(values)
    except ValidationError as err:
        raise click.UsageError(str(err)) from None


def _handle_errors(command: Callable) -> Callable:
    @functools.wraps(command)
    def wrapper(*args, **kwargs):
        try:
            return command(*args, **kwargs)
        except UnknownFunctionError as err:
            raise click.BadParameter(str(err), param_hint="'--f'") from None
        except BaseHalfStripError as err:
            raise click.UsageError(str(err)) from None
        except OSError as err:
            raise OutputError(f"{err.filename or ''}: {err.strerror or err}") from None

    return wrapper


def resolve_function(source: str, dim: int = 1) -> FunctionOnI:
    """Catalog name, or path of a root-coefficient JSON file as written by ``expand``.

    Raises:
        pyhalfstrip.UnknownFunctionError: If ``source`` is neither.
        OSError: If the coefficient file cannot be read.
    """
    if source.endswith(".json") or Path(source).is_file():
        try:
            coeffs = RootCoefficients.from_json(Path(source).read_bytes())
        except (ValueError, ValidationError) as err:
            raise ParameterError(f"{source} is not a root-coefficient file: {err}") from None
        return root_combination(coeffs, name=Path(source).stem)
    return catalog(source, dim)


def _emit(text: str, path: Path | None) -> None:
    if path is None or str(path) == "-":
        click.echo(text)
        return
    path.write_text(text if text.endswith("\n") else f"{text}\n")
    logger.info("wrote {}", path)


def _function_options(command: Callable) -> Callable:
    options = [
        click.option("--f", "function", default="xsin_3", show_default=True, help="Catalog name or coefficient file."),
        click.option("--N", "N", type=int, default=8, show_default=True, help="Truncation of the expansion."),
        click.option("--dim", type=int, default=1, show_default=True, help="Dimension d of the value space."),
        click.option(
            "--quadrature",
            type=click.Choice([kind.value for kind in QuadratureKind]),
            envvar=f"{ENV_PREFIX}QUADRATURE_KIND",
            default=QuadratureKind.GAUSS_COMPOSITE.value,
            show_default=True,
        ),
        click.option("--panels", type=int, envvar=f"{ENV_PREFIX}QUADRATURE_PANELS", default=64, show_default=True),
        click.option("--order", type=int, envvar=f"{ENV_PREFIX}QUADRATURE_ORDER", default=8, show_default=True),
    ]
    for option in reversed(options):
        command = option(command)
    return command


_convention_option = click.option(
    "--convention",
    type=click.Choice([convention.value for convention in Convention]),
    default=Convention.HARMONIC_CONSISTENT.value,
    show_default=True,
    help="Coefficient of the y e^{-ny} cos nx term.",
)


@click.group()
@click.version_option(__version__, prog_name="pyhalfstrip")
@click.option(
    "--log-level",
    type=click.Choice(LOG_LEVELS, case_sensitive=False),
    envvar=f"{ENV_PREFIX}LOG_LEVEL",
    default="WARNING",
    show_default=True,
)
def main(log_level: str) -> None:
    """Spectral solver and verification toolkit for the nonlocal Laplace problem on the half-strip."""
    logger.remove()
    logger.add(sys.stderr, level=log_level.upper(), format="{time:HH:mm:ss} | {level: <8} | {message}")
    logger.enable("pyhalfstrip")


@main.command()
@_function_options
@click.option("--output", type=click.Path(path_type=Path), default=None, help="Coefficient file, stdout by default.")
@click.option("--format", "output_format", type=click.Choice(["json", "csv"]), default="json", show_default=True)
@click.option("--trig", type=click.Path(path_type=Path), default=None, help="Also write trigonometric coefficients.")
@_handle_errors
def expand(output: Path | None, output_format: str, trig: Path | None, **values: Any) -> None:
    """Expand a function in the root system and report the reconstruction error against N."""
    cfg = _build_config(command=Command.EXPAND, output=output, output_format=output_format, **values)
    f = resolve_function(cfg.function, cfg.dim)
    rule = cfg.rule()
    coeffs = root_coeffs(f, cfg.N, rule)

    exact = f(rule.nodes)
    click.echo(f"{'N':>6}  {'max error':>12}  {'L2 error':>12}", err=True)
    for n in sorted({*(2**k for k in range(cfg.N.bit_length())), cfg.N}):
        error = reconstruct(coeffs.truncated(n), rule.nodes) - exact
        click.echo(f"{n:>6}  {np.max(np.abs(error)):>12.3e}  {lp_norm_of_values(error, 2, rule):>12.3e}", err=True)

    if cfg.output_format is OutputFormat.JSON:
        _emit(coeffs.to_json(), cfg.output)
    else:
        _emit(_coefficients_csv(coeffs), cfg.output)
    if trig is not None:
        _emit(trig_coeffs(f, cfg.N, rule).to_json(), trig)


def _coefficients_csv(coeffs: RootCoefficients) -> str:
    rows = [",".join(["kind", "n", *(f"component_{j}" for j in range(coeffs.dim))])]
    modes = range(1, coeffs.N + 1)
    blocks = (("const", [0], coeffs.a0[None, :]), ("cos", modes, coeffs.a), ("xsin", modes, coeffs.b))
    for kind, indices, values in blocks:
        for n, row in zip(indices, values, strict=True):
            rows.append(",".join([kind, str(n), *(f"{value:.16e}" for value in row)]))
    return "\n".join(rows)


@main.command(name="solve")
@_function_options
@click.option("--xi", type=float, default=None, help="Truncation height of the sampled strip.")
@click.option("--grid", default="65x65", show_default=True, help="Sampling grid NXxNY of the CSV field.")
@click.option(
    "--output",
    type=click.Path(path_type=Path),
    default=Path("solution"),
    show_default=True,
    help="Base path; <output>.json gets the solution, <output>.csv the field sample.",
)
@_convention_option
@_handle_errors
def solve_command(xi: float | None, grid: str, output: Path, convention: str, **values: Any) -> None:
    """Solve the boundary value problem and sample the solution."""
    extra = {} if xi is None else {"xi": xi}
    cfg = _build_config(command=Command.SOLVE, grid=grid, output=output, convention=convention, **extra, **values)
    f = resolve_function(cfg.function, cfg.dim)
    rule = cfg.rule()

    report = check_compatibility(f, rule)
    for name, satisfied in report.satisfied.items():
        size = float(np.linalg.norm(getattr(report, name)))
        status = "ok" if satisfied else "warning: violated"
        click.echo(f"compatibility {name:<18} {size:.3e}  {status}", err=True)

    sol = solve(f, cfg.N, rule, convention=cfg.convention)
    if not sol.finite_mixed_norm:
        click.echo("warning: nonzero constant mode, the mixed norm over the whole strip diverges", err=True)
    json_path, csv_path = output.with_suffix(".json"), output.with_suffix(".csv")
    _emit(sol.to_json(), json_path)
    write_field_csv(sol, cfg.strip_grid(), csv_path)
    logger.info("wrote {}", csv_path)


@main.command()
@click.option("--catalog", "names", multiple=True, help="Catalog subset; repeat the option.")
@click.option("--N", "n_list", type=int, multiple=True, help="Truncations; repeat the option.")
@click.option("--p", "p_list", type=float, multiple=True, help="Exponents of the plateau and a-priori checks.")
@click.option("--dim", "dims", type=int, multiple=True, help="Value-space dimensions.")
@click.option("--xi", type=float, default=None, help="Height of the sampled strip.")
@click.option("--tol", "tolerances", multiple=True, help="Tolerance override family=value; repeat the option.")
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--samples", type=int, default=None, help="Random combinations of the span check.")
@_convention_option
@click.option("--output", type=click.Path(path_type=Path), default=None, help="Report file, stdout by default.")
@click.option("--table/--no-table", default=True, show_default=True, help="Print a summary table to stderr.")
@_handle_errors
def verify(
    names: tuple[str, ...],
    n_list: tuple[int, ...],
    p_list: tuple[float, ...],
    dims: tuple[int, ...],
    xi: float | None,
    tolerances: tuple[str, ...],
    seed: int,
    samples: int | None,
    convention: str,
    output: Path | None,
    table: bool,
) -> None:
    """Run the verification suite; exits 1 when a check that is not an expected failure fails."""
    values: dict[str, Any] = {
        "catalog": list(names) or None,
        "n_list": list(n_list) or None,
        "p_list": list(p_list) or None,
        "dims": list(dims) or None,
        "xi": xi,
        "random_samples": samples,
    }
    cfg = SuiteConfig.create(
        **{key: value for key, value in values.items() if value is not None},
        tolerances=_parse_tolerances(tolerances),
        seed=seed,
        convention=convention,
    )
    report = run_suite(cfg)
    _emit(report.to_json(), output)
    if table:
        click.echo(report.table(), err=True)
    if not report.ok:
        failed = ", ".join(record.name for record in report.failures())
        click.echo(f"verification failed: {failed}", err=True)
        sys.exit(1)


def _parse_tolerances(items: tuple[str, ...]) -> dict[str, float]:
    tolerances = {}
    for item in items:
        key, sep, value = item.partition("=")
        try:
            tolerances[key.strip()] = float(value)
        except ValueError:
            sep = ""
        if not sep:
            raise click.BadParameter(f'expected family=value, got "{item}"', param_hint="'--tol'")
    return tolerances


@main.command()
@_function_options
@click.option("--p", type=float, default=2.0, show_default=True, help="Lebesgue exponent.")
@click.option("--xi", type=float, default=None, help="Truncation height of the strip.")
@click.option("--format", "output_format", type=click.Choice(["json", "csv"]), default=None, help="Machine output.")
@_handle_errors
def norms(p: float, xi: float | None, output_format: str | None, **values: Any) -> None:
    """Print the norms of f and of its solution, and the a-priori ratio."""
    extra = {} if xi is None else {"xi": xi}
    cfg = _build_config(command=Command.NORMS, p=p, output_format=output_format or "json", **extra, **values)
    f = resolve_function(cfg.function, cfg.dim)
    rule = cfg.rule()
    sol = solve(f, cfg.N, rule)
    params = NormParams(p=cfg.p, xi=cfg.xi)
    grid = StripGrid.gauss(cfg.xi, x_rule=rule)

    result: dict[str, Any] = {
        "function": f.name,
        "p": cfg.p,
        "xi": cfg.xi,
        "N": cfg.N,
        "lp": lp_norm(f, cfg.p, rule),
        "w2p": sobolev2_norm(f, cfg.p, rule),
        "lp1": mixed_norm(sol, params, grid),
        "w2p1": mixed_norm(sol, params, grid, derivatives=True),
    }
    try:
        result["ratio"] = apriori_ratio(f, sol, params, rule, grid)
    except DegenerateInputError:
        result["ratio"] = "degenerate"

    if output_format == OutputFormat.JSON.value:
        click.echo(pydantic_core.to_json(result, indent=2).decode())
    elif output_format == OutputFormat.CSV.value:
        click.echo(",".join(result))
        click.echo(",".join(_csv_value(value) for value in result.values()))
    else:
        click.echo(f"L^p(I)          {_text_value(result['lp'])}")
        click.echo(f"W2_p(I)         {_text_value(result['w2p'])}")
        click.echo(f"L^(p,1)(Pi_xi)  {_text_value(result['lp1'])}")
        click.echo(f"W2_(p,1)(Pi_xi) {_text_value(result['w2p1'])}")
        click.echo(f"ratio           {_text_value(result['ratio'])}")


def _text_value(value: Any) -> str:
    return f"{value:.16e}" if isinstance(value, float) else str(value)


def _csv_value(value: Any) -> str:
    if isinstance(value, float) and not math.isfinite(value):
        return ""
    return _text_value(value)


@main.command(name="catalog")
def catalog_command() -> None:
    """List the published test functions."""
    for entry, name in zip(Catalog, Catalog.names, strict=True):
        click.echo(f"{name:<8} {entry.description}")

