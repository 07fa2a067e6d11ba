"""Regression toolkit: linear, power-law, saturating-exponential and
polynomial-peak fits with Jacobian-based parameter uncertainties.

Nonlinear models are fitted by a coarse multi-start grid followed by
Nelder-Mead refinement, which keeps results reproducible without leaning
on a derivative-based optimizer.  Standard errors come from the
finite-difference Jacobian covariance at the optimum; a bootstrap
alternative is available behind a flag.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np
from numpy.polynomial import Chebyshev
from scipy.optimize import minimize

_FD_REL_STEP = 1e-6


@dataclass(frozen=True)
class FitResult:
    model: str
    parameters: dict[str, float]
    std_errors: dict[str, float]
    residual_norm: float
    r_squared: float
    flags: tuple[str, ...] = ()
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        if set(self.parameters) != set(self.std_errors):
            raise ValueError("parameter and std-error names differ")
        if any(v < 0 for v in self.std_errors.values() if np.isfinite(v)):
            raise ValueError("standard errors must be nonnegative")

    def to_json(self, indent: int | None = None) -> str:
        payload = {
            "model": self.model,
            "parameters": self.parameters,
            "std_errors": self.std_errors,
            "residual_norm": self.residual_norm,
            "r_squared": self.r_squared,
            "flags": list(self.flags),
        }
        if self.meta:
            payload["diagnostics"] = self.meta
        return json.dumps(payload, indent=indent, sort_keys=True)


def _r_squared(ys: np.ndarray, residuals: np.ndarray) -> float:
    tss = float(np.sum((ys - ys.mean()) ** 2))
    rss = float(np.sum(residuals ** 2))
    if tss == 0.0:
        return 1.0 if rss == 0.0 else 0.0
    return 1.0 - rss / tss


def linear_fit(xs, ys) -> FitResult:
    """Least-squares y = a + b x with standard errors from residual variance."""
    xs = np.asarray(xs, dtype=float)
    ys = np.asarray(ys, dtype=float)
    if xs.size < 3:
        raise ValueError("need at least 3 points")
    if np.ptp(xs) == 0.0:
        raise ValueError("degenerate xs: all abscissae coincide")
    design = np.column_stack([np.ones_like(xs), xs])
    coef, *_ = np.linalg.lstsq(design, ys, rcond=None)
    residuals = ys - design @ coef
    dof = xs.size - 2
    sigma2 = float(residuals @ residuals) / dof if dof > 0 else 0.0
    cov = sigma2 * np.linalg.inv(design.T @ design)
    return FitResult(
        model="linear",
        parameters={"a": float(coef[0]), "b": float(coef[1])},
        std_errors={"a": math.sqrt(max(cov[0, 0], 0.0)),
                    "b": math.sqrt(max(cov[1, 1], 0.0))},
        residual_norm=float(np.linalg.norm(residuals)),
        r_squared=_r_squared(ys, residuals),
    )


def power_law_fit(xs, ys) -> FitResult:
    """Fit y = c * x^p by log-log linear regression."""
    xs = np.asarray(xs, dtype=float)
    ys = np.asarray(ys, dtype=float)
    if np.any(xs <= 0) or np.any(ys <= 0):
        raise ValueError("power-law fit needs strictly positive data")
    lin = linear_fit(np.log(xs), np.log(ys))
    c = math.exp(lin.parameters["a"])
    residuals = ys - c * xs ** lin.parameters["b"]
    return FitResult(
        model="power_law",
        parameters={"c": c, "p": lin.parameters["b"]},
        std_errors={"c": c * lin.std_errors["a"], "p": lin.std_errors["b"]},
        residual_norm=float(np.linalg.norm(residuals)),
        r_squared=_r_squared(ys, residuals),
        meta={"log_space_residual_norm": lin.residual_norm},
    )


_SATURATING_MODELS = {
    # f(x) = 1 - a exp(-b x)
    "one_minus_a_exp": lambda x, a, b: 1.0 - a * np.exp(-b * x),
    # f(x) = a (1 - exp(-b x))
    "a_times_one_minus_exp": lambda x, a, b: a * (1.0 - np.exp(-b * x)),
}


def _fd_jacobian(fun, params: np.ndarray) -> np.ndarray:
    """Finite-difference Jacobian of the residual vector, relative step."""
    base = fun(params)
    jac = np.empty((base.size, params.size))
    for j, pj in enumerate(params):
        h = _FD_REL_STEP * max(abs(pj), 1.0)
        up = params.copy()
        up[j] = pj + h
        jac[:, j] = (fun(up) - base) / h
    return jac


def _jacobian_errors(fun, params: np.ndarray, n_points: int) -> np.ndarray:
    residuals = fun(params)
    dof = n_points - params.size
    sigma2 = float(residuals @ residuals) / dof if dof > 0 else 0.0
    jac = _fd_jacobian(fun, params)
    jtj = jac.T @ jac
    try:
        cov = sigma2 * np.linalg.inv(jtj)
    except np.linalg.LinAlgError:
        return np.full(params.size, np.inf)
    return np.sqrt(np.clip(np.diag(cov), 0.0, None))


def _bootstrap_errors(xs, ys, fitter, n_boot: int = 200, seed: int = 0) -> np.ndarray:
    rng = np.random.default_rng(seed)
    draws = []
    for _ in range(n_boot):
        pick = rng.integers(0, xs.size, xs.size)
        try:
            draws.append(fitter(xs[pick], ys[pick]))
        except (ValueError, np.linalg.LinAlgError):
            continue
    return np.std(np.array(draws), axis=0, ddof=1)


def saturating_exponential_fit(xs, ys, model: str = "one_minus_a_exp",
                               errors: str = "jacobian") -> FitResult:
    """Two-parameter saturating exponential via grid search + Nelder-Mead.

    The 32x32 start grid is linear in a and log-spaced in b; the best grid
    point seeds a simplex refinement to 1e-10 tolerance.  `errors` selects
    'jacobian' (default) or 'bootstrap' uncertainties.
    """
    if model not in _SATURATING_MODELS:
        raise ValueError(f"unknown saturating model {model!r}")
    xs = np.asarray(xs, dtype=float)
    ys = np.asarray(ys, dtype=float)
    if xs.size < 4:
        raise ValueError("need at least 4 points")
    f = _SATURATING_MODELS[model]

    if model == "one_minus_a_exp":
        scale = float(np.max(np.abs(1.0 - ys)))
    else:
        scale = float(np.max(np.abs(ys)))
    flags: list[str] = []
    if scale < 1e-12:
        # constant data: amplitude 0, rate unidentifiable
        flags.append("degenerate")
        residuals = f(xs, 0.0, 1.0) - ys
        return FitResult(
            model=model,
            parameters={"a": 0.0, "b": float("nan")},
            std_errors={"a": 0.0, "b": float("inf")},
            residual_norm=float(np.linalg.norm(residuals)),
            r_squared=_r_squared(ys, residuals),
            flags=tuple(flags),
        )

    span = float(np.ptp(xs)) or 1.0
    a_grid = np.linspace(0.05 * scale, 3.0 * scale, 32)
    b_grid = np.geomspace(0.05 / span, 100.0 / span, 32)

    def sse(params):
        return float(np.sum((f(xs, params[0], params[1]) - ys) ** 2))

    best = min(((sse((a, b)), a, b) for a in a_grid for b in b_grid))
    res = minimize(sse, x0=[best[1], best[2]], method="Nelder-Mead",
                   options={"xatol": 1e-10, "fatol": 1e-10 * max(best[0], 1e-30),
                            "maxiter": 4000})
    if not res.success:
        flags.append("not_converged")
    a_hat, b_hat = (float(v) for v in res.x)

    def residual_vec(params):
        return f(xs, params[0], params[1]) - ys

    if errors == "bootstrap":
        def refit(x, y):
            r = saturating_exponential_fit(x, y, model, errors="jacobian")
            return [r.parameters["a"], r.parameters["b"]]
        errs = _bootstrap_errors(xs, ys, refit)
    else:
        errs = _jacobian_errors(residual_vec, np.array([a_hat, b_hat]), xs.size)
    residuals = residual_vec(np.array([a_hat, b_hat]))
    return FitResult(
        model=model,
        parameters={"a": a_hat, "b": b_hat},
        std_errors={"a": float(errs[0]), "b": float(errs[1])},
        residual_norm=float(np.linalg.norm(residuals)),
        r_squared=_r_squared(ys, residuals),
        flags=tuple(flags),
    )


def polynomial_peak(xs, ys, degree: int = 10) -> tuple[float, FitResult]:
    """Locate the interior maximum of a degree-`degree` polynomial fit.

    Fitting happens in the Chebyshev basis on the domain rescaled to
    [-1, 1]; a plain degree-10 Vandermonde would be numerically rank
    deficient.  A 'boundary' flag marks fits whose maximum sits at the
    scan edge (unreliable peak).
    """
    xs = np.asarray(xs, dtype=float)
    ys = np.asarray(ys, dtype=float)
    if xs.size <= degree + 1:
        raise ValueError(f"need more than degree+1 = {degree + 1} points")
    order = np.argsort(xs)
    xs, ys = xs[order], ys[order]
    if np.ptp(xs) == 0.0:
        raise ValueError("degenerate xs: all abscissae coincide")

    series, info = Chebyshev.fit(xs, ys, degree, full=True)
    rank = info[1]
    if rank < degree + 1:
        raise np.linalg.LinAlgError(
            f"rank-deficient design (rank {rank} < {degree + 1})")
    residuals = ys - series(xs)

    # candidate maxima: stationary points inside the domain plus endpoints
    deriv = series.deriv()
    roots = deriv.roots()
    interior = [float(r.real) for r in roots
                if abs(r.imag) < 1e-9 and xs[0] < r.real < xs[-1]]
    candidates = interior + [float(xs[0]), float(xs[-1])]
    values = series(np.array(candidates))
    best = int(np.argmax(values))
    location = candidates[best]
    flags: tuple[str, ...] = ()
    if best >= len(interior):
        flags = ("boundary",)
        location = float(xs[0]) if best == len(interior) else float(xs[-1])

    coeffs = {f"c{k}": float(c) for k, c in enumerate(series.coef)}
    dof = xs.size - (degree + 1)
    sigma2 = float(residuals @ residuals) / dof if dof > 0 else 0.0
    design = np.polynomial.chebyshev.chebvander(
        (2 * xs - (xs[0] + xs[-1])) / (xs[-1] - xs[0]), degree)
    try:
        cov = sigma2 * np.linalg.inv(design.T @ design)
        errs = {f"c{k}": math.sqrt(max(cov[k, k], 0.0)) for k in range(degree + 1)}
    except np.linalg.LinAlgError:
        errs = {f"c{k}": float("inf") for k in range(degree + 1)}
    fit = FitResult(
        model=f"chebyshev_deg{degree}",
        parameters=coeffs,
        std_errors=errs,
        residual_norm=float(np.linalg.norm(residuals)),
        r_squared=_r_squared(ys, residuals),
        flags=flags,
        meta={"peak_location": location},
    )
    return location, fit
