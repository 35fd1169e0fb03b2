# ---------------------------------------------------------------------------- #
#  pcli-lab                                                                    #
#  copyright (c) pcli-lab authors 2026                                         #
#                                                                              #
#  licensed under the apache license, version 2.0 (the "license");             #
#  you may not use this file except in compliance with the license.            #
#                                                                              #
#  you may obtain a copy of the license at                                     #
#                                                                              #
#                  http://www.apache.org/licenses/license-2.0                  #
#                                                                              #
#  unless required by applicable law or agreed to in writing, software         #
#  distributed under the license is distributed on an "as is" basis,           #
#  without warranties or conditions of any kind, either express or implied.    #
#  see the license for the specific language governing permissions and         #
#  limitations under the license.                                              #
# ---------------------------------------------------------------------------- #
"""Lower-bound formulas and grid oracles for residual polynomials."""

import dataclasses
import math
from dataclasses import dataclass
from enum import Enum, auto
from typing import Callable, Optional

import numpy as np
from scipy import optimize

from pcli_lab.logger import init_logger
from pcli_lab.poly import Polynomial

logger = init_logger(__name__)

# Relative slack under which two mesh values count as tied.
_TIE_RTOL = 1e-12
_B3_RTOL = 1e-9


class InconclusiveError(RuntimeError):
    pass


@dataclass(frozen=True)
class Interval:
    lo: float
    hi: float
    open_lo: bool = False

    def __post_init__(self):
        if not self.lo < self.hi:
            raise ValueError(
                f"Interval requires lo < hi, got [{self.lo}, {self.hi}]"
            )

    def mesh(self, n_grid: int) -> np.ndarray:
        points = np.linspace(self.lo, self.hi, int(n_grid))
        if self.open_lo:
            points = points[1:]
        return points

    def __contains__(self, x: float) -> bool:
        above = x > self.lo if self.open_lo else x >= self.lo
        return above and x <= self.hi


@dataclass(frozen=True)
class MinMaxCertificate:
    value: float
    argmax_eta: float
    bound: float = 0.0

    @property
    def margin(self) -> float:
        return self.value - self.bound

    def with_bound(self, bound: float) -> "MinMaxCertificate":
        return dataclasses.replace(self, bound=float(bound))


class B3Outcome(Enum):
    EXCEEDS = auto()
    IS_POWER_FORM = auto()


@dataclass(frozen=True)
class LemmaB3Verdict:
    outcome: B3Outcome
    eta: Optional[float] = None
    gap: Optional[float] = None


def lb_strongly_convex(residual_degree: int, kappa: float) -> float:
    """((sqrt(kappa) - 1) / (sqrt(kappa) + 1)) ** residual_degree."""
    if kappa < 1.0:
        logger.error(f"Condition number {kappa} below 1")
        raise ValueError(f"kappa must be >= 1, got {kappa}")
    if residual_degree < 0:
        raise ValueError(
            f"residual_degree must be non-negative, got {residual_degree}"
        )
    root = math.sqrt(kappa)
    return ((root - 1.0) / (root + 1.0)) ** residual_degree


def lb_smooth(s_degree: int, L: float) -> float:
    """L / (2 * s_degree + 3) ** 2."""
    if L <= 0.0:
        logger.error(f"Non-positive smoothness L={L}")
        raise ValueError(f"L must be positive, got {L}")
    if s_degree < 0:
        raise ValueError(f"s_degree must be non-negative, got {s_degree}")
    return L / (2 * s_degree + 3) ** 2


def _first_max(values: np.ndarray) -> int:
    best = values.max()
    return int(np.flatnonzero(values >= best - _TIE_RTOL * abs(best))[0])


def _grid_max(
    objective: Callable[[np.ndarray], np.ndarray],
    iv: Interval,
    n_grid: int,
) -> MinMaxCertificate:
    if n_grid < 2:
        raise ValueError(f"n_grid must be at least 2, got {n_grid}")
    mesh = iv.mesh(n_grid)
    values = objective(mesh)
    idx = _first_max(values)
    value, eta = float(values[idx]), float(mesh[idx])

    left = mesh[max(idx - 1, 0)]
    right = mesh[min(idx + 1, len(mesh) - 1)]
    if right > left:
        result = optimize.minimize_scalar(
            lambda e: -float(objective(np.asarray(e))),
            bounds=(left, right),
            method="bounded",
            options={"xatol": 1e-12 * max(1.0, abs(right))},
        )
        refined = -float(result.fun)
        if refined > value * (1.0 + _TIE_RTOL) and result.x in iv:
            value, eta = refined, float(result.x)
    return MinMaxCertificate(value=value, argmax_eta=eta)


def residual_max(
    r: Polynomial, iv: Interval, n_grid: int
) -> MinMaxCertificate:
    """Max of |r| over ``iv``: uniform mesh plus a bounded Brent refinement."""
    return _grid_max(lambda eta: np.abs(r(eta)), iv, n_grid)


def weighted_residual_max(
    r: Polynomial, L: float, n_grid: int
) -> MinMaxCertificate:
    """Max of eta * r(eta)**2 over [0, L]; eta = 0 stays in the mesh."""
    if L <= 0.0:
        raise ValueError(f"L must be positive, got {L}")
    return _grid_max(lambda eta: eta * r(eta) ** 2, Interval(0.0, L), n_grid)


def _polish(eta: np.ndarray, degree: int) -> Optional[np.ndarray]:
    """Exact minimax of |1 + eta s(eta)| on the mesh, as a linear program.

    Variables are the coefficients of s and the level t; every mesh point
    contributes -t <= 1 + eta s(eta) <= t.
    """
    powers = eta[:, np.newaxis] ** np.arange(1, degree + 1)
    column = -np.ones((len(eta), 1))
    A_ub = np.vstack(
        [np.hstack([powers, column]), np.hstack([-powers, column])]
    )
    b_ub = np.concatenate([-np.ones(len(eta)), np.ones(len(eta))])
    cost = np.zeros(degree + 1)
    cost[-1] = 1.0
    result = optimize.linprog(
        cost,
        A_ub=A_ub,
        b_ub=b_ub,
        bounds=[(None, None)] * (degree + 1),
        method="highs",
    )
    if not result.success:
        logger.warning(f"Minimax polish failed: {result.message}")
        return None
    return np.asarray(result.x[:degree])


def brute_force_minmax(
    residual_degree: int,
    iv: Interval,
    coeff_box: float,
    n_coeff_grid: int,
    n_eta_grid: int,
    polish: bool = True,
) -> MinMaxCertificate:
    """Exhaustive search over s for min over s of max |1 + eta * s(eta)|.

    With ``polish`` the grid optimum is compared against the exact minimax
    over the same eta mesh, which removes the coefficient-grid quantization
    error.
    """
    if residual_degree not in (1, 2):
        logger.error(f"Brute force asked for residual degree {residual_degree}")
        raise ValueError("brute_force_minmax supports residual degree 1 or 2")
    eta = iv.mesh(n_eta_grid)
    grid = np.linspace(-coeff_box, coeff_box, int(n_coeff_grid))

    def worst(coeffs: np.ndarray) -> float:
        s = np.polynomial.polynomial.polyval(eta, coeffs)
        return float(np.max(np.abs(1.0 + eta * s)))

    if residual_degree == 1:
        values = np.max(np.abs(1.0 + np.outer(grid, eta)), axis=1)
        idx = int(np.argmin(values))
        best = np.array([grid[idx]])
    else:
        values = np.empty((len(grid), len(grid)))
        for row, c0 in enumerate(grid):
            s = c0 + np.outer(grid, eta)
            values[row] = np.max(np.abs(1.0 + eta * s), axis=1)
        row, col = np.unravel_index(int(np.argmin(values)), values.shape)
        best = np.array([grid[row], grid[col]])

    value = worst(best)
    if polish:
        exact = _polish(eta, residual_degree)
        if exact is not None and worst(exact) < value:
            best, value = exact, worst(exact)

    residual = np.abs(1.0 + eta * np.polynomial.polynomial.polyval(eta, best))
    logger.debug(f"Brute-force optimum s={best.tolist()} value={value:.6g}")
    return MinMaxCertificate(
        value=value, argmax_eta=float(eta[_first_max(residual)])
    )


def lemma_b3_check(
    r: Polynomial,
    L: float,
    eps: float,
    n_grid: int,
    exponent: Optional[int] = None,
) -> LemmaB3Verdict:
    """Certify one branch of the near-L dichotomy for ``r``.

    Either some eta in (L - eps, L) has |r(eta)| > (1 - eta/L)**exponent,
    or r is exactly (1 - eta/L)**exponent. ``exponent`` defaults to deg r.
    """
    if not 0.0 < eps < L:
        raise ValueError(f"eps must lie in (0, L), got eps={eps}, L={L}")
    exponent = r.degree if exponent is None else int(exponent)
    if exponent < 1:
        raise ValueError(f"exponent must be at least 1, got {exponent}")

    eta = np.linspace(L - eps, L, int(n_grid) + 2)[1:-1]
    power = (1.0 - eta / L) ** exponent
    values = np.abs(r(eta))
    floor = 64.0 * np.finfo(float).eps * r.eval_scale
    above = np.flatnonzero(values > power * (1.0 + _B3_RTOL) + floor)
    if above.size:
        idx = int(above[0])
        return LemmaB3Verdict(
            outcome=B3Outcome.EXCEEDS,
            eta=float(eta[idx]),
            gap=float(values[idx] - power[idx]),
        )

    target = Polynomial([1.0, -1.0 / L], frame=r.frame) ** exponent
    ours = np.asarray(r.chebyshev_coeffs)
    theirs = np.asarray(target.chebyshev_coeffs)
    size = max(len(ours), len(theirs))
    ours = np.pad(ours, (0, size - len(ours)))
    theirs = np.pad(theirs, (0, size - len(theirs)))
    scale = max(np.abs(ours).max(), np.abs(theirs).max())
    if np.max(np.abs(ours - theirs)) <= _B3_RTOL * scale:
        return LemmaB3Verdict(outcome=B3Outcome.IS_POWER_FORM)

    logger.warning(
        f"Power-form check inconclusive with n_grid={n_grid}, eps={eps}"
    )
    raise InconclusiveError(
        f"no witness on {n_grid} points in ({L - eps}, {L}) and r is not "
        f"(1 - eta/L)^{exponent}; increase n_grid"
    )
