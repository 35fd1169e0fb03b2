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
"""Polynomials in the spectral variable and Chebyshev constructions.

A :class:`Polynomial` is presented through its monomial coefficients in
``eta`` (``p.coeffs``), but it is stored as a Chebyshev series over an affine
frame ``[lo, hi]``. Monomial doubles stop being evaluable well before the
degrees used here (``T_30`` near ``eta = 1`` already loses ~1e-5), while the
framed Chebyshev series keeps every residual polynomial on its spectrum
interval accurate to a few ulps. The default frame ``[-1, 1]`` is the
identity map, so unframed polynomials behave exactly as plain series in
``eta``.
"""

import functools
import numbers
from enum import Enum, auto
from typing import Iterable, Optional, Sequence, Tuple, Union

import numpy as np
from numpy.polynomial import Chebyshev
from numpy.polynomial import Polynomial as PowerSeries

from pcli_lab.logger import init_logger

logger = init_logger(__name__)

MAX_DEGREE = 200
IDENTITY_FRAME = (-1.0, 1.0)

Frame = Tuple[float, float]
ArrayOrFloat = Union[float, np.ndarray]


class PolynomialDegreeError(ValueError):
    pass


class PolyOp(Enum):
    ADD = auto()
    SUB = auto()
    MUL = auto()
    SCALE = auto()
    SHIFT_COMPOSE = auto()


def _as_frame(frame: Optional[Sequence[float]]) -> Frame:
    if frame is None:
        return IDENTITY_FRAME
    lo, hi = float(frame[0]), float(frame[1])
    if not lo < hi:
        logger.error(f"Invalid polynomial frame [{lo}, {hi}]")
        raise ValueError(f"frame must satisfy lo < hi, got [{lo}, {hi}]")
    return (lo, hi)


def _normalized(series: Chebyshev) -> Chebyshev:
    series = series.trim(tol=0)
    degree = len(series.coef) - 1
    if degree > MAX_DEGREE:
        logger.error(f"Polynomial degree {degree} exceeds {MAX_DEGREE}")
        raise PolynomialDegreeError(
            f"degree {degree} exceeds the cap of {MAX_DEGREE}"
        )
    return series


class Polynomial:
    """Immutable real polynomial in ``eta``."""

    __slots__ = ("_series",)

    def __init__(
        self,
        coeffs: Iterable[float] = (),
        frame: Optional[Sequence[float]] = None,
    ):
        mono = np.asarray(list(coeffs), dtype=float)
        if mono.ndim != 1:
            raise ValueError("coefficients must form a flat sequence")
        nonzero = np.flatnonzero(mono)
        mono = mono[: nonzero[-1] + 1] if nonzero.size else np.zeros(1)
        if len(mono) - 1 > MAX_DEGREE:
            raise PolynomialDegreeError(
                f"degree {len(mono) - 1} exceeds the cap of {MAX_DEGREE}"
            )
        domain = _as_frame(frame)
        self._series = _normalized(
            PowerSeries(mono).convert(kind=Chebyshev, domain=domain)
        )

    @classmethod
    def _wrap(cls, series: Chebyshev) -> "Polynomial":
        poly = cls.__new__(cls)
        poly._series = _normalized(series)
        return poly

    @classmethod
    def from_chebyshev(
        cls, coeffs: Iterable[float], frame: Optional[Sequence[float]] = None
    ) -> "Polynomial":
        """Build from Chebyshev coefficients over ``frame``."""
        return cls._wrap(
            Chebyshev(np.asarray(list(coeffs), float), domain=_as_frame(frame))
        )

    @classmethod
    def identity(cls, frame: Optional[Sequence[float]] = None) -> "Polynomial":
        return cls._wrap(Chebyshev.identity(domain=_as_frame(frame)))

    @classmethod
    def constant(
        cls, value: float, frame: Optional[Sequence[float]] = None
    ) -> "Polynomial":
        return cls._wrap(Chebyshev([float(value)], domain=_as_frame(frame)))

    @classmethod
    def zero(cls, frame: Optional[Sequence[float]] = None) -> "Polynomial":
        return cls.constant(0.0, frame)

    @property
    def frame(self) -> Frame:
        lo, hi = self._series.domain
        return (float(lo), float(hi))

    @property
    def degree(self) -> int:
        coef = self._series.coef
        if not np.any(coef):
            return -1
        return len(coef) - 1

    @property
    def coeffs(self) -> Tuple[float, ...]:
        """Normalized monomial coefficients; index j multiplies eta**j."""
        if self.degree < 0:
            return ()
        power = self._series.convert(
            kind=PowerSeries, domain=IDENTITY_FRAME, window=IDENTITY_FRAME
        )
        return tuple(float(c) for c in power.trim(tol=0).coef)

    @property
    def chebyshev_coeffs(self) -> Tuple[float, ...]:
        return tuple(float(c) for c in self._series.coef)

    @property
    def eval_scale(self) -> float:
        """Sum of absolute series coefficients; scales Clenshaw rounding."""
        return float(np.abs(self._series.coef).sum())

    def reframe(self, frame: Sequence[float]) -> "Polynomial":
        frame = _as_frame(frame)
        if frame == self.frame:
            return self
        return Polynomial._wrap(self._series.convert(domain=frame))

    def __call__(self, x: ArrayOrFloat) -> ArrayOrFloat:
        value = self._series(np.asarray(x, dtype=float))
        if np.ndim(value) == 0:
            return float(value)
        return value

    def _operands(self, other: "Polynomial") -> Tuple[Chebyshev, Chebyshev]:
        # Prefer the caller's frame unless it is the bare identity frame.
        if other.frame == self.frame:
            return self._series, other._series
        if self.frame == IDENTITY_FRAME:
            return self.reframe(other.frame)._series, other._series
        return self._series, other.reframe(self.frame)._series

    def __add__(self, other):
        if isinstance(other, Polynomial):
            left, right = self._operands(other)
            return Polynomial._wrap(left + right)
        if isinstance(other, numbers.Real):
            return Polynomial._wrap(self._series + float(other))
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._wrap(-self._series)

    def __sub__(self, other):
        if isinstance(other, (Polynomial, numbers.Real)):
            return self + (-other)
        return NotImplemented

    def __rsub__(self, other):
        if isinstance(other, numbers.Real):
            return (-self) + other
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, Polynomial):
            left, right = self._operands(other)
            return Polynomial._wrap(left * right)
        if isinstance(other, numbers.Real):
            return Polynomial._wrap(self._series * float(other))
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, numbers.Real):
            return Polynomial._wrap(self._series / float(other))
        return NotImplemented

    def __pow__(self, exponent: int):
        if not isinstance(exponent, numbers.Integral) or exponent < 0:
            return NotImplemented
        if exponent * max(self.degree, 0) > MAX_DEGREE:
            raise PolynomialDegreeError(
                f"power would exceed the degree cap of {MAX_DEGREE}"
            )
        result = Polynomial.constant(1.0, self.frame)
        for _ in range(int(exponent)):
            result = result * self
        return result

    def shift_compose(self, a: float, b: float) -> "Polynomial":
        """Return ``eta -> self(a * eta + b)``.

        The series coefficients are kept and only the frame moves, so the
        substitution adds no rounding beyond the two new frame endpoints.
        """
        a, b = float(a), float(b)
        if a == 0.0:
            return Polynomial.constant(self(b), self.frame)
        lo, hi = self.frame
        ends = sorted(((lo - b) / a, (hi - b) / a))
        coef = np.array(self._series.coef, dtype=float)
        if a < 0.0:
            coef = coef * (-1.0) ** np.arange(len(coef))
        return Polynomial._wrap(Chebyshev(coef, domain=ends))

    # Equality and hashing both go through the identity frame.
    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"Polynomial(coeffs={list(self.coeffs)}, frame={self.frame})"


def poly_eval(p: Polynomial, x: ArrayOrFloat) -> ArrayOrFloat:
    return p(x)


def poly_arith(
    p: Polynomial,
    q: Optional[Polynomial],
    op: PolyOp,
    *,
    factor: Optional[float] = None,
    a: Optional[float] = None,
    b: Optional[float] = None,
) -> Polynomial:
    """Combine polynomials.

    ``SCALE`` multiplies ``p`` by ``factor`` and ``SHIFT_COMPOSE`` returns
    ``p(a * eta + b)``; ``q`` is ignored by both.
    """
    if op is PolyOp.ADD:
        return p + q
    if op is PolyOp.SUB:
        return p - q
    if op is PolyOp.MUL:
        return p * q
    if op is PolyOp.SCALE:
        if factor is None:
            raise ValueError("SCALE requires factor")
        return p * factor
    if op is PolyOp.SHIFT_COMPOSE:
        if a is None or b is None:
            raise ValueError("SHIFT_COMPOSE requires a and b")
        return p.shift_compose(a, b)
    raise ValueError(f"Unknown polynomial operation {op}")


def chebyshev_value(k: int, x: ArrayOrFloat) -> ArrayOrFloat:
    """T_k(x) from the cos / cosh closed form, branch chosen by ``x``."""
    if k < 0:
        raise ValueError(f"Chebyshev degree must be non-negative, got {k}")
    x = np.asarray(x, dtype=float)
    with np.errstate(over="ignore", invalid="ignore"):
        inside = np.cos(k * np.arccos(np.clip(x, -1.0, 1.0)))
        outside = np.cosh(k * np.arccosh(np.maximum(np.abs(x), 1.0)))
        outside = np.where(x < 0.0, (-1.0) ** k * outside, outside)
        value = np.where(np.abs(x) <= 1.0, inside, outside)
    if value.ndim == 0:
        return float(value)
    return value


@functools.lru_cache(maxsize=None)
def chebyshev_poly(k: int) -> Polynomial:
    """T_k from the three-term recurrence T_k = 2 eta T_{k-1} - T_{k-2}."""
    if k < 0:
        raise ValueError(f"Chebyshev degree must be non-negative, got {k}")
    if k > MAX_DEGREE:
        raise PolynomialDegreeError(
            f"degree {k} exceeds the cap of {MAX_DEGREE}"
        )
    eta = Polynomial.identity()
    previous, current = Polynomial([1.0]), eta
    if k == 0:
        return previous
    for _ in range(k - 1):
        previous, current = current, 2.0 * eta * current - previous
    return current


def optimal_residual_sc(k: int, mu: float, L: float) -> Polynomial:
    """Scaled Chebyshev residual of degree k+1, minimax on [mu, L]."""
    if k < 0:
        raise ValueError(f"k must be non-negative, got {k}")
    if not 0.0 < mu < L:
        logger.error(f"Degenerate interval mu={mu}, L={L}")
        raise ValueError(f"require 0 < mu < L, got mu={mu}, L={L}")
    width = L - mu
    shifted = chebyshev_poly(k + 1).shift_compose(
        -2.0 / width, (L + mu) / width
    )
    return shifted / chebyshev_value(k + 1, (L + mu) / width)


def optimal_residual_smooth(k: int, L: float) -> Polynomial:
    """Degree k+1 residual minimizing max eta * q(eta)**2 over [0, L].

    q is T_{2n+1}(x) / x with x = sqrt(eta/L) and n = k+1, normalized to
    q(0) = 1. In y = 2 eta / L - 1 this quotient has the Chebyshev series
    (T_0 + 2 sum_{j=1..n} (-1)**j T_j(y)) / (2n + 1), so q is built on the
    frame [0, L] without passing through monomial coefficients.
    """
    if k < 0:
        raise ValueError(f"k must be non-negative, got {k}")
    if L <= 0.0:
        logger.error(f"Non-positive smoothness L={L}")
        raise ValueError(f"require L > 0, got {L}")
    n = k + 1
    series = 2.0 * (-1.0) ** np.arange(n + 1)
    series[0] = 1.0
    return Polynomial.from_chebyshev(series / (2 * n + 1), frame=(0.0, L))
