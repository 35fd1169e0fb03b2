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
"""Iterates as polynomials of the spectral value on the hard quadratic.

On f(x) = 1/2 eta |x|^2 - eta <v, x> started from zero, every point of an
oblivious diagonal schedule is x_i = s_i(eta) * eta coordinate-wise, and
the s polynomials follow

    s'_{i,c} = sum_j (a_{ij,c} eta + b_{ij,c}) s_{j,c} - sum_j a_{ij,c} v_c.
"""

from dataclasses import dataclass
from typing import Iterator, Optional, Sequence, Tuple

import numpy as np

from pcli_lab.logger import init_logger
from pcli_lab.poly import Polynomial

from .operators import Diagonal, Scalar, SideInformation
from .schedule_utils import CoefficientSchedule

logger = init_logger(__name__)

PolyGrid = Tuple[Tuple[Polynomial, ...], ...]


class NonDiagonalOperatorError(TypeError):
    pass


@dataclass(frozen=True)
class SymbolicTrajectory:
    polys: PolyGrid
    v: Tuple[float, ...]
    k: int = 0

    @property
    def p(self) -> int:
        return len(self.polys)

    @property
    def d(self) -> int:
        return len(self.v)

    def evaluate(self, eta: float) -> np.ndarray:
        """Points at spectral value ``eta`` as a (p, d) array."""
        return np.array(
            [[s(eta) * eta for s in row] for row in self.polys], dtype=float
        )


def _entries(op, d: int) -> np.ndarray:
    if not isinstance(op, (Scalar, Diagonal)):
        raise NonDiagonalOperatorError(
            f"symbolic runs need Scalar or Diagonal operators, got {op!r}"
        )
    return op.entries(d)


def symbolic_step(
    traj: SymbolicTrajectory,
    sched: CoefficientSchedule,
    info: SideInformation,
) -> SymbolicTrajectory:
    A, B = sched.coefficients(traj.k, info)
    p, d = traj.p, traj.d
    if len(A) != p:
        raise ValueError(f"schedule {sched.label} has p={len(A)}, not {p}")
    a = np.array([[_entries(A[i][j], d) for j in range(p)] for i in range(p)])
    b = np.array([[_entries(B[i][j], d) for j in range(p)] for i in range(p)])
    frame = traj.polys[0][0].frame
    eta = Polynomial.identity(frame)

    rows = []
    for i in range(p):
        row = []
        for c in range(d):
            acc = Polynomial.constant(
                -float(np.sum(a[i, :, c])) * traj.v[c], frame
            )
            for j in range(p):
                s = traj.polys[j][c]
                if s.degree < 0:
                    continue
                if a[i, j, c] != 0.0:
                    acc = acc + (eta * s) * float(a[i, j, c])
                if b[i, j, c] != 0.0:
                    acc = acc + s * float(b[i, j, c])
            row.append(acc)
        rows.append(tuple(row))
    return SymbolicTrajectory(polys=tuple(rows), v=traj.v, k=traj.k + 1)


def iter_symbolic(
    sched: CoefficientSchedule,
    info: SideInformation,
    v: Sequence[float],
    p: int,
    d: int,
    frame: Optional[Tuple[float, float]] = None,
) -> Iterator[SymbolicTrajectory]:
    """Yield the zero-initialized trajectory and each later generation."""
    v = tuple(float(x) for x in v)
    if len(v) != d:
        raise ValueError(f"anchor has dimension {len(v)}, expected {d}")
    if p != sched.p:
        raise ValueError(f"schedule {sched.label} has p={sched.p}, not {p}")
    frame = info.frame if frame is None else frame
    zero = Polynomial.zero(frame)
    traj = SymbolicTrajectory(
        polys=tuple(tuple(zero for _ in range(d)) for _ in range(p)), v=v
    )
    while True:
        yield traj
        traj = symbolic_step(traj, sched, info)


def symbolic_run(
    sched: CoefficientSchedule,
    info: SideInformation,
    v: Sequence[float],
    K: int,
    p: int,
    d: int,
) -> SymbolicTrajectory:
    if K < 0:
        raise ValueError(f"K must be non-negative, got {K}")
    for traj in iter_symbolic(sched, info, v, p, d):
        if traj.k == K:
            logger.debug(f"{sched.label}: symbolic run reached k={K}")
            return traj


def residual_poly(traj: SymbolicTrajectory, coord: int) -> Polynomial:
    """r(eta) = 1 - s(eta) * eta / v_coord for the returned point.

    The minimizer sits at v, so x - v = r(eta) (0 - v) coordinate-wise.
    """
    anchor = traj.v[coord]
    if anchor == 0.0:
        raise ValueError(f"anchor coordinate {coord} is zero")
    s = traj.polys[-1][coord]
    eta = Polynomial.identity(s.frame)
    return 1.0 - (eta * s) / anchor
