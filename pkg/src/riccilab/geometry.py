"""Adapted frames and curvature scalars for real hypersurfaces of complex space forms.

The ambient space is CP^n or CH^n with constant holomorphic sectional
curvature 4c, c != 0.  Every matrix in this package lives in an adapted
orthonormal tangent frame (xi, e2, phi e2, ..., en, phi en) whose first
vector is the Reeb direction xi = -JN; the structure tensor phi then acts
by a fixed antisymmetric matrix with phi xi = 0.  For n = 2 the frame is
(xi, e2, e3) with phi e2 = e3 and phi e3 = -e2.

Curvature scalars come from the Gauss equation of the hypersurface:

    R(X, Y)Z = c [ <Y,Z> X - <X,Z> Y + <phi Y, Z> phi X - <phi X, Z> phi Y
                   - 2 <phi X, Y> phi Z ] + <AY,Z> AX - <AX,Z> AY,

where A is the shape operator.  Tracing over an orthonormal basis gives the
closed Ricci form implemented in :func:`ricci_direct`; :func:`ricci_tensor_sum`
keeps the term-by-term sum as an independent brute-force oracle.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

DEFAULT_TOL = 1e-9
UNIT_TOL = 1e-12


@dataclass(frozen=True)
class SpaceFormParams:
    """Ambient complex space form: complex dimension n, curvature quarter c."""

    n: int
    c: float

    def __post_init__(self):
        if self.n < 2:
            raise ValueError(f"complex dimension must be >= 2, got {self.n}")
        if self.c == 0:
            raise ValueError("holomorphic curvature constant c must be nonzero")

    @property
    def dim(self) -> int:
        """Real dimension 2n - 1 of the hypersurface tangent space."""
        return 2 * self.n - 1


@dataclass(frozen=True, eq=False)
class AdaptedFrame:
    """Orthonormal frame (xi, e2, phi e2, ..., en, phi en) with its phi action."""

    dim: int
    phi_matrix: np.ndarray
    xi_index: int = 0

    @classmethod
    def standard(cls, n: int) -> "AdaptedFrame":
        """Canonical frame for complex dimension n (phi pairs consecutive vectors)."""
        if n < 2:
            raise ValueError("n >= 2 required")
        dim = 2 * n - 1
        phi = np.zeros((dim, dim))
        for k in range(n - 1):
            i, j = 1 + 2 * k, 2 + 2 * k
            phi[j, i] = 1.0    # phi e_i = e_j
            phi[i, j] = -1.0   # phi e_j = -e_i
        return cls(dim=dim, phi_matrix=phi)

    def phi(self, x: np.ndarray) -> np.ndarray:
        return self.phi_matrix @ np.asarray(x, dtype=float)

    def check_invariants(self, tol: float = 0.0) -> None:
        """Raise unless phi is antisymmetric, kills xi, and squares to -Id + xi xi^T."""
        p = self.phi_matrix
        if np.max(np.abs(p + p.T)) > tol:
            raise AssertionError("phi matrix is not antisymmetric")
        if np.max(np.abs(p[:, self.xi_index])) > tol:
            raise AssertionError("phi xi != 0")
        expected = -np.eye(self.dim)
        expected[self.xi_index, self.xi_index] = 0.0
        if np.max(np.abs(p @ p - expected)) > tol:
            raise AssertionError("phi^2 != -Id + xi xi^T")


@dataclass(frozen=True, eq=False)
class ShapeState:
    """Shape operator, as a symmetric matrix in an adapted frame."""

    frame: AdaptedFrame
    a_matrix: np.ndarray

    def __post_init__(self):
        a = np.asarray(self.a_matrix, dtype=float)
        if a.shape != (self.frame.dim, self.frame.dim):
            raise ValueError(f"shape operator must be {self.frame.dim}x{self.frame.dim}")
        # symmetric by construction; for symmetric input this is the identity map
        object.__setattr__(self, "a_matrix", (a + a.T) / 2.0)


@dataclass(frozen=True)
class CurvatureReport:
    """Scalar curvature data of one direction: Ric, kappa, |H|, |phi X|^2."""

    ric: float
    kappa: float
    mean_norm: float
    phi_norm_sq: float


def shape_state_n2(a_matrix) -> ShapeState:
    """3x3 shape operator in the standard (xi, e2, e3) frame of n = 2."""
    return ShapeState(AdaptedFrame.standard(2), np.asarray(a_matrix, dtype=float))


def _as_unit(x) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    nrm = float(np.linalg.norm(x))
    if abs(nrm - 1.0) > UNIT_TOL:
        raise ValueError(f"direction must be a unit vector, |x| = {nrm!r}")
    return x


def ricci_direct(state: ShapeState, sf: SpaceFormParams, x) -> float:
    """Ricci curvature Ric(x) in closed form.

    Tracing the Gauss equation over an orthonormal basis containing x gives

        Ric(x) = c (2n - 2 + 3 |phi x|^2) + Tr(A) <Ax, x> - |Ax|^2.
    """
    x = _as_unit(x)
    a = state.a_matrix
    ax = a @ x
    phix = state.frame.phi(x)
    return (sf.c * (2 * sf.n - 2 + 3.0 * float(phix @ phix))
            + float(np.trace(a)) * float(x @ ax) - float(ax @ ax))


def curvature_operator(state: ShapeState, sf: SpaceFormParams, x, y, z) -> np.ndarray:
    """R(x, y)z from the Gauss equation, evaluated term by term."""
    c = sf.c
    a = state.a_matrix
    phi = state.frame.phi_matrix
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    z = np.asarray(z, dtype=float)
    px, py = phi @ x, phi @ y
    pz = phi @ z
    return (c * (float(y @ z) * x - float(x @ z) * y
                 + float(py @ z) * px - float(px @ z) * py
                 - 2.0 * float(px @ y) * pz)
            + float((a @ y) @ z) * (a @ x) - float((a @ x) @ z) * (a @ y))


def ricci_tensor_sum(state: ShapeState, sf: SpaceFormParams, x) -> float:
    """Brute-force Ricci curvature: sum_i <R(e_i, x)x, e_i> over the frame basis.

    Serves as the independent oracle for :func:`ricci_direct`.
    """
    x = _as_unit(x)
    dim = state.frame.dim
    total = 0.0
    for i in range(dim):
        e_i = np.zeros(dim)
        e_i[i] = 1.0
        total += float(curvature_operator(state, sf, e_i, x, x) @ e_i)
    return total


def normal_curvature(state: ShapeState, x) -> float:
    """kappa_x = <Ax, x> for a unit direction x."""
    x = _as_unit(x)
    return float(x @ (state.a_matrix @ x))


def mean_curvature_norm(state: ShapeState) -> float:
    """|H| = |Tr A| / (2n - 1)."""
    return abs(float(np.trace(state.a_matrix))) / state.frame.dim


def is_hopf(state: ShapeState, tol: float = DEFAULT_TOL) -> tuple[bool, float | None]:
    """Whether xi is a principal direction: |A xi - <A xi, xi> xi| <= tol.

    Returns (True, delta) with the principal value delta = <A xi, xi> when it
    is, and (False, None) otherwise.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    i = state.frame.xi_index
    a_xi = state.a_matrix[:, i].copy()
    delta = a_xi[i]
    a_xi[i] = 0.0
    if float(np.linalg.norm(a_xi)) <= tol:
        return True, float(delta)
    return False, None


def hopf_relation_residual(delta: float, lambda1: float, lambda2: float, c: float) -> float:
    """2 l1 l2 - (l1 + l2) delta - 2c; vanishes for phi-paired principal curvatures
    of any Hopf hypersurface."""
    return 2.0 * lambda1 * lambda2 - (lambda1 + lambda2) * delta - 2.0 * c


def curvature_report(state: ShapeState, sf: SpaceFormParams, x) -> CurvatureReport:
    """Bundle Ric, kappa, |H| and |phi x|^2 for one unit direction."""
    x = _as_unit(x)
    phix = state.frame.phi(x)
    return CurvatureReport(
        ric=ricci_direct(state, sf, x),
        kappa=normal_curvature(state, x),
        mean_norm=mean_curvature_norm(state),
        phi_norm_sq=float(phix @ phix),
    )
