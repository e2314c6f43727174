"""The Ricci upper bound and its exact equality structure.

For a unit tangent direction x of a real hypersurface in a complex space
form of holomorphic sectional curvature 4c,

    Ric(x) <= ((2n-1)^2 / 8) |H|^2 + kappa_x^2 + c (2n - 2 + 3 |phi x|^2).

The gap has the closed form (Tr A - 4 kappa_x)^2 / 8 + |Ax - kappa_x x|^2,
so the bound is an algebraic identity, never violated.  Equality holds
exactly when, in an orthonormal basis with x last, the shape operator is
block diagonal diag(B, mu) with Tr B = 3 mu; the scalar ingredient is the
elementary bound m*S - m^2 <= (S + m)^2 / 8 with exact defect (S - 3m)^2 / 8.

For n = 2 this specializes to Ric(xi) <= 9/8 |H|^2 + kappa^2 + 2c in the
Reeb direction and Ric(U) <= 9/8 |H|^2 + kappa^2 + 5c for U orthogonal to xi.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .geometry import DEFAULT_TOL, ShapeState, SpaceFormParams, _as_unit, ricci_direct

_SNAP_TOL = 1e-12


@dataclass(frozen=True)
class BoundReport:
    """Outcome of one bound check: value, bound, gap, and equality block data."""

    ric: float
    bound: float
    gap: float
    equality: bool
    mu: float
    traceB: float


def lemma_f(xs) -> float:
    """m*S - m^2 with m the last entry and S the sum of the others.

    Satisfies lemma_f(xs) <= T^2/8 for T = sum(xs), with exact defect
    T^2/8 - lemma_f = (S - 3m)^2 / 8; equality iff S = 3m.  Works for floats
    and exact rationals alike.
    """
    if len(xs) < 3:
        raise ValueError(f"need at least 3 entries (2n - 1 with n >= 2), got {len(xs)}")
    m = xs[-1]
    s = sum(xs[:-1])
    return m * s - m * m


def _basis_with_x_last(dim: int, x: np.ndarray) -> np.ndarray:
    """Orthonormal basis as matrix columns, x last.

    If x is (up to sign) a frame vector the rest of the frame is kept as is;
    otherwise the frame is completed by Gram-Schmidt seeded with the standard
    basis, with x placed last.
    """
    cols = []
    hits = np.flatnonzero(np.abs(np.abs(x) - 1.0) <= _SNAP_TOL)
    if hits.size == 1 and np.max(np.abs(np.delete(x, hits[0]))) <= _SNAP_TOL:
        for j in range(dim):
            if j != hits[0]:
                e = np.zeros(dim)
                e[j] = 1.0
                cols.append(e)
    else:
        for j in range(dim):
            v = np.zeros(dim)
            v[j] = 1.0
            w = v - (v @ x) * x
            for u in cols:
                w -= (w @ u) * u
            nrm = float(np.linalg.norm(w))
            if nrm > 1e-8:
                cols.append(w / nrm)
            if len(cols) == dim - 1:
                break
    cols.append(x)
    return np.column_stack(cols)


def equality_structure(state: ShapeState, x, tol: float = DEFAULT_TOL):
    """Detect the equality block form of the bound at direction x.

    Returns (mu, B) when (i) Ax = mu x within tol and (ii) |Tr B - 3 mu| <= tol,
    where B is the (2n-2)x(2n-2) block of A on the orthogonal complement of x;
    returns None otherwise.
    """
    x = _as_unit(x)
    dim = state.frame.dim
    basis = _basis_with_x_last(dim, x)
    a_rot = basis.T @ state.a_matrix @ basis
    mu = float(a_rot[-1, -1])
    off = a_rot[:-1, -1]
    b_block = a_rot[:-1, :-1]
    if float(np.max(np.abs(off))) > tol:
        return None
    if abs(float(np.trace(b_block)) - 3.0 * mu) > tol:
        return None
    return mu, b_block


def ricci_upper_bound(state: ShapeState, sf: SpaceFormParams, x,
                      tol: float = DEFAULT_TOL) -> BoundReport:
    """Evaluate the Ricci bound at x and detect equality.

    bound = ((2n-1)^2/8) |H|^2 + kappa_x^2 + c (2n - 2 + 3 |phi x|^2).
    Equality is decided by the two block conditions of ``equality_structure``
    (off-column vanishing and Tr B = 3 mu), not by thresholding the gap.
    """
    x = _as_unit(x)
    a = state.a_matrix
    kappa = float(x @ (a @ x))
    phix = state.frame.phi(x)
    trace = float(np.trace(a))
    ric = ricci_direct(state, sf, x)
    bound = (trace * trace / 8.0 + kappa * kappa
             + sf.c * (2 * sf.n - 2 + 3.0 * float(phix @ phix)))
    eq = equality_structure(state, x, tol)
    return BoundReport(
        ric=ric,
        bound=bound,
        gap=bound - ric,
        equality=eq is not None,
        mu=kappa,
        traceB=trace - kappa,
    )
