"""Model hypersurfaces of CP^2(4c) and CH^2(4c) with closed-form shape operators.

The catalog covers the six Hopf families with constant principal curvatures
(geodesic spheres and tubes in CP^2, horosphere / spheres / tubes in CH^2)
plus three non-Hopf families: the minimal ruled hypersurfaces, the
equidistant family of the Lohnherr hypersurface W^3 in CH^2, and the 2-Hopf
family in CP^2 whose off-diagonal entry follows a tangent profile.  All
matrices are written in the adapted frame (xi, e2, e3 = phi e2).

Family identifiers are the stable strings used by the CLI and JSON reports.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .bound import ricci_upper_bound
from .errors import DomainError
from .geometry import (
    DEFAULT_TOL,
    ShapeState,
    SpaceFormParams,
    hopf_relation_residual,
    shape_state_n2,
)

FAMILIES = (
    "CP2_A1_sphere",
    "CP2_B_tube",
    "CH2_A0_horosphere",
    "CH2_A10_sphere",
    "CH2_A11_tube",
    "CH2_B_tube",
    "RuledMinimal",
    "LohnherrEquidistant",
    "TanProfile2Hopf",
)

HOPF_FAMILIES = FAMILIES[:6]

_POLE_TOL = 1e-12

_DIRECTIONS = {
    "xi": np.array([1.0, 0.0, 0.0]),
    "e2": np.array([0.0, 1.0, 0.0]),
    "e3": np.array([0.0, 0.0, 1.0]),
}


@dataclass(frozen=True)
class Curvature:
    """One principal curvature: value, multiplicity, and eigendirection type."""

    name: str
    value: float
    multiplicity: int
    phi_type: str  # 'reeb' (xi), 'e2'/'e3' (a phi-pair), or 'phi-plane' (mult 2)


@dataclass(frozen=True)
class PrincipalSpectrum:
    family: str
    params: dict
    c: float
    curvatures: tuple[Curvature, ...]

    def by_name(self, name: str) -> float:
        for cur in self.curvatures:
            if cur.name == name:
                return cur.value
        raise KeyError(name)


@dataclass(frozen=True)
class FamilyCheck:
    """Trace-condition residuals of one family at one parameter.

    ``condition_residual`` is the smallest-magnitude candidate residual;
    ``equality_direction`` names the frame vector achieving equality of the
    Ricci bound when that residual vanishes (confirmed through the bound
    itself), and is None otherwise.
    """

    family: str
    param: object
    condition_residual: float
    equality_direction: str | None
    residuals: dict = field(default_factory=dict)


def _require(cond: bool, msg: str):
    if not cond:
        raise DomainError(msg)


def _check_c(family: str, c: float):
    if family.startswith("CP2") or family == "TanProfile2Hopf":
        _require(c > 0, f"{family} requires c > 0, got {c}")
    elif family.startswith("CH2") or family == "LohnherrEquidistant":
        _require(c < 0, f"{family} requires c < 0, got {c}")
    else:
        _require(c != 0, f"{family} requires c != 0")


def _cot(x: float) -> float:
    s = math.sin(x)
    if abs(s) < _POLE_TOL:
        raise DomainError(f"cot pole at argument {x}")
    return math.cos(x) / s


def _tan(x: float) -> float:
    co = math.cos(x)
    if abs(co) < _POLE_TOL:
        raise DomainError(f"tan pole at argument {x}")
    return math.sin(x) / co


def _coth(x: float) -> float:
    if x == 0:
        raise DomainError("coth pole at 0")
    return math.cosh(x) / math.sinh(x)


def lohnherr_entries(u: float, c: float) -> tuple[float, float, float, float]:
    """(alpha, beta, gamma, mu) of the Lohnherr equidistant matrix at parameter u.

    A = sqrt(-c) [[3u - u^3, (1-u^2)^{3/2}, 0], [(1-u^2)^{3/2}, u^3, 0], [0, 0, u]]
    for -1 < u < 1; u = 0 is the ruled minimal hypersurface W^3 itself.
    """
    _require(c < 0, f"LohnherrEquidistant requires c < 0, got {c}")
    _require(-1.0 < u < 1.0, f"Lohnherr parameter must satisfy -1 < u < 1, got {u}")
    k = math.sqrt(-c)
    return (k * (3.0 * u - u ** 3), k * (1.0 - u * u) ** 1.5, k * u ** 3, k * u)


def tan_profile_beta(s: float, d: float, c: float) -> float:
    """Off-diagonal entry sqrt(27c/8) * tan(sqrt(27c/8) s + d) of the 2-Hopf
    tangent-profile family (c > 0)."""
    _require(c > 0, f"TanProfile2Hopf requires c > 0, got {c}")
    w = math.sqrt(27.0 * c / 8.0)
    return w * _tan(w * s + d)


def tan_profile_entries(s: float, d: float, c: float) -> tuple[float, float, float, float]:
    """(alpha, beta, gamma, mu) = (-7 sqrt(c/8), beta(s), sqrt(c/8), -sqrt(c/2))."""
    beta = tan_profile_beta(s, d, c)
    g = math.sqrt(c / 8.0)
    return (-7.0 * g, beta, g, -math.sqrt(c / 2.0))


def _radius_range(family: str, c: float) -> tuple[float, float]:
    if family == "CP2_A1_sphere":
        return (0.0, math.pi / (2.0 * math.sqrt(c)))
    if family == "CP2_B_tube":
        return (0.0, math.pi / (4.0 * math.sqrt(c)))
    return (0.0, math.inf)


def _hopf_curvatures(family: str, r: float | None, c: float) -> tuple[Curvature, ...]:
    k = math.sqrt(abs(c))
    if family == "CH2_A0_horosphere":
        return (Curvature("delta", 2.0 * k, 1, "reeb"),
                Curvature("lambda", k, 2, "phi-plane"))
    lo, hi = _radius_range(family, c)
    _require(r is not None, f"{family} requires a radius parameter")
    _require(lo < r < hi, f"radius {r} outside ({lo}, {hi}) for {family}")
    x = k * r
    if family == "CP2_A1_sphere":
        return (Curvature("delta", 2.0 * k * _cot(2.0 * x), 1, "reeb"),
                Curvature("lambda", k * _cot(x), 2, "phi-plane"))
    if family == "CP2_B_tube":
        return (Curvature("delta", 2.0 * k * _tan(2.0 * x), 1, "reeb"),
                Curvature("lambda1", -k * _cot(x), 1, "e2"),
                Curvature("lambda2", k * _tan(x), 1, "e3"))
    if family == "CH2_A10_sphere":
        return (Curvature("delta", 2.0 * k * _coth(2.0 * x), 1, "reeb"),
                Curvature("lambda", k * _coth(x), 2, "phi-plane"))
    if family == "CH2_A11_tube":
        return (Curvature("delta", 2.0 * k * _coth(2.0 * x), 1, "reeb"),
                Curvature("lambda", k * math.tanh(x), 2, "phi-plane"))
    if family == "CH2_B_tube":
        return (Curvature("delta", 2.0 * k * math.tanh(2.0 * x), 1, "reeb"),
                Curvature("lambda1", k * _coth(x), 1, "e2"),
                Curvature("lambda2", k * math.tanh(x), 1, "e3"))
    raise DomainError(f"unknown Hopf family {family!r}")


def _block_eigen(alpha: float, beta: float, gamma: float) -> tuple[float, float]:
    """Eigenvalues of the symmetric 2x2 block [[alpha, beta], [beta, gamma]]."""
    half_tr = (alpha + gamma) / 2.0
    disc = math.hypot((alpha - gamma) / 2.0, beta)
    return half_tr + disc, half_tr - disc


def _norm_params(family: str, param) -> dict:
    if family == "CH2_A0_horosphere":
        _require(param is None, "horosphere takes no parameter")
        return {}
    if family == "TanProfile2Hopf":
        _require(isinstance(param, (tuple, list)) and len(param) == 2,
                 "TanProfile2Hopf takes a parameter pair (s, d)")
        return {"s": float(param[0]), "d": float(param[1])}
    _require(isinstance(param, (int, float)), f"{family} takes one numeric parameter")
    key = {"RuledMinimal": "beta", "LohnherrEquidistant": "u"}.get(family, "r")
    return {key: float(param)}


def spectrum(family: str, param, c: float) -> PrincipalSpectrum:
    """Principal curvatures of a catalog family at one parameter.

    Hopf families return their closed-form spectra; the non-Hopf families
    return mu (on phi X) together with the eigenvalues of the 2x2 block on
    the plane spanned by xi and X.
    """
    _require(family in FAMILIES, f"unknown family {family!r}; choose from {FAMILIES}")
    _check_c(family, c)
    params = _norm_params(family, param)

    if family in HOPF_FAMILIES:
        curv = _hopf_curvatures(family, params.get("r"), c)
        return PrincipalSpectrum(family, params, c, curv)

    if family == "RuledMinimal":
        beta = params["beta"]
        _require(beta != 0, "ruled minimal parameter beta must be nonzero")
        curv = (Curvature("nu_plus", abs(beta), 1, "D-plane"),
                Curvature("nu_minus", -abs(beta), 1, "D-plane"),
                Curvature("mu", 0.0, 1, "e3"))
        return PrincipalSpectrum(family, params, c, curv)

    if family == "LohnherrEquidistant":
        alpha, beta, gamma, mu = lohnherr_entries(params["u"], c)
    else:
        alpha, beta, gamma, mu = tan_profile_entries(params["s"], params["d"], c)
    hi, lo = _block_eigen(alpha, beta, gamma)
    curv = (Curvature("nu_plus", hi, 1, "D-plane"),
            Curvature("nu_minus", lo, 1, "D-plane"),
            Curvature("mu", mu, 1, "e3"))
    return PrincipalSpectrum(family, params, c, curv)


def shape_state(family: str, param, c: float) -> ShapeState:
    """Shape operator of a catalog family as a 3x3 matrix in (xi, e2, e3)."""
    spec = spectrum(family, param, c)
    params = spec.params
    if family in HOPF_FAMILIES:
        delta = spec.by_name("delta")
        if family in ("CP2_B_tube", "CH2_B_tube"):
            diag = (delta, spec.by_name("lambda1"), spec.by_name("lambda2"))
        else:
            lam = spec.by_name("lambda")
            diag = (delta, lam, lam)
        return shape_state_n2(np.diag(diag))
    if family == "RuledMinimal":
        beta = params["beta"]
        alpha = gamma = mu = 0.0
    elif family == "LohnherrEquidistant":
        alpha, beta, gamma, mu = lohnherr_entries(params["u"], c)
    else:
        alpha, beta, gamma, mu = tan_profile_entries(params["s"], params["d"], c)
    return shape_state_n2(np.array([[alpha, beta, 0.0],
                                    [beta, gamma, 0.0],
                                    [0.0, 0.0, mu]]))


def hopf_residual(family: str, param, c: float) -> float:
    """Hopf-relation residual 2 l1 l2 - (l1 + l2) delta - 2c for a Hopf family."""
    spec = spectrum(family, param, c)
    _require(family in HOPF_FAMILIES, f"{family} is not a Hopf family")
    delta = spec.by_name("delta")
    if family in ("CP2_B_tube", "CH2_B_tube"):
        l1, l2 = spec.by_name("lambda1"), spec.by_name("lambda2")
    else:
        l1 = l2 = spec.by_name("lambda")
    return hopf_relation_residual(delta, l1, l2, c)


def _trace_condition_residuals(family: str, param, c: float) -> dict[str, float]:
    """Candidate residuals of the equality trace condition Tr B = 3 mu.

    At xi:  3 delta - (sum of the other two curvatures).
    At a direction U orthogonal to xi with A U = lam U:
            delta + lam' - 3 lam, i.e. delta - (3 lam - lam') for the phi-partner lam'.
    Non-Hopf families carry the off-diagonal block; their condition at e3 is
    alpha + gamma - 3 mu.
    """
    spec = spectrum(family, param, c)
    if family in ("CP2_B_tube", "CH2_B_tube"):
        delta = spec.by_name("delta")
        l1, l2 = spec.by_name("lambda1"), spec.by_name("lambda2")
        return {"xi": 3.0 * delta - (l1 + l2),
                "e2": delta - (3.0 * l1 - l2),
                "e3": delta - (3.0 * l2 - l1)}
    if family in HOPF_FAMILIES:
        delta = spec.by_name("delta")
        lam = spec.by_name("lambda")
        return {"xi": 3.0 * delta - 2.0 * lam, "e3": delta - 2.0 * lam}
    state = shape_state(family, param, c)
    a = state.a_matrix
    return {"e3": float(a[0, 0] + a[1, 1] - 3.0 * a[2, 2])}


def verify_equality_direction(family: str, param, c: float,
                              tol: float = DEFAULT_TOL) -> FamilyCheck:
    """Locate the direction (if any) where a family achieves the Ricci bound.

    Evaluates the trace-condition residuals of the family, and when the
    smallest one vanishes within tol, confirms through the bound itself that
    the named frame direction achieves equality.  For multiplicity-two
    spectra the named direction e3 stands for any unit direction orthogonal
    to xi.
    """
    residuals = _trace_condition_residuals(family, param, c)
    direction = min(residuals, key=lambda k: abs(residuals[k]))
    best = residuals[direction]
    equality_direction = None
    if abs(best) <= tol:
        sf = SpaceFormParams(2, c)
        state = shape_state(family, param, c)
        report = ricci_upper_bound(state, sf, _DIRECTIONS[direction], tol=max(tol, 1e-9))
        if report.equality:
            equality_direction = direction
    return FamilyCheck(family=family, param=param, condition_residual=best,
                       equality_direction=equality_direction, residuals=residuals)
