"""Structure equations of 2-Hopf hypersurfaces along the phi X direction.

With the shape operator written as A xi = alpha xi + beta X, A X = gamma X +
beta xi, A phi X = mu phi X (beta nonzero), the frame functions evolve along
an integral curve of phi X by

    d alpha / ds = beta (alpha + gamma - 3 mu),
    d beta  / ds = beta^2 + gamma^2 + mu (alpha - 2 gamma) + c,
    d gamma / ds = (gamma - mu)(gamma^2 - alpha gamma - c) / beta
                   + beta (2 gamma + mu).

Integration runs exclusively in constant-alpha mode: mu is eliminated by
mu = (alpha + gamma)/3, which closes the system in (beta, gamma) and makes
the first right-hand side vanish by construction.  Without constant alpha,
mu is a free function and the system is underdetermined.

The connection scalars chi1, chi2 of the frame are recovered along a
trajectory from the compatibility relations

    chi1 = (d beta/ds + gamma^2 - 3 mu^2 - 2c) / beta,
    chi2 = gamma + (3 e3 mu - e3 gamma) / beta     (e3 mu = (d gamma/ds)/3),

and three residual checks are reported per sample: the gamma-evolution
relation (cd2), the chi-compatibility relation (cd6), and the second-order
relation (ga1) whose e3 chi1 term is taken by finite differences.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import SingularityError
from .geometry import ShapeState, shape_state_n2

BETA_FLOOR = 1e-8
OVERFLOW_GUARD = 1e8
_CONSTRAINT_TOL = 1e-12

CSV_HEADER = "s,alpha,beta,gamma,mu,chi1,chi2,res_cd2,res_cd6,res_ga1"


@dataclass(frozen=True)
class TwoHopfState:
    """Frame scalars (alpha, beta, gamma, mu) at arc parameter s along phi X."""

    alpha: float
    beta: float
    gamma: float
    mu: float
    s: float = 0.0

    @classmethod
    def constant_alpha(cls, alpha: float, beta: float, gamma: float,
                       s: float = 0.0) -> "TwoHopfState":
        """State on the constant-alpha slice: mu = (alpha + gamma)/3."""
        return cls(alpha=alpha, beta=beta, gamma=gamma,
                   mu=(alpha + gamma) / 3.0, s=s)

    def constraint_residual(self) -> float:
        return self.alpha + self.gamma - 3.0 * self.mu


@dataclass(frozen=True)
class TrajectoryRow:
    """One exported sample: state scalars, recovered chis, residuals."""

    s: float
    alpha: float
    beta: float
    gamma: float
    mu: float
    chi1: float
    chi2: float
    res_cd2: float
    res_cd6: float
    res_ga1: float


@dataclass(frozen=True)
class Trajectory:
    step: float
    states: tuple[TwoHopfState, ...]
    rows: tuple[TrajectoryRow, ...]
    residual_summary: dict
    stop_reason: str  # 'completed' | 'beta_floor' | 'overflow'

    @property
    def samples(self) -> list[tuple[float, TwoHopfState]]:
        return [(st.s, st) for st in self.states]


class TwoHopfSystem:
    """The structure ODE for a fixed ambient curvature constant c != 0."""

    def __init__(self, c: float, beta_floor: float = BETA_FLOOR):
        if c == 0:
            raise ValueError("curvature constant c must be nonzero")
        self.c = float(c)
        self.beta_floor = beta_floor

    def rhs(self, state: TwoHopfState) -> tuple[float, float, float]:
        """(d alpha/ds, d beta/ds, d gamma/ds), exactly as printed."""
        a, b, g, m = state.alpha, state.beta, state.gamma, state.mu
        if abs(b) < self.beta_floor:
            raise SingularityError(f"|beta| = {abs(b)} below floor {self.beta_floor}")
        d_alpha = b * (a + g - 3.0 * m)
        d_beta = b * b + g * g + m * (a - 2.0 * g) + self.c
        d_gamma = (g - m) * (g * g - a * g - self.c) / b + b * (2.0 * g + m)
        return d_alpha, d_beta, d_gamma

    def recovered_chis(self, state: TwoHopfState) -> tuple[float, float]:
        """(chi1, chi2) from the compatibility relations in constant-alpha mode."""
        _, d_beta, d_gamma = self.rhs(state)
        b, g, m = state.beta, state.gamma, state.mu
        chi1 = (d_beta + g * g - 3.0 * m * m - 2.0 * self.c) / b
        e3_mu = d_gamma / 3.0
        chi2 = g + (3.0 * e3_mu - d_gamma) / b
        return chi1, chi2

    def codazzi_residuals(self, state: TwoHopfState, chi1: float | None = None,
                          chi2: float | None = None,
                          e3_chi1: float | None = None) -> dict:
        """Residuals of the scalar structure equations at one state.

        res_cd2: d gamma/ds - [(gamma - mu) chi1 + beta (gamma + 2 mu)]
        res_cd6: beta chi1 + (mu - gamma) chi2 - [beta^2 + gamma^2 - 2 gamma mu - c]
        res_ga1: e3 chi1 - 2 mu gamma - chi1^2 - (gamma + mu) chi2 - 4c
                 (nan unless a finite-difference e3 chi1 is supplied)
        """
        rec1, rec2 = self.recovered_chis(state)
        if chi1 is None:
            chi1 = rec1
        if chi2 is None:
            chi2 = rec2
        b, g, m = state.beta, state.gamma, state.mu
        _, _, d_gamma = self.rhs(state)
        res_cd2 = d_gamma - ((g - m) * chi1 + b * (g + 2.0 * m))
        res_cd6 = b * chi1 + (m - g) * chi2 - (b * b + g * g - 2.0 * g * m - self.c)
        if e3_chi1 is None:
            res_ga1 = math.nan
        else:
            res_ga1 = e3_chi1 - 2.0 * m * g - chi1 * chi1 - (g + m) * chi2 - 4.0 * self.c
        return {"res_cd2": res_cd2, "res_cd6": res_cd6, "res_ga1": res_ga1}

    def stationarity_residual(self, state: TwoHopfState) -> float:
        """(gamma - mu)(2 gamma^2 - 3 gamma mu - c) + beta^2 (2 gamma + mu).

        This is beta times d gamma/ds with alpha = 3 mu - gamma substituted;
        it vanishes exactly on the constant-coefficient solutions.  The sign
        of 2 gamma + mu discriminates the tangent-profile branch (where it is
        zero) from the constant-beta branch.
        """
        b, g, m = state.beta, state.gamma, state.mu
        return (g - m) * (2.0 * g * g - 3.0 * g * m - self.c) + b * b * (2.0 * g + m)

    def integrate(self, initial: TwoHopfState, s_span: tuple[float, float],
                  step: float, overflow_guard: float = OVERFLOW_GUARD) -> Trajectory:
        """Fixed-step RK4 trajectory of (beta, gamma) in constant-alpha mode.

        mu is re-enforced as (alpha + gamma)/3 after every step, never
        integrated.  Stops early (with a flagged reason) if beta reaches the
        floor or the state exceeds the overflow guard.  The step is adjusted
        to divide the span evenly so that samples are uniformly spaced.
        """
        s0, s1 = s_span
        if step <= 0:
            raise ValueError("step must be positive")
        if s1 <= s0:
            raise ValueError("span must satisfy s1 > s0")
        if abs(initial.beta) < self.beta_floor:
            raise SingularityError("initial beta must be nonzero (non-Hopf everywhere)")
        scale = max(1.0, abs(initial.alpha), abs(initial.gamma))
        if abs(initial.constraint_residual()) > _CONSTRAINT_TOL * scale:
            raise ValueError(
                "integration requires the constant-alpha slice mu = (alpha + gamma)/3; "
                "build the state with TwoHopfState.constant_alpha")

        n = max(1, round((s1 - s0) / step))
        h = (s1 - s0) / n
        alpha = initial.alpha
        b, g = initial.beta, initial.gamma
        states = [TwoHopfState.constant_alpha(alpha, b, g, s=s0)]
        stop_reason = "completed"

        def f(bv: float, gv: float) -> tuple[float, float]:
            mv = (alpha + gv) / 3.0
            if abs(bv) < self.beta_floor:
                raise SingularityError(f"|beta| = {abs(bv)} below floor {self.beta_floor}")
            db = bv * bv + gv * gv + mv * (alpha - 2.0 * gv) + self.c
            dg = (gv - mv) * (gv * gv - alpha * gv - self.c) / bv + bv * (2.0 * gv + mv)
            return db, dg

        for i in range(n):
            try:
                k1 = f(b, g)
                k2 = f(b + 0.5 * h * k1[0], g + 0.5 * h * k1[1])
                k3 = f(b + 0.5 * h * k2[0], g + 0.5 * h * k2[1])
                k4 = f(b + h * k3[0], g + h * k3[1])
                b_new = b + h / 6.0 * (k1[0] + 2.0 * k2[0] + 2.0 * k3[0] + k4[0])
                g_new = g + h / 6.0 * (k1[1] + 2.0 * k2[1] + 2.0 * k3[1] + k4[1])
            except (SingularityError, OverflowError) as exc:
                stop_reason = "beta_floor" if isinstance(exc, SingularityError) else "overflow"
                break
            if not (math.isfinite(b_new) and math.isfinite(g_new)) or \
                    max(abs(b_new), abs(g_new)) > overflow_guard:
                stop_reason = "overflow"
                break
            if abs(b_new) < self.beta_floor:
                stop_reason = "beta_floor"
                break
            b, g = b_new, g_new
            states.append(TwoHopfState.constant_alpha(alpha, b, g, s=s0 + (i + 1) * h))

        rows = self._build_rows(states, h)
        summary = _summarize(rows)
        return Trajectory(step=h, states=tuple(states), rows=tuple(rows),
                          residual_summary=summary, stop_reason=stop_reason)

    def _build_rows(self, states, h: float) -> list[TrajectoryRow]:
        chis = [self.recovered_chis(st) for st in states]
        chi1s = [c1 for c1, _ in chis]
        n = len(states)
        rows = []
        for i, st in enumerate(states):
            # e3 chi1 by centered differences; endpoints carry no estimate
            if 0 < i < n - 1:
                e3c1 = (chi1s[i + 1] - chi1s[i - 1]) / (2.0 * h)
            else:
                e3c1 = math.nan
            chi1, chi2 = chis[i]
            res = self.codazzi_residuals(st, chi1=chi1, chi2=chi2, e3_chi1=e3c1)
            rows.append(TrajectoryRow(
                s=st.s, alpha=st.alpha, beta=st.beta, gamma=st.gamma, mu=st.mu,
                chi1=chi1, chi2=chi2, **res))
        return rows


def _summarize(rows) -> dict:
    def peak(values):
        vals = [abs(v) for v in values if not math.isnan(v)]
        return max(vals) if vals else math.nan

    return {
        "res_cd2": peak([r.res_cd2 for r in rows]),
        "res_cd6": peak([r.res_cd6 for r in rows]),
        "res_ga1": peak([r.res_ga1 for r in rows]),
    }


def sample_shape_state(state: TwoHopfState) -> ShapeState:
    """Shape operator [[alpha, beta, 0], [beta, gamma, 0], [0, 0, mu]] of a sample."""
    return shape_state_n2(np.array([[state.alpha, state.beta, 0.0],
                                    [state.beta, state.gamma, 0.0],
                                    [0.0, 0.0, state.mu]]))


def trajectory_to_csv(traj: Trajectory, fmt: str = "{:.15g}") -> str:
    lines = [CSV_HEADER]
    for r in traj.rows:
        lines.append(",".join(fmt.format(v) for v in
                              (r.s, r.alpha, r.beta, r.gamma, r.mu, r.chi1, r.chi2,
                               r.res_cd2, r.res_cd6, r.res_ga1)))
    return "\n".join(lines) + "\n"


def trajectory_to_json(traj: Trajectory) -> dict:
    return {
        "step": traj.step,
        "stop_reason": traj.stop_reason,
        "residual_summary": {k: (None if math.isnan(v) else v)
                             for k, v in traj.residual_summary.items()},
        "samples": [
            {"s": r.s, "alpha": r.alpha, "beta": r.beta, "gamma": r.gamma,
             "mu": r.mu, "chi1": r.chi1, "chi2": r.chi2, "res_cd2": r.res_cd2,
             "res_cd6": r.res_cd6,
             "res_ga1": None if math.isnan(r.res_ga1) else r.res_ga1}
            for r in traj.rows
        ],
    }
