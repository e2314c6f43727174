"""Bracketed root-finding for the transcendental radius equations.

Three scaled equations in x = sqrt(|c|) r determine the radii at which the
catalog families achieve the Ricci bound:

    Thm11_CP2:  3 cot(2x) = cot(x)            on (0, pi/2)   -> x = pi/6
    Thm12_CP2:  2 tan(2x) = 3 tan(x) + cot(x) on (0, pi/4)   -> x = pi/6
    Thm11_CH2:  6 tanh(2x) = tanh(x) + coth(x) on (0, inf)   -> x = ln(2+sqrt(3))/4

Each equation has a single sign change over its legal domain.  The solver
bisects to 1e-6 and then polishes with Newton steps using the analytic
derivative; brackets sit just inside the domain endpoints with a 1e-8 pole
standoff (upper bracket 5.0 for the hyperbolic equation).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import BracketingError, DomainError

_STANDOFF = 1e-8


def _cot(x: float) -> float:
    s = math.sin(x)
    if abs(s) < 1e-15:
        raise DomainError(f"cot pole at {x}")
    return math.cos(x) / s


def _tan(x: float) -> float:
    c = math.cos(x)
    if abs(c) < 1e-15:
        raise DomainError(f"tan pole at {x}")
    return math.sin(x) / c


def _csc2(x: float) -> float:
    s = math.sin(x)
    return 1.0 / (s * s)


def _sec2(x: float) -> float:
    c = math.cos(x)
    return 1.0 / (c * c)


def _coth(x: float) -> float:
    if x == 0:
        raise DomainError("coth pole at 0")
    return math.cosh(x) / math.sinh(x)


def _csch2(x: float) -> float:
    s = math.sinh(x)
    return 1.0 / (s * s)


def _sech2(x: float) -> float:
    c = math.cosh(x)
    return 1.0 / (c * c)


class _Equation:
    def __init__(self, f, fprime, domain, default_hi, c_sign):
        self.f = f
        self.fprime = fprime
        self.domain = domain
        self.default_hi = default_hi
        self.c_sign = c_sign


EQUATIONS: dict[str, _Equation] = {
    "Thm11_CP2": _Equation(
        f=lambda x: 3.0 * _cot(2.0 * x) - _cot(x),
        fprime=lambda x: -6.0 * _csc2(2.0 * x) + _csc2(x),
        domain=(0.0, math.pi / 2.0),
        default_hi=math.pi / 2.0,
        c_sign=+1,
    ),
    "Thm12_CP2": _Equation(
        f=lambda x: 2.0 * _tan(2.0 * x) - 3.0 * _tan(x) - _cot(x),
        fprime=lambda x: 4.0 * _sec2(2.0 * x) - 3.0 * _sec2(x) + _csc2(x),
        domain=(0.0, math.pi / 4.0),
        default_hi=math.pi / 4.0,
        c_sign=+1,
    ),
    "Thm11_CH2": _Equation(
        f=lambda x: 6.0 * math.tanh(2.0 * x) - math.tanh(x) - _coth(x),
        fprime=lambda x: 12.0 * _sech2(2.0 * x) - _sech2(x) + _csch2(x),
        domain=(0.0, math.inf),
        default_hi=5.0,  # residual is monotone-positive past the root (scan-checked)
        c_sign=-1,
    ),
}


@dataclass(frozen=True)
class RootProblem:
    """One radius equation with its curvature constant and optional bracket.

    The bracket, when given, is in the scaled variable x = sqrt(|c|) r.
    """

    equation: str
    c: float
    bracket: tuple[float, float] | None = None

    def __post_init__(self):
        if self.equation not in EQUATIONS:
            raise DomainError(
                f"unknown equation {self.equation!r}; choose from {sorted(EQUATIONS)}")
        eq = EQUATIONS[self.equation]
        if eq.c_sign * self.c <= 0:
            raise DomainError(
                f"{self.equation} requires c {'>' if eq.c_sign > 0 else '<'} 0, got {self.c}")
        if self.bracket is not None:
            lo, hi = self.bracket
            dlo, dhi = eq.domain
            if not (dlo < lo < hi < dhi or (math.isinf(dhi) and dlo < lo < hi)):
                raise DomainError(f"bracket {self.bracket} outside domain {eq.domain}")


def _scaled_bracket(problem: RootProblem) -> tuple[float, float]:
    if problem.bracket is not None:
        return problem.bracket
    eq = EQUATIONS[problem.equation]
    return (_STANDOFF, eq.default_hi - (_STANDOFF if math.isfinite(eq.domain[1]) else 0.0))


def residual(problem: RootProblem, r: float) -> float:
    """Left minus right side of the scaled equation at x = sqrt(|c|) r."""
    eq = EQUATIONS[problem.equation]
    x = math.sqrt(abs(problem.c)) * r
    lo, hi = eq.domain
    if not (lo < x < hi):
        raise DomainError(f"scaled radius {x} outside domain {eq.domain} of {problem.equation}")
    return eq.f(x)


def bisect_newton(f, fprime, lo: float, hi: float, tol: float,
                  bisect_width: float = 1e-6, max_newton: int = 60) -> float:
    """Bisection to a coarse width, then Newton polish on a scalar function."""
    flo, fhi = f(lo), f(hi)
    if flo == 0.0:
        return lo
    if fhi == 0.0:
        return hi
    if (flo > 0) == (fhi > 0):
        raise BracketingError(f"no sign change over [{lo}, {hi}]: f = ({flo}, {fhi})")
    while hi - lo > bisect_width:
        mid = 0.5 * (lo + hi)
        fm = f(mid)
        if fm == 0.0:
            return mid
        if (fm > 0) == (flo > 0):
            lo, flo = mid, fm
        else:
            hi, fhi = mid, fm
    x = 0.5 * (lo + hi)
    for _ in range(max_newton):
        fx = f(x)
        if abs(fx) <= tol:
            return x
        step = fx / fprime(x)
        x_new = x - step
        if not (lo - bisect_width <= x_new <= hi + bisect_width):
            x_new = 0.5 * (lo + hi)  # fall back inside the bracket
        if x_new == x:
            return x
        x = x_new
    if abs(f(x)) <= tol:
        return x
    raise BracketingError(f"Newton polish did not reach |residual| <= {tol}")


def solve(problem: RootProblem, tol: float = 1e-13) -> float:
    """Radius r with |residual(r)| <= tol, via bisection plus Newton polish."""
    if tol <= 0:
        raise ValueError("tol must be positive")
    eq = EQUATIONS[problem.equation]
    lo, hi = _scaled_bracket(problem)
    x = bisect_newton(eq.f, eq.fprime, lo, hi, tol)
    return x / math.sqrt(abs(problem.c))


def sign_change_count(problem: RootProblem, samples: int = 1000) -> int:
    """Number of sign changes of the scaled residual over the legal domain."""
    lo, hi = _scaled_bracket(problem)
    eq = EQUATIONS[problem.equation]
    count = 0
    prev = eq.f(lo)
    for i in range(1, samples + 1):
        x = lo + (hi - lo) * i / samples
        val = eq.f(x)
        if val == 0.0:
            count += 1
            prev = -prev
            continue
        if (val > 0) != (prev > 0):
            count += 1
        prev = val
    return count
