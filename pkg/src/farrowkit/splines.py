"""Per-segment polynomial coefficients for the four interpolator kinds.

Each resampler output is an evaluation of a short polynomial segment on
t in [-1, 0], where t = 0 sits at sample s_{n-1} and t = -1 at s_{n-2}.
Four segment constructions are supported:

* ``LP3``  -- cubic Lagrange through the four samples at nodes {1, 0, -1, -2}
* ``HS3``  -- cubic Hermite matching values and first derivatives at {0, -1}
* ``HS5``  -- quintic Hermite: four values plus first derivatives at {0, -1}
* ``HS7``  -- septic Hermite: four values plus first and second derivatives

Every kind has two routes to its coefficients: a hand-expanded closed form
(the multiplier-minimized factorization, see ``constant_multiplier_set``)
and a generic dense solve of the defining constraint system.  The solve is
the in-repo oracle; the closed forms are what the streaming engine runs.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

__all__ = [
    "InterpolatorKind",
    "SampleWindow",
    "SplineCoefficients",
    "constant_multiplier_set",
    "eval_horner",
    "hermite3_coeffs",
    "hermite5_coeffs",
    "hermite7_coeffs",
    "lagrange3_coeffs",
    "segment_coeffs",
    "solve_constraint_system",
]


class InterpolatorKind(enum.Enum):
    """Which polynomial segment construction a resampler runs."""

    LP3 = "lp3"
    HS3 = "hs3"
    HS5 = "hs5"
    HS7 = "hs7"

    @property
    def order(self) -> int:
        """Polynomial degree of one segment."""
        return {"lp3": 3, "hs3": 3, "hs5": 5, "hs7": 7}[self.value]

    @property
    def uses_first_derivative(self) -> bool:
        return self is not InterpolatorKind.LP3

    @property
    def uses_second_derivative(self) -> bool:
        return self is InterpolatorKind.HS7


@dataclass(frozen=True)
class SampleWindow:
    """The signal taps and derivative estimates feeding one segment.

    ``s_n`` .. ``s_nm3`` are four consecutive signal amplitudes (newest
    first); ``d1_*`` / ``d2_*`` are first/second-derivative estimates at
    the two interior taps, in amplitude per sample (squared).  Fields a
    given kind does not use may hold any finite value and never affect
    that kind's output.
    """

    s_n: float = 0.0
    s_nm1: float = 0.0
    s_nm2: float = 0.0
    s_nm3: float = 0.0
    d1_nm1: float = 0.0
    d1_nm2: float = 0.0
    d2_nm1: float = 0.0
    d2_nm2: float = 0.0


@dataclass(frozen=True)
class SplineCoefficients:
    """Polynomial coefficients a_0..a_N for one segment on t in [-1, 0]."""

    order: int
    a: tuple[float, ...]

    def __post_init__(self) -> None:
        if len(self.a) != self.order + 1:
            raise ValueError(
                f"need {self.order + 1} coefficients for order {self.order}, "
                f"got {len(self.a)}"
            )


def eval_horner(coeffs: SplineCoefficients, t: float) -> float:
    """Evaluate a_0 + t(a_1 + t(a_2 + ...)) with exactly N multiplies by t.

    The segment is defined on t in [-1, 0]; evaluation elsewhere is
    permitted but extrapolates.
    """
    a = coeffs.a
    acc = a[-1]
    for c in reversed(a[:-1]):
        acc = acc * t + c
    return acc


def hermite3_coeffs(w: SampleWindow) -> SplineCoefficients:
    """Cubic Hermite segment: values and slopes matched at t = 0 and t = -1.

    The expanded form needs only multiplications by 2 and 3.
    """
    a0 = w.s_nm1
    a1 = w.d1_nm1
    a2 = 3.0 * (w.s_nm2 - w.s_nm1) + 2.0 * w.d1_nm1 + w.d1_nm2
    a3 = 2.0 * (w.s_nm2 - w.s_nm1) + w.d1_nm1 + w.d1_nm2
    return SplineCoefficients(3, (a0, a1, a2, a3))


def hermite5_coeffs(w: SampleWindow) -> SplineCoefficients:
    """Quintic Hermite segment (four values, two slopes), 7-constant form."""
    a0 = w.s_nm1
    a1 = w.d1_nm1
    a2 = (
        (2.0 * w.s_n + w.s_nm3) / 12.0
        + (5.0 * w.s_nm2 + 3.0 * a1) / 2.0
        - 11.0 * a0 / 4.0
        + w.d1_nm2
    )
    a3 = (
        (5.0 * w.s_n + w.s_nm3) / 12.0
        - (3.0 * a0 - w.s_nm2) / 4.0
        - (a1 - w.d1_nm2) / 2.0
    )
    a4 = (w.s_n + w.s_nm2) / 2.0 - a0 - a2
    a5 = (w.s_n - w.s_nm2) / 2.0 - a1 - a3
    return SplineCoefficients(5, (a0, a1, a2, a3, a4, a5))


def hermite7_coeffs(w: SampleWindow) -> SplineCoefficients:
    """Septic Hermite segment (values, slopes, curvatures), 18-constant form."""
    a0 = w.s_nm1
    a1 = w.d1_nm1
    a2 = w.d2_nm1 / 2.0
    a3 = (207.0 * a0 + w.s_nm3 + 2.0 * w.s_n) / 24.0 - (
        35.0 * w.s_nm2
        + 21.0 * a1
        + 14.0 * w.d1_nm2
        - 5.0 * w.d2_nm1
        + 2.0 * w.d2_nm2
    ) / 4.0
    a5 = (
        3.0 * (w.s_n + 15.0 * w.s_nm2) / 8.0
        - 6.0 * a0
        + 3.0 * a1
        + (9.0 * w.d1_nm2 + w.d2_nm2) / 4.0
        - w.d2_nm1
    )
    a6 = (
        (5.0 * w.s_n + 219.0 * w.s_nm2 - 2.0 * w.s_nm3) / 24.0
        + (-37.0 * a0 + 18.0 * a1 + 17.0 * w.d1_nm2 + 3.0 * w.d2_nm2) / 4.0
        - w.d2_nm1
    )
    a4 = (w.s_n + w.s_nm2) / 2.0 - a0 - a2 - a6
    a7 = (
        (w.s_n - w.s_nm3) / 24.0
        - 21.0 * (a0 - w.s_nm2) / 8.0
        + (5.0 * (a1 + w.d1_nm2) - w.d2_nm1 + w.d2_nm2) / 4.0
    )
    return SplineCoefficients(7, (a0, a1, a2, a3, a4, a5, a6, a7))


def lagrange3_coeffs(w: SampleWindow) -> SplineCoefficients:
    """Cubic through the four samples at nodes {1, 0, -1, -2}; no slope data."""
    a0 = w.s_nm1
    a1 = w.s_n / 3.0 + w.s_nm1 / 2.0 - w.s_nm2 + w.s_nm3 / 6.0
    a2 = w.s_n / 2.0 - w.s_nm1 + w.s_nm2 / 2.0
    a3 = w.s_n / 6.0 - w.s_nm1 / 2.0 + w.s_nm2 / 2.0 - w.s_nm3 / 6.0
    return SplineCoefficients(3, (a0, a1, a2, a3))


_CLOSED_FORMS = {
    InterpolatorKind.LP3: lagrange3_coeffs,
    InterpolatorKind.HS3: hermite3_coeffs,
    InterpolatorKind.HS5: hermite5_coeffs,
    InterpolatorKind.HS7: hermite7_coeffs,
}


def segment_coeffs(kind: InterpolatorKind, w: SampleWindow) -> SplineCoefficients:
    """Closed-form coefficients for ``kind`` (the engine's fast path)."""
    return _CLOSED_FORMS[kind](w)


# Constraint rows per kind: (derivative order, node t, window field).
_CONSTRAINTS = {
    InterpolatorKind.LP3: (
        (0, 1.0, "s_n"),
        (0, 0.0, "s_nm1"),
        (0, -1.0, "s_nm2"),
        (0, -2.0, "s_nm3"),
    ),
    InterpolatorKind.HS3: (
        (0, 0.0, "s_nm1"),
        (0, -1.0, "s_nm2"),
        (1, 0.0, "d1_nm1"),
        (1, -1.0, "d1_nm2"),
    ),
    InterpolatorKind.HS5: (
        (0, 1.0, "s_n"),
        (0, 0.0, "s_nm1"),
        (0, -1.0, "s_nm2"),
        (0, -2.0, "s_nm3"),
        (1, 0.0, "d1_nm1"),
        (1, -1.0, "d1_nm2"),
    ),
    InterpolatorKind.HS7: (
        (0, 1.0, "s_n"),
        (0, 0.0, "s_nm1"),
        (0, -1.0, "s_nm2"),
        (0, -2.0, "s_nm3"),
        (1, 0.0, "d1_nm1"),
        (1, -1.0, "d1_nm2"),
        (2, 0.0, "d2_nm1"),
        (2, -1.0, "d2_nm2"),
    ),
}


def constraint_matrix(kind: InterpolatorKind) -> np.ndarray:
    """Dense matrix of the kind's defining system (rows follow _CONSTRAINTS)."""
    n = kind.order + 1
    rows = _CONSTRAINTS[kind]
    m = np.zeros((n, n))
    for i, (deriv, node, _) in enumerate(rows):
        for j in range(deriv, n):
            # d^deriv/dt^deriv of t^j evaluated at the node
            fac = math.perm(j, deriv)
            m[i, j] = fac * node ** (j - deriv)
    return m


def solve_constraint_system(
    kind: InterpolatorKind, w: SampleWindow
) -> SplineCoefficients:
    """Coefficients via a dense partial-pivot solve of the defining system.

    This is the authoritative oracle the closed forms are checked against;
    all four systems are nonsingular by construction, so finite input
    always yields finite coefficients.
    """
    rows = _CONSTRAINTS[kind]
    rhs = np.array([getattr(w, field) for _, _, field in rows])
    a = np.linalg.solve(constraint_matrix(kind), rhs)
    return SplineCoefficients(kind.order, tuple(float(v) for v in a))


_MULTIPLIER_SETS = {
    InterpolatorKind.HS3: frozenset(Fraction(v) for v in (2, 3)),
    InterpolatorKind.HS5: frozenset(
        Fraction(*v) for v in ((1, 12), (1, 4), (1, 2), (2, 1), (3, 1), (5, 1), (11, 1))
    ),
    InterpolatorKind.HS7: frozenset(
        Fraction(*v)
        for v in (
            (1, 24),
            (1, 8),
            (1, 4),
            (1, 2),
            (2, 1),
            (3, 1),
            (5, 1),
            (6, 1),
            (9, 1),
            (14, 1),
            (15, 1),
            (17, 1),
            (18, 1),
            (21, 1),
            (35, 1),
            (37, 1),
            (207, 1),
            (219, 1),
        )
    ),
}


def constant_multiplier_set(kind: InterpolatorKind) -> frozenset[Fraction]:
    """Distinct rational constants appearing in the kind's closed form.

    For the Hermite kinds these are the hardware multiplier counts the
    factorizations were reduced to (2 for HS3, 7 for HS5, 18 for HS7).
    LP3 is reported from its own expanded form.
    """
    if kind in _MULTIPLIER_SETS:
        return _MULTIPLIER_SETS[kind]
    # LP3: denominators of the barycentric expansion above
    return frozenset((Fraction(1, 2), Fraction(1, 3), Fraction(1, 6)))
