"""Streaming Farrow resampler: delay-aligned signal path, FIR derivative
pipelines, per-segment coefficients, and an exact rational output clock.

Timing contract
---------------
After the resampler has consumed input samples x[0..n], the current segment
runs between the aligned taps s_{n-2} = x[n-D-3] (t = -1) and
s_{n-1} = x[n-D-2] (t = 0), where D is the differentiator group delay
(0 for LP3).  Output positions within a segment lie in t ∈ (-1, 0], so:

* rate conversion by P/Q emits, per settled input segment, the clock ticks
  t = -1 + k/P it contains (all of k = 1..P when Q = 1) — output number c
  lands exactly at input time c·Q/P - L with L = D + 2;
* fractional-delay mode emits one output per input at t = -mu, approximating
  x(n - L - mu); at mu = 0 the output is the coefficient a_0 = s_{n-1}
  itself, i.e. a bit-exact integer delay of L samples.

The output clock is kept as an integer phase numerator stepped by Q modulo
P, so arbitrarily long runs accumulate no drift.  Outputs emitted before
L + 3 inputs have been consumed still touch the zero-filled delay lines and
are flagged transient.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Iterable, NamedTuple

import numpy as np

from .differentiators import (
    DEFAULT_PASSBAND_EDGE,
    DifferentiatorFilter,
    DifferentiatorSpec,
    design_differentiator,
)
from .splines import InterpolatorKind, SampleWindow, SplineCoefficients, segment_coeffs

__all__ = [
    "FarrowResampler",
    "OutputSample",
    "PhaseAccumulator",
    "ResamplerConfig",
    "make_resampler",
]


class OutputSample(NamedTuple):
    value: float
    transient: bool


class PhaseAccumulator:
    """Exact rational output clock for P/Q conversion.

    Holds an integer numerator ``num`` with the invariant that after i
    consumed inputs and c emitted outputs, num = 2P - iP + cQ; hence
    ``phase_numerator`` is always (c·Q) mod P exactly, with no float in
    the loop.  Between inputs all due outputs are drained (num > P).
    """

    def __init__(self, p: int, q: int):
        if p <= 0 or q <= 0:
            raise ValueError(f"ratio terms must be positive, got {p}/{q}")
        g = math.gcd(p, q)
        self.p = p // g
        self.q = q // g
        self._num = 2 * self.p

    def reset_phase(self) -> None:
        self._num = 2 * self.p

    @property
    def phase_numerator(self) -> int:
        """Current position numerator in [0, P): equals (outputs·Q) mod P."""
        return self._num % self.p

    def advance_input(self) -> None:
        self._num -= self.p

    def pending(self) -> bool:
        """True while the current segment still contains the next output."""
        return self._num <= self.p

    def pop_position(self) -> float:
        """Segment coordinate t in (-1, 0] of the next output; steps by Q/P."""
        t = self._num / self.p - 1.0
        self._num += self.q
        return t

    def run(self, n_outputs: int) -> int:
        """Drive the clock until ``n_outputs`` have been emitted.

        Bulk equivalent of advance_input/pending/pop_position for long
        drift checks; returns the number of inputs consumed.
        """
        num, p, q = self._num, self.p, self.q
        inputs = 0
        emitted = 0
        while emitted < n_outputs:
            num -= p
            inputs += 1
            while num <= p and emitted < n_outputs:
                emitted += 1
                num += q
        self._num = num
        return inputs


@dataclass(frozen=True)
class ResamplerConfig:
    """Static configuration of one resampler instance.

    ``ratio`` and ``mu`` select the operating mode (rational conversion vs
    fixed fractional delay) and are mutually exclusive; the mode can also be
    switched later via set_ratio / fractional_delay.  ``diff2_order`` is only
    consulted for HS7; None means "same as diff_order" and 0 means "no
    second-derivative filter", which HS7 rejects.
    """

    kind: InterpolatorKind
    diff_order: int = 32
    diff2_order: int | None = None
    passband_edge: float = DEFAULT_PASSBAND_EDGE
    ratio: tuple[int, int] | None = None
    mu: float | None = None

    def validate(self) -> None:
        if self.ratio is not None and self.mu is not None:
            raise ValueError("ratio and mu are mutually exclusive")
        if self.mu is not None and not 0.0 <= self.mu < 1.0:
            raise ValueError(f"mu must lie in [0, 1), got {self.mu}")
        if self.kind.uses_first_derivative:
            if self.diff_order % 2 != 0:
                raise ValueError("diff_order must be even")
        if self.kind.uses_second_derivative:
            if self.diff2_order == 0:
                raise ValueError(
                    f"{self.kind.value} needs a second-derivative filter; "
                    "diff2_order must not be 0"
                )
            d2 = self.diff_order if self.diff2_order is None else self.diff2_order
            if d2 % 2 != 0:
                raise ValueError("diff2_order must be even")


class FarrowResampler:
    """One stream's worth of resampler state: exclusive single-owner use.

    ``analytic_derivatives`` is a test hook: a pair of callables
    (d1_at_index, d2_at_index) that replace the FIR estimates with exact
    values at absolute input indices, leaving every other code path alone.
    """

    def __init__(
        self,
        config: ResamplerConfig,
        analytic_derivatives: tuple[Callable[[int], float], Callable[[int], float]]
        | None = None,
    ):
        config.validate()
        self.config = config
        self.kind = config.kind
        self._analytic = analytic_derivatives

        self._fir1: DifferentiatorFilter | None = None
        self._fir2: DifferentiatorFilter | None = None
        d1 = d2 = 0
        if self.kind.uses_first_derivative:
            self._fir1 = design_differentiator(
                DifferentiatorSpec(config.diff_order, 1, config.passband_edge)
            )
            d1 = self._fir1.group_delay_d
        if self.kind.uses_second_derivative:
            order2 = (
                config.diff_order if config.diff2_order is None else config.diff2_order
            )
            self._fir2 = design_differentiator(
                DifferentiatorSpec(order2, 2, config.passband_edge)
            )
            d2 = self._fir2.group_delay_d
        self._d = max(d1, d2)

        hist_len = self._d + 5
        if self._fir1 is not None:
            hist_len = max(hist_len, len(self._fir1.taps))
        if self._fir2 is not None:
            hist_len = max(hist_len, len(self._fir2.taps))
        self._hist = np.zeros(hist_len)
        # FIR output at入 step m estimates x'(m - D1); the window wants the
        # derivative at s_{n-1} = x[n-D-2], i.e. the output from
        # (D - D1) + 2 steps ago.
        self._lag1 = self._d - d1 + 2
        self._lag2 = self._d - d2 + 2
        self._d1_hist = [0.0] * (self._lag1 + 2)
        self._d2_hist = [0.0] * (self._lag2 + 2)

        self._consumed = 0
        if config.mu is not None:
            self._mu = config.mu
            self._acc = PhaseAccumulator(1, 1)
        else:
            p, q = config.ratio if config.ratio is not None else (1, 1)
            self._mu = None
            self._acc = PhaseAccumulator(p, q)

    @property
    def group_delay_d(self) -> int:
        """Differentiator group delay D compensated on the signal path."""
        return self._d

    @property
    def latency(self) -> int:
        """Total pipeline latency L = D + 2 input samples."""
        return self._d + 2

    @property
    def ratio(self) -> tuple[int, int]:
        return (self._acc.p, self._acc.q)

    @property
    def phase_numerator(self) -> int:
        return self._acc.phase_numerator

    def set_ratio(self, p: int, q: int) -> None:
        """Switch to P/Q conversion: normalizes to coprime, resets the phase
        to zero, keeps delay-line contents."""
        self._acc = PhaseAccumulator(p, q)
        self._mu = None

    def fractional_delay(self, mu: float) -> None:
        """Switch to fixed fractional delay: one output per input that
        approximates x(n - L - mu)."""
        if not 0.0 <= mu < 1.0:
            raise ValueError(f"mu must lie in [0, 1), got {mu}")
        self._mu = float(mu)

    def _current_window(self) -> SampleWindow:
        h = self._hist
        d = self._d
        if self._analytic is not None:
            node = self._consumed - d - 3  # absolute index of s_{n-1}
            f1, f2 = self._analytic
            return SampleWindow(
                s_n=h[d + 1],
                s_nm1=h[d + 2],
                s_nm2=h[d + 3],
                s_nm3=h[d + 4],
                d1_nm1=f1(node),
                d1_nm2=f1(node - 1),
                d2_nm1=f2(node),
                d2_nm2=f2(node - 1),
            )
        return SampleWindow(
            s_n=h[d + 1],
            s_nm1=h[d + 2],
            s_nm2=h[d + 3],
            s_nm3=h[d + 4],
            d1_nm1=self._d1_hist[self._lag1],
            d1_nm2=self._d1_hist[self._lag1 + 1],
            d2_nm1=self._d2_hist[self._lag2],
            d2_nm2=self._d2_hist[self._lag2 + 1],
        )

    def push_and_pull(self, x: float) -> list[OutputSample]:
        """Consume one input sample, return the outputs it settles."""
        h = self._hist
        h[1:] = h[:-1]
        h[0] = x
        if self._fir1 is not None:
            self._d1_hist.insert(0, float(np.dot(self._fir1.taps, h[: len(self._fir1.taps)])))
            self._d1_hist.pop()
        if self._fir2 is not None:
            self._d2_hist.insert(0, float(np.dot(self._fir2.taps, h[: len(self._fir2.taps)])))
            self._d2_hist.pop()
        self._consumed += 1
        transient = self._consumed < self.latency + 3

        if self._mu is not None:
            coeffs = segment_coeffs(self.kind, self._current_window())
            return [OutputSample(_horner(coeffs, -self._mu), transient)]

        acc = self._acc
        acc.advance_input()
        if not acc.pending():
            return []
        coeffs = segment_coeffs(self.kind, self._current_window())
        out = []
        while acc.pending():
            out.append(OutputSample(_horner(coeffs, acc.pop_position()), transient))
        return out

    def process(self, x: Iterable[float]) -> tuple[np.ndarray, np.ndarray]:
        """Run a whole block; returns (values, transient_mask)."""
        values: list[float] = []
        flags: list[bool] = []
        for sample in x:
            for v, tr in self.push_and_pull(float(sample)):
                values.append(v)
                flags.append(tr)
        return np.asarray(values), np.asarray(flags, dtype=bool)


def _horner(coeffs: SplineCoefficients, t: float) -> float:
    a = coeffs.a
    acc = a[-1]
    for c in reversed(a[:-1]):
        acc = acc * t + c
    return acc


def make_resampler(
    config: ResamplerConfig,
    analytic_derivatives: tuple[Callable[[int], float], Callable[[int], float]]
    | None = None,
) -> FarrowResampler:
    """Build a zero-filled resampler for ``config``."""
    return FarrowResampler(config, analytic_derivatives=analytic_derivatives)
