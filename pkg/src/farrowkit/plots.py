"""Figure rendering for the CLI report path.

Each helper takes measurement results keyed by a display label and writes
one PNG next to the delimited output.  Rendering is headless (Agg).
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .analysis import ImpulseResponse, SpectrumAnalysis

__all__ = [
    "render_group_delay_figure",
    "render_impulse_figure",
    "render_spectrum_figure",
]

_DPI = 150


def render_impulse_figure(
    responses: dict[str, ImpulseResponse], path: str, span: float = 4.0
) -> None:
    """Equivalent impulse responses on a shared time axis (input samples)."""
    fig, ax = plt.subplots(figsize=(7.0, 4.2))
    for label, h in responses.items():
        t = (np.arange(len(h.samples)) - h.origin) / h.oversample
        keep = np.abs(t) <= span
        ax.plot(t[keep], h.samples[keep], label=label, linewidth=1.2)
    ax.set_xlabel("time (input samples)")
    ax.set_ylabel("h(t)")
    ax.grid(True, alpha=0.4)
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=_DPI)
    plt.close(fig)


def render_spectrum_figure(
    spectra: dict[str, SpectrumAnalysis],
    path: str,
    floor_db: float = -100.0,
    band_edge_fd: float | None = 0.4,
) -> None:
    """Magnitude responses in dB over the F_d-normalized grid."""
    fig, ax = plt.subplots(figsize=(7.0, 4.2))
    for label, s in spectra.items():
        ax.plot(s.freq_fd, np.maximum(s.magnitude_db, floor_db), label=label,
                linewidth=1.2)
    if band_edge_fd is not None:
        ax.axvspan(0.0, band_edge_fd, color="gold", alpha=0.25,
                   label="processing band")
    ax.set_xlabel("frequency (F_d)")
    ax.set_ylabel("magnitude (dB)")
    ax.set_ylim(floor_db, 5.0)
    ax.grid(True, alpha=0.4)
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=_DPI)
    plt.close(fig)


def render_group_delay_figure(
    delays: dict[str, SpectrumAnalysis], path: str
) -> None:
    """Group delay (input samples, differentiator latency removed) vs F_d."""
    fig, ax = plt.subplots(figsize=(7.0, 4.2))
    for label, s in delays.items():
        ax.plot(s.freq_fd, s.group_delay, label=label, linewidth=1.2)
    ax.set_xlabel("frequency (F_d)")
    ax.set_ylabel("group delay (input samples)")
    ax.grid(True, alpha=0.4)
    ax.legend(fontsize=8, ncol=2)
    fig.tight_layout()
    fig.savefig(path, dpi=_DPI)
    plt.close(fig)
