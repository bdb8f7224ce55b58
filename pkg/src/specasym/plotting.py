"""Optional figures for ``specasym run --figures``.

matplotlib is imported inside the functions so the core package never
needs it; install the ``plot`` extra to use this module.
"""
from __future__ import annotations

import math
from pathlib import Path

import numpy as np


def _pyplot():
    try:
        import matplotlib
    except ImportError as exc:  # pragma: no cover - depends on the environment
        raise RuntimeError("figures need matplotlib: pip install 'specasym[plot]'") from exc
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    return plt


def _rays(ax, cuts, radius):
    for t, style in ((cuts.theta, "-"), (cuts.theta_prime, "--")):
        ax.plot([0, radius * math.cos(t)], [0, radius * math.sin(t)], style, color="0.4", lw=1)


def spectrum_figure(eigs: np.ndarray, cuts_list, path: Path, title: str) -> Path:
    """Eigenvalues in the complex plane with every cut ray drawn."""
    plt = _pyplot()
    eigs = np.asarray(eigs).ravel()
    radius = 1.1 * max(1.0, float(np.max(np.abs(eigs))) if eigs.size else 1.0)
    fig, ax = plt.subplots(figsize=(4.5, 4.5))
    ax.scatter(eigs.real, eigs.imag, s=4, color="tab:blue")
    for cuts in cuts_list:
        _rays(ax, cuts, radius)
    ax.set_aspect("equal")
    ax.set_xlim(-radius, radius)
    ax.set_ylim(-radius, radius)
    ax.axhline(0, color="0.85", lw=0.5)
    ax.axvline(0, color="0.85", lw=0.5)
    ax.set_title(title)
    ax.set_xlabel("Re")
    ax.set_ylabel("Im")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def gap_figure(reports, path: Path, title: str, floor: float = 1e-18) -> Path:
    """``|gap|`` and ``|Res P^-k|`` against ``k``, one line per cut pair."""
    plt = _pyplot()
    fig, ax = plt.subplots(figsize=(5.5, 4))
    by_cut: dict = {}
    for r in reports:
        by_cut.setdefault((r.cuts.theta, r.cuts.theta_prime), []).append(r)
    for (t, tp), reps in by_cut.items():
        reps = sorted(reps, key=lambda r: r.k)
        ks = [r.k for r in reps]
        ax.semilogy(ks, [max(abs(r.gap), floor) for r in reps], "o-", label=f"gap ({t:.2f}, {tp:.2f})")
    if reports:
        first = sorted(next(iter(by_cut.values())), key=lambda r: r.k)
        ax.semilogy([r.k for r in first], [max(abs(r.res_pk), floor) for r in first], "k:", label="|Res P^-k|")
    ax.set_xlabel("k")
    ax.set_ylabel("modulus")
    ax.set_title(title)
    ax.legend(fontsize=7)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def render(result, spec, out_dir: Path) -> list[Path]:
    """Figures for a finished run; returns the written paths."""
    out_dir = Path(out_dir)
    paths = []
    if spec.kind == "matrix":
        eigs = np.linalg.eigvals(spec.matrix)
        paths.append(spectrum_figure(eigs, spec.cuts, out_dir / "spectrum.png", spec.name))
    else:
        from .projection import scan_principal_spectrum
        from .resolvent import cosphere_scan

        eigs = scan_principal_spectrum(spec.symbol, cosphere_scan(spec.n, 16))
        paths.append(spectrum_figure(eigs, spec.cuts, out_dir / "principal_spectrum.png",
                                     f"{spec.name}: principal spectrum on |xi| = 1"))
        if result.rows:
            paths.append(gap_figure(result.rows, out_dir / "gaps.png", f"{spec.name}: zeta gaps"))
    return paths
