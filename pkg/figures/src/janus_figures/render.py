"""Render the seven survey figures from the scan CSV tables.

Only the documented CSV columns are consumed.  Every benchmark overlay —
dashed matched-strength variance lines, the fixed-energy floor, break-even
contours, the starred representative cell — is computed from those columns
or from the [Q, P] = i vacuum constants; nothing is transcribed from a
published plot.  Style is pinned (`RC`) so identical inputs give
byte-identical PNGs: perceptually uniform colormap for landscapes,
log-spaced level lines for the variance landscape, a symmetric diverging
map centered on 0 for log-ratios, gray for masked sentinel cells.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Mapping

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np
from matplotlib.colors import ListedColormap, LogNorm
from matplotlib.figure import Figure

from .io import Table, TableError

VACUUM_DQ = 1.0 / math.sqrt(2.0)  # vacuum Delta-Q at [Q, P] = i
HEISENBERG = 0.5  # Delta-Q Delta-P floor
GRAY = "0.6"

RC = {
    "figure.dpi": 110,
    "savefig.dpi": 110,
    "font.family": "DejaVu Sans",
    "font.size": 9.0,
    "axes.titlesize": 9.5,
    "axes.labelsize": 9.0,
    "legend.fontsize": 8.0,
    "xtick.labelsize": 8.0,
    "ytick.labelsize": 8.0,
    "lines.linewidth": 1.4,
    "mathtext.fontset": "dejavusans",
    "image.cmap": "viridis",
    "svg.hashsalt": "janus-figures",
}


@dataclass(frozen=True)
class FigureSpec:
    """One figure: id, input tables, main-panel style, annotation list."""

    fid: int
    stems: tuple[str, ...]  # CSV tables consumed, by file stem
    xlabel: str
    ylabel: str
    scale: str  # value scale of the main panel: "linear" | "log"
    contour_levels: int | tuple[float, ...] | None
    mask_color: str
    annotations: tuple[str, ...]  # overlays, all derived from CSV / convention
    render: Callable[["FigureSpec", Mapping[str, Table]], Figure]


# ---------------------------------------------------------------------------
# grid plumbing


def pivot(tab: Table, xcol: str, ycol: str, vcol: str) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Pivot long-form rows onto the (y, x) grid the scan walked.

    Sentinel cells come back as NaN; scans always walk full rectangles,
    so a partial grid means the table was truncated.
    """
    x = tab.floats(xcol)
    y = tab.floats(ycol)
    v = tab.floats(vcol)
    ux = np.unique(x)
    uy = np.unique(y)
    if ux.size * uy.size != v.size:
        raise TableError(
            f"{tab.path}: rows do not fill the {xcol} x {ycol} grid "
            f"({ux.size} x {uy.size} cells, {v.size} rows)"
        )
    Z = np.full((uy.size, ux.size), np.nan)
    Z[np.searchsorted(uy, y), np.searchsorted(ux, x)] = v
    return ux, uy, Z


def pivot_mask(tab: Table, xcol: str, ycol: str, vcol: str, sentinel: str) -> np.ndarray:
    """Boolean (y, x) grid marking cells whose `vcol` equals `sentinel`."""
    x = tab.floats(xcol)
    y = tab.floats(ycol)
    m = tab.mask(vcol, sentinel)
    ux = np.unique(x)
    uy = np.unique(y)
    out = np.zeros((uy.size, ux.size), dtype=bool)
    out[np.searchsorted(uy, y), np.searchsorted(ux, x)] = m
    return out


def _mesh(ax, ux, uy, Z, mask_color: str, cmap: str = "viridis", **kw):
    """pcolormesh with NaN cells drawn in the mask color."""
    cm = matplotlib.colormaps[cmap].copy()
    cm.set_bad(mask_color)
    return ax.pcolormesh(
        ux, uy, np.ma.masked_invalid(Z), cmap=cm, shading="nearest", **kw
    )


def _diverging(ax, ux, uy, Z, mask_color: str):
    """Symmetric diverging mesh centered on 0, plus the 0-level contour."""
    m = float(np.nanmax(np.abs(Z)))
    if not m > 0.0:
        m = 1.0
    mesh = _mesh(ax, ux, uy, Z, mask_color, cmap="RdBu_r", vmin=-m, vmax=m)
    ax.contour(
        ux, uy, np.ma.masked_invalid(Z), levels=[0.0], colors="black", linewidths=1.2
    )
    return mesh


def _log10(Z: np.ndarray) -> np.ndarray:
    with np.errstate(divide="ignore", invalid="ignore"):
        L = np.log10(Z)
    return np.where(np.isfinite(L), L, np.nan)


# ---------------------------------------------------------------------------
# figure renderers


def _fig1(spec: FigureSpec, tables: Mapping[str, Table]) -> Figure:
    """Optimal Q variance vs relative phase, one curve per strength."""
    tab = tables["fig1"]
    r = tab.floats("r")
    d = tab.floats("delta")
    dq2 = tab.floats("dq2")
    bench = tab.floats("dq2_sq_bench")
    fig, ax = plt.subplots(figsize=(5.6, 3.6), layout="constrained")
    for k, rv in enumerate(np.unique(r)):
        sel = r == rv
        o = np.argsort(d[sel], kind="stable")
        (line,) = ax.plot(d[sel][o], dq2[sel][o], label=rf"$r = {rv:g}$")
        ax.axhline(
            bench[sel][0],
            ls="--",
            lw=1.0,
            color=line.get_color(),
            alpha=0.8,
            label=r"$e^{-2r}/2$" if k == 0 else None,
        )
    ax.axhline(VACUUM_DQ**2, ls=":", lw=1.0, color="0.3", label="vacuum")
    ax.set_yscale(spec.scale)
    ax.set_xlim(float(d.min()), float(d.max()))
    ax.set_xlabel(spec.xlabel)
    ax.set_ylabel(spec.ylabel)
    ax.legend(ncols=2, loc="lower center")
    return fig


def _fig2(spec: FigureSpec, tables: Mapping[str, Table]) -> Figure:
    """Optimal Q-variance landscape over (Delta, r), log color scale."""
    tab = tables["fig2"]
    ux, uy, Z = pivot(tab, "delta", "r", "dq2")
    fig, ax = plt.subplots(figsize=(5.4, 3.9), layout="constrained")
    lo, hi = float(np.nanmin(Z)), float(np.nanmax(Z))
    mesh = _mesh(ax, ux, uy, Z, spec.mask_color, norm=LogNorm(vmin=lo, vmax=hi))
    # log-spaced interior level lines, endpoints dropped
    levels = np.geomspace(lo, hi, int(spec.contour_levels) + 2)[1:-1]
    cs = ax.contour(
        ux, uy, np.ma.masked_invalid(Z), levels=levels, colors="white", linewidths=0.7
    )
    ax.clabel(cs, fmt="%.3g", fontsize=7)
    ax.axvline(math.pi, ls=":", lw=1.0, color="white")  # antiphase guide
    ax.set_xlabel(spec.xlabel)
    ax.set_ylabel(spec.ylabel)
    fig.colorbar(mesh, ax=ax, label=r"$(\Delta Q)^2_{\min}$")
    return fig


def _fig3(spec: FigureSpec, tables: Mapping[str, Table]) -> Figure:
    """Uncertainty product vs g2 over the coefficient plane, four panels."""
    tab = tables["fig3"]
    ux, uy, DQDP = pivot(tab, "eta_mag", "delta", "dqdp")
    _, _, G2 = pivot(tab, "eta_mag", "delta", "g2")
    L = _log10(G2)
    fig, axes = plt.subplots(2, 2, figsize=(7.6, 6.2), layout="constrained")
    a, b, c, d = axes.flat

    m1 = _mesh(a, ux, uy, DQDP, spec.mask_color)
    a.set_title(r"$\Delta Q\,\Delta P$")
    fig.colorbar(m1, ax=a)

    m2 = _mesh(b, ux, uy, L, spec.mask_color)
    b.set_title(r"$\log_{10} g^{(2)}(0)$")
    fig.colorbar(m2, ax=b)

    m3 = _mesh(c, ux, uy, L, spec.mask_color)
    cs = c.contour(
        ux,
        uy,
        np.ma.masked_invalid(DQDP),
        levels=int(spec.contour_levels),
        colors="white",
        linewidths=0.7,
    )
    c.clabel(cs, fmt="%.2f", fontsize=7)
    c.set_title(r"$\log_{10} g^{(2)}(0)$ with $\Delta Q\,\Delta P$ levels")
    fig.colorbar(m3, ax=c)

    for ax in (a, b, c):
        ax.set_xlabel(spec.xlabel)
        ax.set_ylabel(spec.ylabel)

    # induced scatter relation, colored by the coefficient phase
    delta = tab.floats("delta")
    sc = d.scatter(
        tab.floats("dqdp"),
        _log10(tab.floats("g2")),
        c=delta / math.pi,
        s=3,
        cmap="viridis",
    )
    d.axvline(HEISENBERG, ls="--", lw=1.0, color="0.3")
    d.set_xlabel(r"$\Delta Q\,\Delta P$")
    d.set_ylabel(r"$\log_{10} g^{(2)}(0)$")
    fig.colorbar(sc, ax=d, label=r"$\delta/\pi$")
    return fig


def _fig4(spec: FigureSpec, tables: Mapping[str, Table]) -> Figure:
    """g2 vs uncertainty-product scatter, one panel per strength."""
    tab = tables["fig4"]
    r = tab.floats("r")
    dqdp = tab.floats("dqdp")
    L = _log10(tab.floats("g2"))
    delta = tab.floats("delta")
    fig, axes = plt.subplots(
        2, 2, figsize=(7.2, 5.8), layout="constrained", sharex=True, sharey=True
    )
    values = list(np.unique(r))
    sc = None
    for ax, rv in zip(axes.flat, values):
        sel = r == rv
        sc = ax.scatter(
            dqdp[sel], L[sel], c=delta[sel] / math.pi, s=3, cmap="viridis",
            vmin=0.0, vmax=2.0,
        )
        ax.axvline(HEISENBERG, ls="--", lw=1.0, color="0.3")
        ax.set_title(rf"$r = s = {rv:g}$")
    for ax in list(axes.flat)[len(values):]:
        ax.set_axis_off()
    fig.colorbar(sc, ax=axes, label=r"$\delta/\pi$")
    fig.supxlabel(spec.xlabel)
    fig.supylabel(spec.ylabel)
    return fig


def _fig5(spec: FigureSpec, tables: Mapping[str, Table]) -> Figure:
    """Quadratic-QFI enhancement landscape over (t, Delta)."""
    tab = tables["fig5"]
    ux, uy, Z = pivot(tab, "t", "delta_big", "log10_ratio")
    gray = pivot_mask(tab, "t", "delta_big", "log10_ratio", "NOT_SQUEEZED")
    _, _, U = pivot(tab, "t", "delta_big", "u")
    fig, ax = plt.subplots(figsize=(5.9, 4.1), layout="constrained")

    m = float(np.nanmax(np.abs(Z)))
    cm = matplotlib.colormaps["RdBu_r"].copy()
    cm.set_bad((0.0, 0.0, 0.0, 0.0))  # sentinel cells get the explicit overlay
    mesh = ax.pcolormesh(
        ux, uy, np.ma.masked_invalid(Z), cmap=cm, vmin=-m, vmax=m, shading="nearest"
    )
    mesh.set_gid("fig5-landscape")

    # gray exactly where the matched-u benchmark is undefined
    overlay = ax.pcolormesh(
        ux,
        uy,
        np.ma.masked_where(~gray, np.zeros_like(Z)),
        cmap=ListedColormap([spec.mask_color]),
        shading="nearest",
    )
    overlay.set_gid("fig5-mask")

    cs = ax.contour(
        ux,
        uy,
        np.ma.masked_invalid(Z),
        levels=list(spec.contour_levels),
        colors="black",
        linewidths=1.3,
    )
    cs.set_gid("fig5-breakeven")

    ulevels = [lv for lv in (0.25, 0.5, 0.75, 1.0) if np.nanmin(U) < lv < np.nanmax(U)]
    if ulevels:
        ucs = ax.contour(
            ux,
            uy,
            np.ma.masked_invalid(U),
            levels=ulevels,
            colors="0.25",
            linestyles="--",
            linewidths=0.7,
        )
        ax.clabel(ucs, fmt={lv: rf"$u={lv:g}$" for lv in ulevels}, fontsize=7)

    starred = tab.flags("starred")
    if int(starred.sum()) != 1:
        raise TableError(
            f"{tab.path}: expected exactly one starred row, found {int(starred.sum())}"
        )
    t_star = float(tab.floats("t")[starred][0])
    d_star = float(tab.floats("delta_big")[starred][0])
    (star,) = ax.plot(
        [t_star], [d_star], marker="*", ms=13, mfc="gold", mec="black", ls="none"
    )
    star.set_gid("fig5-star")

    ax.set_xlabel(spec.xlabel)
    ax.set_ylabel(spec.ylabel)
    fig.colorbar(mesh, ax=ax, label=r"$\log_{10}$(envelope / matched-$u$ benchmark)")
    return fig


def _fig6(spec: FigureSpec, tables: Mapping[str, Table]) -> Figure:
    """Fixed-energy floor (scatter) next to the constituent-relative window."""
    a_tab = tables["fig6a"]
    bc = tables["fig6bc"]
    fig = plt.figure(figsize=(8.4, 4.4), layout="constrained")
    gs = fig.add_gridspec(2, 2, width_ratios=[1.15, 1.0])
    a = fig.add_subplot(gs[:, 0])
    b = fig.add_subplot(gs[0, 1])
    c = fig.add_subplot(gs[1, 1], sharex=b)

    nbar = a_tab.floats("nbar")
    vmin = a_tab.floats("vmin")
    bound = a_tab.floats("no_go_bound")
    a.scatter(nbar, vmin, s=8, alpha=0.6, edgecolors="none", label="random superpositions")
    o = np.argsort(nbar, kind="stable")
    a.plot(nbar[o], bound[o], "k-", lw=1.2, label=r"fixed-$\bar n$ floor")
    a.axhline(VACUUM_DQ**2, ls=":", lw=1.0, color="0.3", label="vacuum")
    a.set_yscale("log")
    a.set_xlabel(r"$\bar n$")
    a.set_ylabel(r"$V_{\min}$")
    a.legend(loc="upper right")

    t = bc.floats("t")
    both = bc.flags("adv_both")
    for ax in (b, c):
        if both.any():
            ax.axvspan(
                float(t[both].min()), float(t[both].max()),
                color="gold", alpha=0.35, lw=0,
            )
    b.plot(t, bc.floats("dq2"))
    b.axhline(bc.floats("dq2_sq_bench")[0], ls="--", lw=1.0, color="0.3")
    b.axvline(bc.floats("t_threshold")[0], ls=":", lw=1.0, color="0.3")
    b.set_ylabel(r"$(\Delta Q)^2$")
    b.tick_params(labelbottom=False)
    c.plot(t, bc.floats("f_phase"), color="C1")
    c.axhline(bc.floats("f_phase_sq_bench")[0], ls="--", lw=1.0, color="0.3")
    c.set_xlabel(spec.xlabel)
    c.set_ylabel(r"$F_{\mathrm{phase}}$")
    return fig


def _fig7(spec: FigureSpec, tables: Mapping[str, Table]) -> Figure:
    """Constituent-relative advantage maps over (|eta|, Delta), three panels."""
    tab = tables["fig7"]
    ux, uy, DQ = pivot(tab, "eta_mag", "Delta", "dq2")
    _, _, DQb = pivot(tab, "eta_mag", "Delta", "dq2_best_const")
    _, _, F = pivot(tab, "eta_mag", "Delta", "f_phase")
    _, _, Fb = pivot(tab, "eta_mag", "Delta", "f_phase_best_const")
    _, _, BOTH = pivot(tab, "eta_mag", "Delta", "adv_both")
    A = _log10(DQb / DQ)  # > 0: quieter than the better constituent
    B = _log10(F / Fb)  # > 0: more phase-sensitive than both constituents

    fig, axes = plt.subplots(
        1, 3, figsize=(9.8, 3.4), layout="constrained", sharey=True
    )
    for ax, Z, title in (
        (axes[0], A, r"$\log_{10}$ quadrature gain"),
        (axes[1], B, r"$\log_{10}$ phase-QFI gain"),
    ):
        mesh = _diverging(ax, ux, uy, Z, spec.mask_color)
        ax.set_title(title)
        fig.colorbar(mesh, ax=ax)

    cm = ListedColormap(["0.92", "gold"])
    cm.set_bad(spec.mask_color)
    axes[2].pcolormesh(
        ux, uy, np.ma.masked_invalid(BOTH), cmap=cm, vmin=0.0, vmax=1.0,
        shading="nearest",
    )
    axes[2].set_title("simultaneous advantage")

    for ax in axes:
        ax.set_xlabel(spec.xlabel)
    axes[0].set_ylabel(spec.ylabel)
    return fig


FIGURES: dict[int, FigureSpec] = {
    1: FigureSpec(
        1, ("fig1",), r"$\Delta$", r"$(\Delta Q)^2_{\min}$", "log", None, GRAY,
        ("vacuum variance", "matched e^{-2r}/2 per strength"), _fig1,
    ),
    2: FigureSpec(
        2, ("fig2",), r"$\Delta$", r"$r$", "log", 6, GRAY,
        ("log-spaced level lines", "antiphase guide"), _fig2,
    ),
    3: FigureSpec(
        3, ("fig3",), r"$|\eta|$", r"$\delta$", "linear", 6, GRAY,
        ("uncertainty-product levels", "Heisenberg boundary"), _fig3,
    ),
    4: FigureSpec(
        4, ("fig4",), r"$\Delta Q\,\Delta P$", r"$\log_{10} g^{(2)}(0)$",
        "linear", None, GRAY, ("Heisenberg boundary",), _fig4,
    ),
    5: FigureSpec(
        5, ("fig5",), r"$t = \eta/\chi$", r"$\Delta$", "linear", (0.0,), GRAY,
        ("break-even contour", "measured-squeezing levels", "representative star"),
        _fig5,
    ),
    6: FigureSpec(
        6, ("fig6a", "fig6bc"), r"$t$", r"$V_{\min}$", "log", None, GRAY,
        ("fixed-energy floor", "matched benchmarks", "simultaneous-advantage band"),
        _fig6,
    ),
    7: FigureSpec(
        7, ("fig7",), r"$|\eta|$", r"$\Delta$", "linear", (0.0,), GRAY,
        ("break-even contours", "simultaneous-advantage region"), _fig7,
    ),
}


def render_figure(fid: int, tables: Mapping[str, Table]) -> Figure:
    spec = FIGURES[fid]
    with matplotlib.rc_context(RC):
        return spec.render(spec, tables)


def save_figure(fid: int, tables: Mapping[str, Table], out_path) -> None:
    """Render and write one PNG; pinned style, fixed metadata."""
    with matplotlib.rc_context(RC):
        fig = FIGURES[fid].render(FIGURES[fid], tables)
        fig.savefig(out_path, metadata={"Software": "janus-figures"})
        plt.close(fig)
