"""Matplotlib figures for scan output, written next to the delimited report.

Floating point appears here only: every verification path stays in exact
integer arithmetic, figures merely draw the same data.
"""

from __future__ import annotations


def _pyplot():
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    return plt


def _sixth_root_bound(n: float, offset: float) -> float:
    return 2.0 ** (2.0 / 3.0) * n ** (1.0 / 6.0) + offset


def save_max_ab_figure(rows: list[dict], path: str) -> None:
    """max(A, B) per ceiling C against the cube and sharp bound curves.

    rows: records with keys C, max_ab (decimal strings; max_ab may be "").
    """
    plt = _pyplot()
    cs = [int(r["C"]) for r in rows]
    fig, ax = plt.subplots(figsize=(7.0, 4.5))
    attained_c = [int(r["C"]) for r in rows if r["max_ab"] != ""]
    attained = [int(r["max_ab"]) for r in rows if r["max_ab"] != ""]
    if attained:
        ax.plot(attained_c, attained, "o", ms=5, color="tab:blue",
                label="max(A, B) over solvable quads")
    grid = [c / 8 + min(cs) for c in range(8 * (max(cs) - min(cs)) + 1)]
    ax.plot(grid, [c**3 for c in grid], "-", lw=1.0, color="tab:red",
            label=r"$C^3$")
    sharp = [c for c in grid if c >= 10]
    if sharp:
        ax.plot(sharp, [c * (c - 1) ** 2 / 4 for c in sharp], "--", lw=1.2,
                color="tab:green", label=r"$C(C-1)^2/4$  ($C \geq 10$)")
    ax.set_xlabel("ceiling C")
    ax.set_ylabel("value")
    ax.set_yscale("log")
    ax.grid(True, alpha=0.3)
    ax.legend()
    ax.set_title("Largest factor admitting three close factorizations")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def save_gap_figure(points: list[tuple[int, int]], path: str) -> None:
    """Minimal gap per n (thinned) against the sixth-root lower bound."""
    plt = _pyplot()
    fig, ax = plt.subplots(figsize=(7.0, 4.5))
    if points:
        ns = [p[0] for p in points]
        gaps = [p[1] for p in points]
        ax.plot(ns, gaps, ".", ms=2, alpha=0.4, color="tab:blue",
                label="minimal gap")
        lo, hi = min(ns), max(ns)
        xs = [lo * (hi / lo) ** (i / 400) for i in range(401)] if hi > lo else [lo]
        ax.plot(xs, [_sixth_root_bound(x, 0.5) for x in xs], "-", lw=1.4,
                color="tab:red", label=r"$2^{2/3} n^{1/6} + 0.5$")
        ax.set_xscale("log")
        ax.set_yscale("log")
    ax.set_xlabel("n")
    ax.set_ylabel(r"$\max(x_3 - x_1,\ y_1 - y_3)$")
    ax.grid(True, alpha=0.3)
    ax.legend()
    ax.set_title("Gap of three lattice points on xy = n")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def save_family_figure(rows: list[dict], path: str) -> None:
    """Family gap excess over 2^(2/3)n^(1/6), inside the (0.5, 1.2) corridor.

    rows: records with decimal-string keys N, n, gap.
    """
    plt = _pyplot()
    fig, ax = plt.subplots(figsize=(7.0, 4.5))
    ns = [int(r["N"]) for r in rows]
    excess = [
        int(r["gap"]) - _sixth_root_bound(float(int(r["n"])), 0.0) for r in rows
    ]
    ax.plot(ns, excess, "o-", ms=3, lw=0.8, color="tab:blue",
            label=r"gap $-\ 2^{2/3} n^{1/6}$")
    ax.axhline(0.5, color="tab:red", lw=1.2, label="lower offset 0.5")
    ax.axhline(1.2, color="tab:green", lw=1.2, ls="--", label="upper offset 1.2")
    ax.set_xlabel("family index N")
    ax.set_ylabel("gap excess")
    ax.grid(True, alpha=0.3)
    ax.legend()
    ax.set_title("Extremal family: gap between the two exact bounds")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def thin_stride(count: int, target: int = 200_000) -> int:
    """Deterministic stride that keeps at most ~target points."""
    return max(1, count // target)
