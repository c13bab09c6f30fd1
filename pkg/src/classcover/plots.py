"""Figure rendering for the CLI report paths.

Each writer takes the same rows its CSV twin receives and drops a PNG next
to the delimited file.  matplotlib is imported lazily so non-plotting runs
never pay for it; the Agg backend keeps output reproducible headlessly.
"""

from __future__ import annotations

from pathlib import Path

_PNG_META = {"Software": "classcover"}


def _plt():
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    return plt


def _save(fig, out_path):
    out_path = Path(out_path)
    fig.savefig(out_path, dpi=120, metadata=_PNG_META)
    return out_path


def cover_figure(rows, out_path):
    """Covering number against class size, one marker set per group."""
    plt = _plt()
    fig, ax = plt.subplots(figsize=(7, 4.5))
    by_group = {}
    for r in rows:
        by_group.setdefault(r.group, []).append(r)
    for name, grp in sorted(by_group.items()):
        xs = [r.class_size for r in grp if r.cn is not None]
        ys = [r.cn for r in grp if r.cn is not None]
        ax.scatter(xs, ys, label=name, s=24, alpha=0.8)
    ax.set_xscale("log")
    ax.set_xlabel("class size")
    ax.set_ylabel("covering number")
    ax.set_title("class-product covering numbers")
    ax.legend(fontsize=7, ncol=2)
    fig.tight_layout()
    out = _save(fig, out_path)
    plt.close(fig)
    return out


def spectrum_figure(rows, out_path):
    """Measured ratio h against beta, one curve per degree n."""
    plt = _plt()
    fig, ax = plt.subplots(figsize=(7, 4.5))
    by_n = {}
    for n, beta, _length, h, _err in rows:
        by_n.setdefault(n, []).append((beta, h))
    for n, pts in sorted(by_n.items()):
        pts.sort()
        ax.plot([p[0] for p in pts], [p[1] for p in pts], marker="o", ms=3,
                label=f"n={n}")
    ax.plot([0, 1], [0, 1], ls="--", c="gray", lw=1, label="target")
    ax.set_xlabel("beta")
    ax.set_ylabel("h")
    ax.set_title("alternating-group class-size ratios")
    ax.legend(fontsize=8)
    fig.tight_layout()
    out = _save(fig, out_path)
    plt.close(fig)
    return out


def sl_spectrum_figure(rows, out_path):
    """Measured ratio h against beta, one curve per (n, p)."""
    plt = _plt()
    fig, ax = plt.subplots(figsize=(7, 4.5))
    by_np = {}
    for n, p, beta, _d0, h in rows:
        by_np.setdefault((n, p), []).append((beta, h))
    for (n, p), pts in sorted(by_np.items()):
        pts.sort()
        ax.plot([x[0] for x in pts], [x[1] for x in pts], marker="s", ms=3,
                label=f"SL({n},{p})")
    ax.plot([0, 1], [0, 1], ls="--", c="gray", lw=1, label="target")
    ax.set_xlabel("beta")
    ax.set_ylabel("h")
    ax.set_title("special-linear class-size ratios")
    ax.legend(fontsize=8)
    fig.tight_layout()
    out = _save(fig, out_path)
    plt.close(fig)
    return out


def filterbase_figure(rows, out_path):
    """Per-coordinate h values of a family tuple."""
    plt = _plt()
    fig, ax = plt.subplots(figsize=(7, 4.5))
    xs = [r[0] for r in rows]
    ys = [r[1] for r in rows]
    ax.plot(xs, ys, marker=".", ms=4, lw=0.8)
    ax.set_xlabel("coordinate index")
    ax.set_ylabel("h")
    ax.set_title("tuple class-size ratios across the family")
    fig.tight_layout()
    out = _save(fig, out_path)
    plt.close(fig)
    return out
