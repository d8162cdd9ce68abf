"""Figure rendering for surface exports (headless, file output only)."""

from __future__ import annotations

import numpy as np


def render_surface(axis: np.ndarray, values: np.ndarray, path: str,
                   title: str = "") -> str:
    """Render the surface grid as a heatmap PNG next to the CSV export."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(6.4, 5.6))
    mesh = ax.pcolormesh(axis, axis, values.T, cmap="viridis",
                         vmin=0.0, vmax=1.0, shading="nearest")
    fig.colorbar(mesh, ax=ax, label="T(x, y)")
    ax.set_xlabel("x")
    ax.set_ylabel("y")
    ax.set_aspect("equal")
    if title:
        ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path, dpi=130)
    plt.close(fig)
    return path
