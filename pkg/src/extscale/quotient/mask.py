"""Domain masks on the uniform spatial grid of the torus."""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
import pandas as pd
from numpy.typing import NDArray


@dataclass(frozen=True, eq=False)
class DomainMask:
    """Grid points x_j = 2 pi j / M (per axis) that lie inside a domain.

    Attributes:
        inside: Boolean array of shape (M,)*n
        radius: Disk radius for disk masks (recorded for reports)
    """

    inside: NDArray[np.bool_] = field(repr=False)
    radius: float | None = None

    def __post_init__(self) -> None:
        inside = np.array(self.inside, dtype=bool)
        if inside.ndim not in (1, 2) or len(set(inside.shape)) != 1:
            raise ValueError(f"mask must be a square 1D or 2D grid, got shape {inside.shape}")
        if not inside.any() or inside.all():
            raise ValueError("mask needs both inside and outside points")
        inside.setflags(write=False)
        object.__setattr__(self, "inside", inside)

    @classmethod
    def disk(cls, points: int, radius: float = 1.0) -> DomainMask:
        """Disk of the given radius centred at (pi, pi) on an M x M grid."""
        x = 2.0 * np.pi * np.arange(points) / points - np.pi
        xx, yy = np.meshgrid(x, x, indexing="ij")
        return cls(xx**2 + yy**2 < radius**2, radius=radius)

    @classmethod
    def interval(cls, points: int, start: int, stop: int) -> DomainMask:
        """Grid indices start..stop-1 of a 1D grid with M points."""
        inside = np.zeros(points, dtype=bool)
        inside[start:stop] = True
        return cls(inside)

    @property
    def n(self) -> int:
        return self.inside.ndim

    @property
    def points(self) -> int:
        """Grid points per axis (M)."""
        return self.inside.shape[0]

    @property
    def count(self) -> int:
        return int(self.inside.sum())

    def coordinates(self) -> NDArray[np.float64]:
        """Coordinates of inside points, shape (count, n)."""
        idx = np.argwhere(self.inside)
        return 2.0 * np.pi * idx / self.points

    def __eq__(self, other: object) -> bool:
        return isinstance(other, DomainMask) and np.array_equal(self.inside, other.inside)

    def __hash__(self) -> int:
        return hash(self.inside.tobytes())


def save_mask(mask: DomainMask, path: Path | str) -> None:
    """Write a mask as CSV triples (i, j, inside); 1D masks store j = 0."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    idx = np.indices(mask.inside.shape).reshape(mask.n, -1)
    j = idx[1] if mask.n == 2 else np.zeros(idx.shape[1], dtype=np.int64)
    frame = pd.DataFrame({"i": idx[0], "j": j, "inside": mask.inside.ravel().astype(int)})
    with open(path, "w") as f:
        f.write(f"# mask n={mask.n} M={mask.points}\n")
        frame.to_csv(f, index=False)


def load_mask(path: Path | str) -> DomainMask:
    """Read a mask written by save_mask.

    Raises:
        FileNotFoundError: If the file does not exist
    """
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"Mask file not found: {path}")
    with open(path) as f:
        meta = dict(item.split("=") for item in f.readline().split()[2:])
    n, points = int(meta["n"]), int(meta["M"])
    frame = pd.read_csv(path, comment="#")
    inside = np.zeros((points,) * n, dtype=bool)
    index = (frame["i"].to_numpy(),) if n == 1 else (frame["i"].to_numpy(), frame["j"].to_numpy())
    inside[index] = frame["inside"].to_numpy().astype(bool)
    return DomainMask(inside)
