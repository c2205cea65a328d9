"""Discretization grids on [l, r].

A grid holds n interior points plus both endpoints, x_0 = l < x_1 < ... <
x_n < x_{n+1} = r.  The default construction is uniform; the two anchor
builders produce minimally perturbed grids that place a payoff kink halfway
between two nodes, or a passage level exactly on a node.

Spacing conventions (i is the node index):
    delta_plus[i]      = x_{i+1} - x_i        for i = 0..n
    delta_minus[i - 1] = x_i - x_{i-1}        for i = 1..n+1
    delta_avg[i - 1]   = (right + left) / 2   for i = 1..n
All grids satisfy max(delta_plus) / min(delta_plus) <= ratio_bound, so the
spacings shrink at comparable rates under refinement.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


class GridError(ValueError):
    """Invalid grid construction request."""


@dataclass(frozen=True)
class Grid:
    """Immutable ordered grid with cached spacing arrays."""

    points: np.ndarray
    delta_plus: np.ndarray
    delta_minus: np.ndarray
    delta_avg: np.ndarray
    mesh: float
    ratio_bound: float

    @property
    def n(self) -> int:
        """Number of interior points."""
        return len(self.points) - 2

    def index_of(self, x: float) -> int:
        """Index of the node equal to x (exact float equality)."""
        idx = np.searchsorted(self.points, x)
        if idx < len(self.points) and self.points[idx] == x:
            return int(idx)
        raise GridError(f"{x} is not a grid node")

    def nearest_index(self, x: float) -> int:
        return int(np.argmin(np.abs(self.points - x)))

    def to_csv(self, path: str) -> None:
        """Write one node per line."""
        np.savetxt(path, self.points, fmt="%.17g")


def _finalize(points: np.ndarray, ratio_bound: float, context: str) -> Grid:
    diffs = np.diff(points)
    if np.any(diffs <= 0.0):
        raise GridError(f"{context}: grid points must be strictly increasing")
    ratio = diffs.max() / diffs.min()
    if ratio > ratio_bound:
        raise GridError(
            f"{context}: spacing ratio {ratio:.3g} exceeds bound {ratio_bound}; "
            "increase n or relax the bound"
        )
    return Grid(
        points=points,
        delta_plus=diffs,
        delta_minus=diffs,
        delta_avg=0.5 * (diffs[1:] + diffs[:-1]),
        mesh=float(diffs.max()),
        ratio_bound=ratio_bound,
    )


def build_uniform(l: float, r: float, n: int, ratio_bound: float = 10.0) -> Grid:
    """Uniform grid with n interior points; spacing (r - l)/(n + 1)."""
    if n < 2:
        raise GridError(f"need at least 2 interior points, got n={n}")
    if not l < r:
        raise GridError(f"need l < r, got [{l}, {r}]")
    points = np.linspace(float(l), float(r), n + 2)
    return _finalize(points, ratio_bound, "build_uniform")


def build_with_midpoint_anchor(
    l: float, r: float, n: int, xi: float, ratio_bound: float = 10.0
) -> Grid:
    """Uniform grid perturbed so xi lies exactly midway between two nodes.

    At most the cells next to xi change size.  If xi is already a cell
    midpoint (or coincides with a node, whose neighbors already bracket it
    symmetrically) the uniform grid is returned unchanged.  Preferably a
    single node is moved; when that would break the spacing-ratio bound,
    both bracketing nodes are moved symmetrically onto xi -+ h/2.
    """
    if not (l < xi < r):
        raise GridError(f"xi={xi} must lie strictly inside ({l}, {r})")
    base = build_uniform(l, r, n, ratio_bound)
    points = base.points.copy()
    h = points[1] - points[0]

    j = int(np.searchsorted(points, xi))
    if points[j] == xi:
        # xi on a node: its neighbors bracket it symmetrically already
        return base
    lo, hi = j - 1, j  # cell (points[lo], points[hi]) contains xi
    if abs(0.5 * (points[lo] + points[hi]) - xi) <= 4.0 * np.finfo(float).eps * max(1.0, abs(xi)):
        return base

    t = (xi - points[lo]) / h  # position inside the cell, in (0, 1)
    # moving one bracketing node yields cells of size 2*t*h and 2*(1-t)*h
    single_ok = 2.0 * min(t, 1.0 - t) * h * ratio_bound >= h * (1.0 + 1e-12)
    if single_ok:
        moved = 2.0 * xi - points[hi]  # new position for the lower node
        if lo >= 1:
            points[lo] = moved
        else:
            points[hi] = 2.0 * xi - points[lo]
    else:
        # symmetric fallback: both neighbors onto xi -+ h/2 (three cells
        # change, each within [h/2, 3h/2])
        if lo < 1 or hi > n:
            raise GridError(
                f"cannot anchor xi={xi} this close to the boundary at n={n}; increase n"
            )
        points[lo] = xi - 0.5 * h
        points[hi] = xi + 0.5 * h
    return _finalize(points, ratio_bound, "build_with_midpoint_anchor")


def build_with_node(l: float, r: float, n: int, z: float, ratio_bound: float = 10.0) -> Grid:
    """Grid with n interior points where z is exactly a node.

    Used for first-passage problems so the sub-matrix boundary aligns with
    the passage level.  Both sides of z are uniform; when z falls on a node
    of the plain uniform grid, that grid is returned unchanged.
    """
    if not (l < z < r):
        raise GridError(f"z={z} must lie strictly inside ({l}, {r})")
    base = build_uniform(l, r, n, ratio_bound)
    # exact-node check on the uniform grid
    j = int(np.searchsorted(base.points, z))
    if j < len(base.points) and base.points[j] == z:
        return base

    # split [l, z] into n1 cells and [z, r] into n2 cells, n1 + n2 = n + 1
    frac = (z - l) / (r - l)
    n1 = int(round(frac * (n + 1)))
    n1 = min(max(n1, 1), n)
    n2 = (n + 1) - n1
    left = np.linspace(float(l), float(z), n1 + 1)
    right = np.linspace(float(z), float(r), n2 + 1)
    points = np.concatenate([left, right[1:]])
    points[n1] = z  # exact placement
    return _finalize(points, ratio_bound, "build_with_node")
