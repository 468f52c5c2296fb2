"""Randomized shape generators with deterministic per-seed output.

Polygons come from convex hulls of points snapped to a rational grid, so
every generated vertex is exact.  Grid sets are unions of overlapping boxes
and balls, rejected until the occupancy is face-connected and its boundary
is connected; pairs destined for cell-exact decomposition checks
additionally restrict the smaller body to a plain box (see
gen_decomposition_pair).  Because random pairs essentially never achieve
equality in the volume bounds, the pair generators can deliberately plant
translate and symmetric-homothet pairs at a configured rate.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from scipy import ndimage

from .exact2d import ConvexPolygon, GeometryError, Point2, scale, translate
from .voxel import GridSet, ShapeSpec, is_boundary_connected, rasterize

PLANT_TRANSLATE = "translate"
PLANT_HOMOTHETIC_SYMMETRIC = "homothetic_symmetric"


def trial_rng(root_seed: int, trial: int) -> random.Random:
    """Independent stream for one trial, reproducible in isolation."""
    return random.Random(f"{root_seed}:{trial}")


@dataclass(frozen=True)
class PolygonGenParams:
    min_vertices: int = 3
    max_vertices: int = 10
    coord_range: int = 3          # coordinates drawn from [-range, range]
    snap_denominator: int = 16
    max_retries: int = 64

    def validate(self) -> None:
        if not (3 <= self.min_vertices <= self.max_vertices):
            raise GeometryError("vertex count range must satisfy 3 <= lo <= hi")
        if self.coord_range <= 0 or self.snap_denominator <= 0:
            raise GeometryError("coordinate range and snap must be positive")


def _snapped_point(rng: random.Random, params: PolygonGenParams) -> tuple:
    d = params.snap_denominator
    span = params.coord_range * d
    return (Fraction(rng.randint(-span, span), d),
            Fraction(rng.randint(-span, span), d))


def gen_convex_polygon(rng: random.Random,
                       params: PolygonGenParams = PolygonGenParams()
                       ) -> ConvexPolygon:
    """Random convex polygon: hull of snapped points, vertex count bounded.

    Degenerate draws (hull too thin or too many vertices) are retried up to
    the configured budget.
    """
    params.validate()
    for _ in range(params.max_retries):
        n_points = rng.randint(params.min_vertices, params.max_vertices) + 3
        pts = [_snapped_point(rng, params) for _ in range(n_points)]
        try:
            poly = ConvexPolygon.hull(pts)
        except GeometryError:
            continue
        if params.min_vertices <= len(poly) <= params.max_vertices:
            return poly
    raise GeometryError("polygon generator exhausted its retry budget")


def gen_symmetric_polygon(rng: random.Random,
                          params: PolygonGenParams = PolygonGenParams()
                          ) -> ConvexPolygon:
    """Random centrally symmetric polygon (hull of a point set and its
    reflection, so -P equals P exactly)."""
    params.validate()
    for _ in range(params.max_retries):
        half = max(2, rng.randint(params.min_vertices, params.max_vertices) // 2)
        pts = [_snapped_point(rng, params) for _ in range(half + 1)]
        pts += [(-x, -y) for x, y in pts]
        try:
            poly = ConvexPolygon.hull(pts)
        except GeometryError:
            continue
        if len(poly) <= params.max_vertices + 2:
            return poly
    raise GeometryError("symmetric polygon generator exhausted its retry budget")


def random_lattice_shift(rng: random.Random,
                         params: PolygonGenParams) -> Point2:
    d = params.snap_denominator
    span = params.coord_range * d
    return Point2(Fraction(rng.randint(-span, span), d),
                  Fraction(rng.randint(-span, span), d))


def gen_polygon_pair(rng: random.Random,
                     params: PolygonGenParams = PolygonGenParams(),
                     plant_rate: float = 0.0,
                     plant_mode: Optional[str] = None
                     ) -> tuple[ConvexPolygon, ConvexPolygon, Optional[str]]:
    """Generate (K, T) with optional equality-case planting.

    With probability plant_rate the pair is a planted equality case:
    either a translate pair, or a symmetric body with a scaled translate
    (mode picked at random unless forced via plant_mode).  Returns the
    planted mode (None for an independent pair).
    """
    if not 0.0 <= plant_rate <= 1.0:
        raise GeometryError("plant rate must lie in [0, 1]")
    if rng.random() < plant_rate:
        mode = plant_mode or rng.choice(
            [PLANT_TRANSLATE, PLANT_HOMOTHETIC_SYMMETRIC])
        if mode == PLANT_TRANSLATE:
            k = gen_convex_polygon(rng, params)
            t = translate(k, random_lattice_shift(rng, params))
            return k, t, mode
        if mode == PLANT_HOMOTHETIC_SYMMETRIC:
            k = gen_symmetric_polygon(rng, params)
            d = params.snap_denominator
            ratio = Fraction(rng.randint(1, 2 * d), d)
            if ratio == 1:
                ratio = Fraction(d + 1, d)
            t = translate(scale(k, ratio), random_lattice_shift(rng, params))
            return k, t, mode
        raise GeometryError(f"unknown plant mode {mode!r}")
    return (gen_convex_polygon(rng, params),
            gen_convex_polygon(rng, params), None)


# ---------------------------------------------------------------------------
# Connected-boundary grid sets
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GridGenParams:
    max_primitives: int = 3
    min_size: float = 0.4
    max_size: float = 1.0
    center_range: float = 0.6
    allow_balls: bool = True
    max_retries: int = 60

    def validate(self) -> None:
        if not (0 < self.min_size <= self.max_size):
            raise GeometryError("size range must satisfy 0 < lo <= hi")
        if self.max_primitives < 1:
            raise GeometryError("need at least one primitive")


def _snap(value: float, h: float) -> float:
    # Snap world coordinates to quarter cells: keeps specs reproducible in
    # JSON (short decimal fractions) without aligning to cell boundaries.
    q = h / 4.0
    return round(value / q) * q


def _random_primitive(rng: random.Random, params: GridGenParams, dim: int,
                      h: float, center: list[float]) -> ShapeSpec:
    size = rng.uniform(params.min_size, params.max_size)
    if params.allow_balls and rng.random() < 0.5:
        return ShapeSpec.ball([_snap(c, h) for c in center],
                              _snap(max(size / 2, 2.5 * h), h))
    half = [max(rng.uniform(0.4, 1.0) * size / 2, 2.5 * h) for _ in range(dim)]
    return ShapeSpec.box([_snap(c - w, h) for c, w in zip(center, half)],
                         [_snap(c + w, h) for c, w in zip(center, half)])


def _face_connected(grid: GridSet) -> bool:
    structure = ndimage.generate_binary_structure(grid.dim, 1)
    _, num = ndimage.label(grid.occ, structure=structure)
    return num == 1


def gen_connected_boundary_set(seed_rng: random.Random,
                               params: GridGenParams,
                               dim: int, h: float
                               ) -> tuple[GridSet, ShapeSpec]:
    """Random union of overlapping primitives with a connected boundary.

    Each added primitive must keep the occupancy face-connected; the final
    set must additionally pass the boundary-connectivity filter (an annulus
    made by near-coincident parts would fail it).  Rejected draws are
    resampled within a bounded budget.
    """
    params.validate()
    for _ in range(params.max_retries):
        n_parts = seed_rng.randint(1, params.max_primitives)
        center = [seed_rng.uniform(-params.center_range / 2,
                                   params.center_range / 2) for _ in range(dim)]
        spec = _random_primitive(seed_rng, params, dim, h, center)
        grid = rasterize(spec, h)
        ok = grid.count > 0 and _face_connected(grid)
        attempts = 0
        while ok and spec_count(spec) < n_parts and attempts < 8:
            attempts += 1
            lo, hi = spec.bbox()
            new_center = [seed_rng.uniform(lo[k] - 0.2, hi[k] + 0.2)
                          for k in range(dim)]
            candidate = ShapeSpec.union_of(
                spec, _random_primitive(seed_rng, params, dim, h, new_center))
            candidate_grid = rasterize(candidate, h)
            if _face_connected(candidate_grid):
                spec, grid = candidate, candidate_grid
        if ok and is_boundary_connected(grid):
            return grid, spec
    raise GeometryError("grid generator exhausted its rejection budget")


def spec_count(spec: ShapeSpec) -> int:
    """Number of primitive leaves in a spec tree."""
    if not spec.children:
        return 1
    return sum(spec_count(c) for c in spec.children)


def gen_box_set(rng: random.Random, dim: int, h: float,
                min_size: float = 0.3, max_size: float = 0.9
                ) -> tuple[GridSet, ShapeSpec]:
    """Single axis-aligned box, randomly placed and sized."""
    center = [rng.uniform(-0.3, 0.3) for _ in range(dim)]
    half = [max(rng.uniform(min_size, max_size) / 2, 2.5 * h)
            for _ in range(dim)]
    spec = ShapeSpec.box([_snap(c - w, h) for c, w in zip(center, half)],
                         [_snap(c + w, h) for c, w in zip(center, half)])
    return rasterize(spec, h), spec


def gen_decomposition_pair(rng: random.Random, params: GridGenParams,
                           dim: int, h: float
                           ) -> tuple[GridSet, ShapeSpec, GridSet, ShapeSpec]:
    """Pair (K, T) safe for cell-exact decomposition checks: K is a random
    connected-boundary union, T a plain box no larger than K.

    A one-cell-thick boundary can be crossed diagonally by a full-adjacency
    path wherever it steps diagonally itself (digital topology: 8-paths
    cross 4-thin curves), which breaks the discrete sum decomposition when
    the smaller body's rim has such steps (balls, reflex corners).  An
    axis-aligned box rim has none, so restricting the smaller body to plain
    boxes keeps every decomposition identity cell-exact.
    """
    k_grid, k_spec = gen_connected_boundary_set(rng, params, dim, h)
    t_grid, t_spec = gen_box_set(rng, dim, h)
    while t_grid.count > k_grid.count:
        lo, hi = t_spec.bbox()
        shrink = 0.8 * (k_grid.count / t_grid.count) ** (1.0 / dim)
        center = (lo + hi) / 2
        half = (hi - lo) / 2 * shrink
        half = [max(float(w), 2.0 * h) for w in half]
        t_spec = ShapeSpec.box([_snap(float(c - w), h)
                                for c, w in zip(center, half)],
                               [_snap(float(c + w), h)
                                for c, w in zip(center, half)])
        shrunk = rasterize(t_spec, h)
        if shrunk.count == t_grid.count:
            break
        t_grid = shrunk
    return k_grid, k_spec, t_grid, t_spec
