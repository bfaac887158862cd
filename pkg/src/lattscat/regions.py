"""Point-cloud geometry for velocity supports and energy-momentum sets.

Compact sets are represented as finite point clouds plus a fattening
radius delta: the set meant is ``points + closed ball B(0, delta)``.
Hulls, Minkowski sums, and fattening act exactly on that representation;
distances between fattened hulls reduce to one primitive, the distance
from the origin to the convex hull of a cloud, solved as a small simplex
QP (closed form in one dimension).

Momentum coordinates live on the torus: sums and differences of momenta
are folded back into ]-pi, pi], and distances in (E, p) space combine the
plain energy metric with the wrapped momentum metric.

The module also hosts the three support conditions tying creation
spectra to a spectral window (``check_delta_admissible``), the numerical
convex-inclusion chain that bounds transported phase-space supports away
from the coincidence diagonal (``check_convexity_chain``), and the dilation
monotonicity of indicators of convex sets containing zero
(``cone_monotone``).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

import numpy as np

from lattscat.dispersion import Dispersion
from lattscat.grid import TorusGrid

__all__ = [
    "RegionSet",
    "convex_hull",
    "minkowski_sum",
    "fatten",
    "negate",
    "hull_distance",
    "origin_hull_distance",
    "hull_membership",
    "box_region",
    "ball_region",
    "shell_patch",
    "wrap_momenta",
    "EmptyRegion",
    "FullRegion",
    "BallComplement",
    "SpectrumModel",
    "AdmissibleReport",
    "check_delta_admissible",
    "ChainReport",
    "check_convexity_chain",
    "cone_monotone",
    "cone_monotone_sweep",
]

TWO_PI = 2.0 * np.pi
DEDUP_TOL = 1e-12


def wrap_momenta(values: np.ndarray) -> np.ndarray:
    """Fold momentum coordinates into ]-pi, pi]."""
    out = np.mod(np.asarray(values, dtype=float) + np.pi, TWO_PI) - np.pi
    return np.where(out == -np.pi, np.pi, out)


def _dedup(points: np.ndarray) -> np.ndarray:
    if len(points) == 0:
        return points
    return np.unique(np.round(points / DEDUP_TOL) * DEDUP_TOL, axis=0)


@dataclass
class RegionSet:
    """Finite point cloud in R^dim with a fattening radius."""

    points: np.ndarray
    delta: float = 0.0

    def __post_init__(self):
        pts = np.atleast_2d(np.asarray(self.points, dtype=float))
        if pts.ndim != 2 or pts.shape[0] == 0:
            raise ValueError("RegionSet needs a nonempty (n, dim) point cloud")
        if self.delta < 0:
            raise ValueError(f"delta must be >= 0, got {self.delta}")
        self.points = _dedup(pts)

    @property
    def dim(self) -> int:
        return self.points.shape[1]

    def __len__(self) -> int:
        return len(self.points)


def _hull_vertex_points(points: np.ndarray) -> np.ndarray:
    """Vertices of the convex hull, always a subset of the input points."""
    points = _dedup(np.atleast_2d(points))
    n, dim = points.shape
    if n <= dim + 1:
        return points
    if dim == 1:
        return points[[int(np.argmin(points[:, 0])), int(np.argmax(points[:, 0]))]]
    center = points.mean(axis=0)
    deviations = points - center
    _, svals, vt = np.linalg.svd(deviations, full_matrices=False)
    scale = svals[0] if svals[0] > 0 else 1.0
    rank = int(np.sum(svals > 1e-12 * scale))
    if rank == 0:
        return points[:1]
    if rank < dim:
        reduced = deviations @ vt[:rank].T
        idx = _hull_vertex_indices_full_rank(reduced)
        return points[idx]
    idx = _hull_vertex_indices_full_rank(points)
    return points[idx]


def _hull_vertex_indices_full_rank(points: np.ndarray) -> np.ndarray:
    from scipy.spatial import ConvexHull
    from scipy.spatial import QhullError

    if points.shape[1] == 1:
        return np.array([int(np.argmin(points[:, 0])), int(np.argmax(points[:, 0]))])
    try:
        return ConvexHull(points).vertices
    except QhullError:
        return np.arange(len(points))


def convex_hull(region: RegionSet) -> RegionSet:
    """Region whose cloud is the exact vertex set of the hull."""
    return RegionSet(_hull_vertex_points(region.points), region.delta)


def minkowski_sum(a: RegionSet, b: RegionSet) -> RegionSet:
    """Pairwise sumset cloud; fattening radii add."""
    if a.dim != b.dim:
        raise ValueError(f"dimension mismatch: {a.dim} vs {b.dim}")
    sums = (a.points[:, None, :] + b.points[None, :, :]).reshape(-1, a.dim)
    return RegionSet(sums, a.delta + b.delta)


def fatten(region: RegionSet, delta: float) -> RegionSet:
    if delta < 0:
        raise ValueError(f"fattening radius must be >= 0, got {delta}")
    return RegionSet(region.points, region.delta + delta)


def negate(region: RegionSet) -> RegionSet:
    return RegionSet(-region.points, region.delta)


def origin_hull_distance(points: np.ndarray) -> float:
    """Euclidean distance from the origin to the convex hull of a cloud."""
    points = np.atleast_2d(np.asarray(points, dtype=float))
    if points.shape[1] == 1:
        lo, hi = points[:, 0].min(), points[:, 0].max()
        if lo <= 0.0 <= hi:
            return 0.0
        return float(min(abs(lo), abs(hi)))
    pts = _hull_vertex_points(points)
    if len(pts) == 1:
        return float(np.linalg.norm(pts[0]))
    import cvxpy as cp

    lam = cp.Variable(len(pts), nonneg=True)
    problem = cp.Problem(cp.Minimize(cp.sum_squares(pts.T @ lam)), [cp.sum(lam) == 1])
    problem.solve()
    if problem.status not in ("optimal", "optimal_inaccurate"):
        raise RuntimeError(f"hull-distance QP failed with status {problem.status}")
    return float(np.sqrt(max(problem.value, 0.0)))


def hull_distance(a: RegionSet, b: RegionSet) -> float:
    """Euclidean distance between the fattened hulls (0 if they intersect)."""
    if a.dim != b.dim:
        raise ValueError(f"dimension mismatch: {a.dim} vs {b.dim}")
    pa = _hull_vertex_points(a.points)
    pb = _hull_vertex_points(b.points)
    diffs = (pa[:, None, :] - pb[None, :, :]).reshape(-1, a.dim)
    return max(0.0, origin_hull_distance(diffs) - a.delta - b.delta)


def point_hull_distances(cloud: np.ndarray, queries: np.ndarray) -> np.ndarray:
    """Distance from each query point to the hull of the cloud."""
    queries = np.atleast_2d(np.asarray(queries, dtype=float))
    verts = _hull_vertex_points(cloud)
    return np.array([origin_hull_distance(verts - q) for q in queries])


def hull_membership(region: RegionSet, queries: np.ndarray, slack: float = 1e-9) -> np.ndarray:
    """Whether each query lies in the fattened hull, within a slack."""
    return point_hull_distances(region.points, queries) <= region.delta + slack


# ---------------------------------------------------------------------------
# velocity-space windows for leakage studies


class EmptyRegion:
    """The empty set; leakage over it is identically zero."""

    def contains(self, points: np.ndarray) -> np.ndarray:
        return np.zeros(len(np.atleast_2d(points)), dtype=bool)

    def separation(self, points: np.ndarray, delta: float = 0.0) -> float:
        return np.inf


class FullRegion:
    """All of velocity space; degenerate sanity case returning the full norm."""

    def contains(self, points: np.ndarray) -> np.ndarray:
        return np.ones(len(np.atleast_2d(points)), dtype=bool)

    def separation(self, points: np.ndarray, delta: float = 0.0) -> float:
        return np.inf


class BallComplement:
    """The closed complement {v : |v - center| >= radius} of an open ball."""

    def __init__(self, center, radius: float):
        self.center = np.atleast_1d(np.asarray(center, dtype=float))
        if radius <= 0:
            raise ValueError(f"radius must be positive, got {radius}")
        self.radius = float(radius)

    def contains(self, points: np.ndarray) -> np.ndarray:
        points = np.atleast_2d(np.asarray(points, dtype=float))
        return np.linalg.norm(points - self.center, axis=1) > self.radius

    def separation(self, points: np.ndarray, delta: float = 0.0) -> float:
        """Clearance between this set and the delta-fattened point cloud."""
        points = np.atleast_2d(np.asarray(points, dtype=float))
        inner = self.radius - np.linalg.norm(points - self.center, axis=1).max()
        return float(inner - delta)


# ---------------------------------------------------------------------------
# region constructors for config literals


def box_region(bounds: Sequence[Tuple[float, float]], per_axis: int = 3, delta: float = 0.0) -> RegionSet:
    """Axis-aligned box sampled on a per_axis**dim lattice (corners included)."""
    axes = [np.linspace(lo, hi, max(2, per_axis)) for lo, hi in bounds]
    mesh = np.meshgrid(*axes, indexing="ij")
    return RegionSet(np.stack([m.ravel() for m in mesh], axis=-1), delta)


def ball_region(center, radius: float, n_boundary: int = 16, delta: float = 0.0, seed: int = 0) -> RegionSet:
    """Ball sampled as center plus boundary/interior rings.

    Deterministic in one and two dimensions; higher dimensions use a
    seeded generator at the stated resolution.
    """
    center = np.atleast_1d(np.asarray(center, dtype=float))
    dim = len(center)
    pts = [center]
    fractions = (1.0, 0.5)
    if dim == 1:
        for f in fractions:
            pts.append(center + f * radius)
            pts.append(center - f * radius)
    elif dim == 2:
        angles = TWO_PI * np.arange(n_boundary) / n_boundary
        ring = np.stack([np.cos(angles), np.sin(angles)], axis=-1)
        for f in fractions:
            pts.extend(center + f * radius * ring)
    else:
        rng = np.random.default_rng(seed)
        raw = rng.normal(size=(n_boundary, dim))
        ring = raw / np.linalg.norm(raw, axis=1, keepdims=True)
        for f in fractions:
            pts.extend(center + f * radius * ring)
    return RegionSet(np.array(pts), delta)


def shell_patch(sigma: Dispersion, grid: TorusGrid, center, halfwidth: float, delta: float = 0.0) -> RegionSet:
    """(Sigma(p), p) points for grid momenta in a wrapped box around a center."""
    center = np.atleast_1d(np.asarray(center, dtype=float))
    momenta = grid.momentum_points()
    offset = wrap_momenta(momenta - center)
    mask = np.all(np.abs(offset) <= halfwidth, axis=1)
    if not mask.any():
        raise ValueError("shell patch window contains no grid momenta")
    sel = momenta[mask]
    energies = np.asarray(sigma.sigma(*(sel[:, i] for i in range(sel.shape[1]))), dtype=float)
    return RegionSet(np.concatenate([energies[:, None], sel], axis=1), delta)


# ---------------------------------------------------------------------------
# energy-momentum spectrum model and admissibility


def _ep_distances(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Pairwise distances in (E, p) space: plain energy, wrapped momentum."""
    a = np.atleast_2d(a)
    b = np.atleast_2d(b)
    de = a[:, None, 0] - b[None, :, 0]
    dp = wrap_momenta(a[:, None, 1:] - b[None, :, 1:])
    return np.sqrt(de**2 + np.sum(dp**2, axis=-1))


@dataclass
class SpectrumModel:
    """Energy-momentum spectrum of the free gapped model.

    Components: the ground point (0, 0), the mass shell {(Sigma(p), p)},
    and n-fold shell sumsets up to ``n_max`` (sampled with
    ``momentum_stride`` to keep multi-shell clouds manageable).
    """

    sigma: Dispersion
    grid: TorusGrid
    n_max: int = 2
    momentum_stride: int = 1

    def __post_init__(self):
        if self.n_max < 1:
            raise ValueError("n_max must be >= 1")
        d = self.grid.d
        momenta = self.grid.momentum_points()
        energies = np.asarray(
            self.sigma.sigma(*(momenta[:, i] for i in range(d))), dtype=float
        )
        self._shell = np.concatenate([energies[:, None], momenta], axis=1)
        stride = max(1, int(self.momentum_stride))
        coarse = self._shell[::stride]
        comps = {0: np.zeros((1, 1 + d)), 1: self._shell}
        prev = coarse
        for n in range(2, self.n_max + 1):
            e = prev[:, None, 0] + coarse[None, :, 0]
            p = wrap_momenta(prev[:, None, 1:] + coarse[None, :, 1:])
            prev = np.concatenate(
                [e.reshape(-1, 1), p.reshape(-1, d)], axis=1
            )
            prev = _dedup(np.round(prev, 9))
            comps[n] = prev
        self._components = comps

    def component(self, n: int) -> np.ndarray:
        return self._components[n]

    @property
    def mass_shell(self) -> np.ndarray:
        return self._shell

    def isolation_margins(self) -> dict:
        """Distances separating the shell from the ground point and 2-shell."""
        out = {"shell_to_ground": float(_ep_distances(self._shell, self.component(0)).min())}
        if self.n_max >= 2:
            out["shell_to_two_shell"] = float(_ep_distances(self._shell, self.component(2)).min())
        return out

    def distance_to_components(self, points: np.ndarray, exclude: Sequence[int] = ()) -> float:
        dists = [
            _ep_distances(points, comp).min()
            for n, comp in self._components.items()
            if n not in exclude
        ]
        return float(min(dists)) if dists else np.inf


def _signed_depth(region: RegionSet, queries: np.ndarray) -> np.ndarray:
    """Signed containment depth in the fattened hull: positive inside."""
    from scipy.spatial import ConvexHull, QhullError

    queries = np.atleast_2d(queries)
    verts = _hull_vertex_points(region.points)
    if len(verts) > region.points.shape[1]:
        try:
            hull = ConvexHull(verts)
            vals = queries @ hull.equations[:, :-1].T + hull.equations[:, -1]
            return region.delta - vals.max(axis=1)
        except QhullError:
            pass
    return region.delta - point_hull_distances(verts, queries)


@dataclass
class AdmissibleReport:
    admissible: bool
    margins: dict
    tol: float
    origin_tol: float
    diagnostics: List[str] = field(default_factory=list)


def check_delta_admissible(
    window: RegionSet,
    spectra: Sequence[RegionSet],
    model: SpectrumModel,
    tol: float,
    origin_tol: Optional[float] = None,
) -> AdmissibleReport:
    """Test the three support conditions tying spectra to a spectral window.

    1. each spectrum meets the model spectrum only on the mass shell:
       its distance to every other spectral component exceeds tol;
    2. the (momentum-wrapped) sumset of the spectra lies in the window
       with containment depth above tol;
    3. window - sumset meets the model spectrum only at the origin:
       every difference point farther than ``origin_tol`` from zero stays
       at least tol away from the spectrum.

    Ill-posed inputs yield an inadmissible verdict with diagnostics
    rather than an exception.
    """
    if origin_tol is None:
        origin_tol = max(tol, 2.0 * model.grid.momentum_spacing)
    margins: dict = {}
    diags: List[str] = []
    try:
        d = model.grid.d
        if window.dim != 1 + d:
            raise ValueError(f"window dimension {window.dim} != 1 + d = {1 + d}")
        for i, spec in enumerate(spectra):
            if spec.dim != 1 + d:
                raise ValueError(f"spectrum {i} dimension {spec.dim} != {1 + d}")

        # condition 1: clearance from every non-shell component
        per_spec = []
        for i, spec in enumerate(spectra):
            m = model.distance_to_components(spec.points, exclude=(1,)) - spec.delta
            per_spec.append(m)
            margins[f"on_shell_{i}"] = m
        margins["on_shell"] = float(min(per_spec))

        # condition 2: sumset contained in the window
        sum_pts = spectra[0].points
        sum_delta = spectra[0].delta
        for spec in spectra[1:]:
            sum_pts = (sum_pts[:, None, :] + spec.points[None, :, :]).reshape(-1, 1 + d)
            sum_pts[:, 1:] = wrap_momenta(sum_pts[:, 1:])
            sum_pts = _dedup(sum_pts)
            sum_delta += spec.delta
        depth = _signed_depth(window, sum_pts) - sum_delta
        margins["sumset_in_window"] = float(depth.min())

        # condition 3: window - sumset meets the spectrum only at {0}.
        # Difference points near the ground component ARE the allowed {0}
        # hits (they lie within origin_tol of the origin by construction),
        # so the violation margin is the clearance from the shell components.
        diffs = (window.points[:, None, :] - sum_pts[None, :, :]).reshape(-1, 1 + d)
        diffs[:, 1:] = wrap_momenta(diffs[:, 1:])
        m = model.distance_to_components(diffs, exclude=(0,)) - window.delta - sum_delta
        margins["difference_off_spectrum"] = float(m)

        keys = ("on_shell", "sumset_in_window", "difference_off_spectrum")
        admissible = all(margins[k] > tol for k in keys)
        for k in keys:
            if margins[k] <= tol:
                diags.append(f"condition {k} fails: margin {margins[k]:.4g} <= tol {tol:.4g}")
    except (ValueError, np.linalg.LinAlgError) as exc:
        diags.append(f"ill-posed input: {exc}")
        admissible = False
    return AdmissibleReport(admissible, margins, tol, origin_tol, diags)


# ---------------------------------------------------------------------------
# convex inclusion chain


def _product_points(clouds: Sequence[np.ndarray]) -> np.ndarray:
    """Cartesian product of per-particle clouds, concatenated coordinates."""
    out = clouds[0]
    for cloud in clouds[1:]:
        out = np.concatenate(
            [
                np.repeat(out, len(cloud), axis=0),
                np.tile(cloud, (len(out), 1)),
            ],
            axis=1,
        )
    return out


def _diagonal_distance(points: np.ndarray, n: int, d: int, delta: float) -> float:
    """Distance from the fattened hull of a product cloud to the diagonal."""
    best = np.inf
    for i, j in itertools.combinations(range(n), 2):
        diffs = points[:, i * d : (i + 1) * d] - points[:, j * d : (j + 1) * d]
        best = min(best, origin_hull_distance(_hull_vertex_points(diffs)) / np.sqrt(2.0))
    return float(best - delta)


@dataclass
class ChainReport:
    clearance_zero: float
    pair_gap_zero: float
    spread: float
    threshold: float
    ladder: List[Tuple[float, float]]
    inclusion_margin: float
    diagonal_margin_at_threshold: float
    passed: bool


def check_convexity_chain(
    h_supports: Sequence[RegionSet],
    g_supports: Sequence[RegionSet],
    g_prime_supports: Sequence[RegionSet],
    sigma: Dispersion,
    delta_max: float = 1.0,
    ladder_size: int = 8,
    bisection_steps: int = 40,
    tol: float = 1e-9,
) -> ChainReport:
    """Execute the transported-support inclusion chain and find the largest
    fattening radius keeping the velocity product set away from the diagonal.

    ``h_supports`` are per-particle velocity-space clouds, ``g_supports``
    and ``g_prime_supports`` per-particle momentum clouds mapped through
    the group velocity.  The chain fattens the convex hull of the product
    of the h supports by R(delta) = 4 delta + spread, where spread is the
    largest product-space distance between the two velocity images; the
    report carries the zero-fattening clearance from the diagonal, a
    decreasing delta ladder of margins, the bisected threshold, and a
    product-space verification of the inclusion at the threshold.
    """
    n = len(h_supports)
    if n < 2:
        raise ValueError("the diagonal is empty for fewer than two particles")
    if not (len(g_supports) == len(g_prime_supports) == n):
        raise ValueError("need one momentum support pair per particle")
    d = h_supports[0].dim

    h_clouds = [_hull_vertex_points(r.points) for r in h_supports]
    h_delta = sum(r.delta for r in h_supports)
    vel = [sigma.velocities(r.points) for r in g_supports]
    velp = [sigma.velocities(r.points) for r in g_prime_supports]

    h_prod = _product_points(h_clouds)
    clearance_zero = _diagonal_distance(h_prod, n, d, h_delta)
    if clearance_zero <= 0.0:
        raise ValueError(
            "convex hull of the velocity product meets the diagonal at delta = 0 "
            f"(clearance {clearance_zero:.4g}); supports must be disjoint"
        )
    # minimal coincidence gap min |x_i - x_j| over the hull: the Euclidean
    # diagonal distance rescaled by sqrt(2)
    pair_gap_zero = clearance_zero * np.sqrt(2.0)

    spread_sq = 0.0
    for v, vp, gr, gpr in zip(vel, velp, g_supports, g_prime_supports):
        gap = np.linalg.norm(v[:, None, :] - vp[None, :, :], axis=-1).max()
        spread_sq += (gap + gr.delta + gpr.delta) ** 2
    spread = float(np.sqrt(spread_sq))

    def margin(delta: float) -> float:
        return clearance_zero - (4.0 * delta + spread)

    ladder = []
    for k in range(ladder_size):
        dv = delta_max * 2.0 ** (-k)
        ladder.append((dv, margin(dv)))

    lo, hi = 0.0, delta_max
    if margin(hi) > tol:
        threshold = hi
    elif margin(0.0) <= tol:
        threshold = 0.0
    else:
        for _ in range(bisection_steps):
            mid = 0.5 * (lo + hi)
            if margin(mid) > tol:
                lo = mid
            else:
                hi = mid
        threshold = lo

    # product-space verification of the chain at half the threshold
    dv = 0.5 * threshold if threshold > 0 else 0.0
    s1 = [
        (hv[:, None, :] - vp[None, :, :]).reshape(-1, d)
        for hv, vp in zip(h_clouds, velp)
    ]
    s1_prod = _product_points([_hull_vertex_points(c) for c in s1])
    s2 = RegionSet(_hull_vertex_points(s1_prod), h_delta + 2.0 * dv)
    vel_prod = _product_points([_hull_vertex_points(v) for v in vel])
    s3 = minkowski_sum(s2, RegionSet(vel_prod, 0.0))
    target = RegionSet(_hull_vertex_points(h_prod), 0.0)
    dists = point_hull_distances(target.points, s3.points)
    r_of_delta = 4.0 * dv + spread
    inclusion_margin = float(r_of_delta + tol - (dists.max() + s3.delta - h_delta))
    diag_margin = _diagonal_distance(s3.points, n, d, s3.delta)

    passed = threshold > 0 and inclusion_margin >= 0 and diag_margin > 0
    return ChainReport(
        clearance_zero=clearance_zero,
        pair_gap_zero=pair_gap_zero,
        spread=spread,
        threshold=float(threshold),
        ladder=ladder,
        inclusion_margin=inclusion_margin,
        diagonal_margin_at_threshold=float(diag_margin),
        passed=passed,
    )


# ---------------------------------------------------------------------------
# dilation monotonicity of convex indicators


def cone_monotone(region: RegionSet, x, t: float, s: float, slack: float = 1e-9) -> Tuple[bool, bool]:
    """Membership pair (x/t in K, x/s in K) for a convex K containing zero.

    For t <= s the first membership implies the second; the sweep below
    hammers that implication with random data.
    """
    if not (0 < t <= s):
        raise ValueError(f"need 0 < t <= s, got t={t}, s={s}")
    x = np.atleast_1d(np.asarray(x, dtype=float))
    origin_in = hull_membership(region, np.zeros((1, region.dim)), slack)[0]
    if not origin_in:
        raise ValueError("region hull does not contain the origin")
    members = hull_membership(region, np.vstack([x / t, x / s]), slack)
    return bool(members[0]), bool(members[1])


def cone_monotone_sweep(
    n_samples: int,
    dim: int = 2,
    seed: int = 0,
    cloud_size: int = 6,
    slack: float = 1e-9,
) -> dict:
    """Randomized implication sweep; returns counts and any violations."""
    from scipy.spatial import ConvexHull

    rng = np.random.default_rng(seed)
    violations = 0
    inside_count = 0
    for _ in range(int(n_samples)):
        pts = rng.normal(size=(cloud_size, dim))
        pts -= pts.mean(axis=0)  # centroid at the origin keeps 0 in the hull
        x = rng.normal(size=dim) * rng.uniform(0.5, 2.0)
        t = rng.uniform(0.2, 2.0)
        s = t * (1.0 + rng.uniform(0.0, 4.0))
        if dim == 1:
            lo, hi = pts.min(), pts.max()
            in_t = lo - slack <= x[0] / t <= hi + slack
            in_s = lo - slack <= x[0] / s <= hi + slack
        else:
            hull = ConvexHull(pts)
            eqs = hull.equations
            vals = np.vstack([x / t, x / s]) @ eqs[:, :-1].T + eqs[:, -1]
            in_t, in_s = (vals.max(axis=1) <= slack).tolist()
        if in_t:
            inside_count += 1
            if not in_s:
                violations += 1
    return {
        "samples": int(n_samples),
        "antecedent_true": inside_count,
        "violations": violations,
    }
