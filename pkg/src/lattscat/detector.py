"""One-particle dilating-detector model on the lattice.

The Hamiltonian is H = Sigma(D) + V(x) on l2(Z_L^d) with a smooth band
Sigma and a rapidly decaying potential V, diagonalized densely once; all
propagation afterwards is exact spectral evolution, so no time-stepping
error enters any decay measurement.  The detector at time t is

    c_t = exp(i t H) chi(D) h(x/t) chi(D) exp(-i t H),

a momentum window chi around the packet's band times a velocity window h
that dilates linearly in time.  Attractive wells are offered so the
orthogonal complement of the scattering states (realized as the span of
bound states) is nontrivial and the annihilation property is testable;
repulsive potentials leave that subspace empty.

``cook_wave_operator`` builds W_t = exp(itH) exp(-itH0) and integrates the
Cook integrand ||V exp(-itH0) psi||; ``compactness_chain_study`` tracks
||c_t psi|| on bound-state vectors together with the tail proxy obtained
by conjugating the dilated window through the free flow, and verifies the
dilation monotonicity of the convex velocity window it uses.
``bostelmann_truncation`` compares chi(D) f(x/t) chi(D) with its rank-one
moment expansion, keeping the zero lattice-comb term.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence, Tuple

import numpy as np

from lattscat.dispersion import Dispersion
from lattscat.grid import GridError, LatticeState, TorusGrid, apply_multiplier, fourier, inverse_fourier
from lattscat.regions import RegionSet, cone_monotone
from lattscat.weyl import LatticeOperator, Symbol, dense_norm, multiplier_operator, weyl_quantize

__all__ = [
    "DetectorError",
    "gaussian_well",
    "kronecker_well",
    "bump_well",
    "HamiltonianModel",
    "DetectorSpec",
    "evolve",
    "free_evolve",
    "cook_wave_operator",
    "CookReport",
    "detector_expectation",
    "free_detector_limit",
    "compactness_chain_study",
    "ChainStudyReport",
    "bostelmann_truncation",
    "BostelmannReport",
    "comb_remainder_norm",
]

EIGEN_RESIDUAL_TOL = 1e-9


class DetectorError(ValueError):
    """Raised for invalid detector configurations."""


def gaussian_well(depth: float, width: float, center: float = 0.0) -> Callable:
    """V(x) = -depth * exp(-(x - center)^2 / (2 width^2)); depth > 0 attracts."""

    def v(*coords):
        sq = sum((np.asarray(c, float) - center) ** 2 for c in coords)
        return -depth * np.exp(-sq / (2.0 * width**2))

    return v


def kronecker_well(depth: float, site: int = 0) -> Callable:
    """Single-site potential -depth at one lattice site."""

    def v(*coords):
        hit = np.ones_like(np.asarray(coords[0], float), dtype=bool)
        for c in coords:
            hit = hit & (np.asarray(c, float) == site)
        return np.where(hit, -depth, 0.0)

    return v


def bump_well(depth: float, radius: float, kind: str = "exp") -> Callable:
    """Compactly supported smooth well of the given radius."""
    from lattscat.profiles import RadialPlateau

    profile = RadialPlateau(center=(0.0,), inner=radius / 2.0, outer=radius, kind=kind)

    def v(*coords):
        return -depth * profile(*coords)

    return v


@dataclass
class HamiltonianModel:
    """Dense spectral data for H = Sigma(D) + V on a torus grid."""

    grid: TorusGrid
    sigma: Dispersion
    potential: np.ndarray
    eigenvalues: np.ndarray = field(init=False)
    eigenvectors: np.ndarray = field(init=False)
    band: Tuple[float, float] = field(init=False)
    bound_margin: float = 1e-6

    @classmethod
    def build(cls, grid: TorusGrid, sigma: Dispersion, potential=None, bound_margin: float = 1e-6):
        if grid.volume > 4096:
            raise GridError(f"dense eigendecomposition capped at 4096 sites, got {grid.volume}")
        if potential is None:
            pvals = np.zeros(grid.shape)
        elif callable(potential):
            pvals = np.broadcast_to(
                np.asarray(potential(*grid.position_mesh()), dtype=float), grid.shape
            ).copy()
        else:
            pvals = np.asarray(potential, dtype=float)
            if pvals.shape != grid.shape:
                raise GridError(f"potential shape {pvals.shape} does not match {grid.shape}")
        model = cls.__new__(cls)
        model.grid = grid
        model.sigma = sigma
        model.potential = pvals
        model.bound_margin = bound_margin
        model._diagonalize()
        return model

    def _diagonalize(self):
        h0 = multiplier_operator(self.grid, self.sigma.sample(self.grid).astype(complex)).kernel
        h = h0 + np.diag(self.potential.ravel())
        h = 0.5 * (h + h.conj().T)
        evals, evecs = np.linalg.eigh(h)
        self.hamiltonian = h
        self.eigenvalues = evals
        self.eigenvectors = evecs
        sig = self.sigma.sample(self.grid)
        self.band = (float(sig.min()), float(sig.max()))
        residual = np.abs(h @ evecs - evecs * evals).max()
        if residual > EIGEN_RESIDUAL_TOL:
            raise DetectorError(f"eigen-residual {residual:.3e} exceeds {EIGEN_RESIDUAL_TOL}")
        self.eigen_residual = float(residual)

    @property
    def bound_mask(self) -> np.ndarray:
        lo, hi = self.band
        return (self.eigenvalues < lo - self.bound_margin) | (self.eigenvalues > hi + self.bound_margin)

    def bound_states(self) -> list:
        """Bound eigenpairs (eigenvalue, LatticeState), deepest first."""
        idx = np.nonzero(self.bound_mask)[0]
        order = np.argsort(self.eigenvalues[idx])
        out = []
        for i in idx[order]:
            vec = self.eigenvectors[:, i].reshape(self.grid.shape)
            out.append((float(self.eigenvalues[i]), LatticeState(self.grid, vec)))
        return out

    def bound_projector(self) -> np.ndarray:
        vecs = self.eigenvectors[:, self.bound_mask]
        return vecs @ vecs.conj().T

    def scattering_projector(self) -> np.ndarray:
        vecs = self.eigenvectors[:, ~self.bound_mask]
        return vecs @ vecs.conj().T


def evolve(model: HamiltonianModel, state: LatticeState, t: float) -> LatticeState:
    """exp(-i t H) psi through the dense eigendecomposition."""
    coeff = model.eigenvectors.conj().T @ state.amplitudes.ravel()
    coeff = coeff * np.exp(-1j * t * model.eigenvalues)
    return LatticeState(model.grid, (model.eigenvectors @ coeff).reshape(model.grid.shape))


def free_evolve(grid: TorusGrid, sigma: Dispersion, state: LatticeState, t: float) -> LatticeState:
    """exp(-i t Sigma(D)) psi via the multiplier path."""
    return apply_multiplier(state, np.exp(-1j * t * sigma.sample(grid)))


@dataclass
class CookReport:
    times: np.ndarray
    integrand: np.ndarray
    tail_estimate: float
    fit_slope: Optional[float]
    plateau_warning: bool
    intertwining_residual: float


def cook_wave_operator(
    model: HamiltonianModel,
    state: LatticeState,
    t_final: float,
    step: float,
    min_speed: float = 0.05,
    support_floor: float = 1e-8,
) -> Tuple[LatticeState, CookReport]:
    """W_T psi = exp(iTH) exp(-iTH0) psi plus the Cook integrand series.

    The packet must be band-limited away from the critical points of the
    dispersion (group speed above ``min_speed`` wherever its momentum
    density exceeds ``support_floor``), and the free flight up to T must
    satisfy the no-wrap condition.
    """
    grid = model.grid
    phat = np.abs(fourier(state)) ** 2
    occupied = phat > support_floor * phat.max()
    speeds = np.sqrt(sum(c**2 for c in model.sigma.sample_grad(grid)))
    vmin = float(speeds[occupied].min())
    if vmin < min_speed:
        raise DetectorError(
            f"packet occupies momenta with group speed {vmin:.3g} < {min_speed}; "
            "Cook integrand would not decay"
        )
    amp2 = (np.abs(state.amplitudes.ravel()) ** 2)
    radii = np.max(np.abs(grid.position_points()), axis=1)
    order = np.argsort(radii)
    tailmass = np.sqrt(np.maximum(amp2.sum() - np.cumsum(amp2[order]), 0.0))
    r0 = float(radii[order][min(np.searchsorted(-tailmass, -1e-6 * state.norm()), len(radii) - 1)])
    grid.assert_no_wrap(float(speeds.max()), t_final, r0)

    times = np.arange(0.0, t_final + 0.5 * step, step)
    vdiag = model.potential
    integrand = np.empty(len(times))
    for i, s in enumerate(times):
        free = free_evolve(grid, model.sigma, state, s)
        integrand[i] = float(np.linalg.norm(vdiag * free.amplitudes))
    # W_T psi = exp(iTH) exp(-iTH0) psi
    free_t = free_evolve(grid, model.sigma, state, t_final)
    w_state = evolve(model, free_t, -t_final)

    peak = int(np.argmax(integrand))
    decaying = integrand[peak:]
    fit_slope = None
    if len(decaying) >= 3 and decaying[-1] > 0:
        ts = times[peak:]
        good = (decaying > 10 * np.finfo(float).eps) & (ts > 0)
        if good.sum() >= 3:
            fit_slope = float(np.polyfit(np.log(ts[good]), np.log(decaying[good]), 1)[0])
    tail_estimate = float(np.trapezoid(integrand[peak:], times[peak:]))
    # warn when the last quarter of the series has stopped decaying
    quarter = decaying[-max(4, len(decaying) // 4) :]
    tq = times[len(times) - len(quarter) :]
    plateau = False
    if len(quarter) >= 4 and quarter.min() > 1e-13:
        tail_slope = float(np.polyfit(np.log(tq), np.log(quarter), 1)[0])
        plateau = tail_slope > -0.5

    # intertwining consistency: exp(-isH) W_T psi vs W_T exp(-isH0) psi;
    # the difference is the wave-operator tail between T - s and T
    s = step
    left = evolve(model, w_state, s)
    shifted = free_evolve(grid, model.sigma, state, s)
    right = evolve(model, free_evolve(grid, model.sigma, shifted, t_final), -t_final)
    intertwine = float(np.linalg.norm(left.amplitudes - right.amplitudes))

    report = CookReport(times, integrand, tail_estimate, fit_slope, plateau, intertwine)
    return w_state, report


@dataclass(frozen=True)
class DetectorSpec:
    """Momentum window chi and dilating velocity window h with support flags.

    With ``check_velocity_support`` the group-velocity image of the chi
    support must land inside the declared support of h (the lattice
    reading of the momentum/velocity support-compatibility condition);
    ``require_away_from_zero`` additionally demands that the h support
    excludes a neighbourhood of zero velocity, the regime in which bound
    states are annihilated.
    """

    chi: object
    h: object
    check_velocity_support: bool = True
    require_away_from_zero: bool = False

    def h_support_interval(self) -> Tuple[float, float]:
        if hasattr(self.h, "support_interval"):
            return self.h.support_interval
        r = float(self.h.support_radius)
        return (-r, r)

    def validate(self, model: HamiltonianModel, slack: float = 1e-9) -> dict:
        """Verify the support constraints; returns both support readings."""
        grid = model.grid
        momenta = grid.momentum_points()
        chi_mask = self.chi.support_contains(momenta)
        report = {}
        if not chi_mask.any():
            raise DetectorError("chi has no support on the momentum grid")
        velocities = model.sigma.velocities(momenta[chi_mask])
        if grid.d == 1:
            lo, hi = self.h_support_interval()
            inside_vel = bool((velocities[:, 0] >= lo - slack).all() and (velocities[:, 0] <= hi + slack).all())
            raw = momenta[chi_mask][:, 0]
            inside_raw = bool((raw >= lo - slack).all() and (raw <= hi + slack).all())
        else:
            inside_vel = bool(self.h.support_contains(velocities, slack).all())
            inside_raw = bool(self.h.support_contains(momenta[chi_mask], slack).all())
        report["velocity_support_inside_h"] = inside_vel
        report["momentum_support_inside_h"] = inside_raw
        if self.check_velocity_support and not inside_vel:
            raise DetectorError("velocity image of the chi support is not contained in supp h")
        if self.require_away_from_zero:
            lo, hi = self.h_support_interval()
            if lo <= 0.0 <= hi:
                raise DetectorError("h support must exclude zero velocity for annihilation studies")
            report["h_excludes_zero"] = True
        return report


def _detector_core(model: HamiltonianModel, spec: DetectorSpec, state: LatticeState, t: float) -> LatticeState:
    """chi(D) h(x/t) chi(D) exp(-itH) psi (without the final exp(itH))."""
    grid = model.grid
    chivals = np.broadcast_to(
        np.asarray(spec.chi(*grid.momentum_mesh()), dtype=complex), grid.shape
    )
    evolved = evolve(model, state, t)
    cut = apply_multiplier(evolved, chivals)
    hvals = np.broadcast_to(
        np.asarray(spec.h(*(np.asarray(c) / t for c in grid.position_mesh())), dtype=float),
        grid.shape,
    )
    windowed = LatticeState(grid, hvals * cut.amplitudes)
    return apply_multiplier(windowed, chivals)


def detector_expectation(model: HamiltonianModel, spec: DetectorSpec, state: LatticeState, t: float) -> float:
    """<psi, c_t psi> with c_t = exp(itH) chi(D) h(x/t) chi(D) exp(-itH)."""
    if t <= 0:
        raise DetectorError(f"detector time must be positive, got {t}")
    grid = model.grid
    chivals = np.broadcast_to(
        np.asarray(spec.chi(*grid.momentum_mesh()), dtype=complex), grid.shape
    )
    evolved = evolve(model, state, t)
    cut = apply_multiplier(evolved, chivals)
    hvals = np.broadcast_to(
        np.asarray(spec.h(*(np.asarray(c) / t for c in grid.position_mesh())), dtype=float),
        grid.shape,
    )
    return float(np.real(np.vdot(cut.amplitudes, hvals * cut.amplitudes)))


def free_detector_limit(model: HamiltonianModel, spec: DetectorSpec, state: LatticeState) -> float:
    """Stationary-phase limit sum_p h(grad Sigma(p)) |chi(p) psi_hat(p)|^2 dmu.

    The momentum-space value the detector expectation approaches for V=0.
    """
    grid = model.grid
    phat = fourier(state)
    chivals = np.broadcast_to(
        np.asarray(spec.chi(*grid.momentum_mesh()), dtype=complex), grid.shape
    )
    velocities = model.sigma.sample_grad(grid)
    hvals = np.broadcast_to(np.asarray(spec.h(*velocities), dtype=float), grid.shape)
    weight = (2.0 * np.pi / grid.L) ** grid.d
    return float(np.sum(hvals * np.abs(chivals * phat) ** 2) * weight)


@dataclass
class ChainStudyReport:
    times: np.ndarray
    detector_norms: np.ndarray
    tail_proxy: np.ndarray
    onset_index: int
    monotone_after_onset: bool
    cone_checks: int
    cone_violations: int
    final_norm: float
    conclusive: bool


def compactness_chain_study(
    model: HamiltonianModel,
    spec: DetectorSpec,
    state: LatticeState,
    times: Sequence[float],
    threshold: float = 1e-3,
    bound_span_tol: float = 1e-8,
    s_grid_points: int = 9,
) -> ChainStudyReport:
    """Track ||c_t psi|| for psi in the bound-state span, with the tail proxy.

    The tail proxy integrates, over s in [t, t_max], the norm of the
    free-conjugated dilated window applied to exp(isH0) V exp(-isH) psi;
    the dilation monotonicity of the convex velocity window entering the
    argument is verified through ``regions.cone_monotone`` on grid points.
    """
    grid = model.grid
    if grid.d != 1:
        raise DetectorError("compactness chain study implemented for d = 1")
    times = np.asarray(sorted(times), dtype=float)
    if times[0] <= 0:
        raise DetectorError("times must be positive")
    pb = model.bound_projector()
    flat = state.amplitudes.ravel()
    off = float(np.linalg.norm(pb @ flat - flat))
    if off > bound_span_tol * max(state.norm(), 1e-300):
        raise DetectorError(
            f"state is not in the bound-state span (off-span norm {off:.3e}); "
            "the orthogonal complement of the scattering range is realized as that span"
        )
    spec.validate(model)

    chivals = np.broadcast_to(
        np.asarray(spec.chi(*grid.momentum_mesh()), dtype=complex), grid.shape
    )
    det_norms = np.empty(len(times))
    for i, t in enumerate(times):
        det_norms[i] = _detector_core(model, spec, state, t).norm()

    # tail proxy: the free-conjugated window applied along the interaction flow
    sig_samples = model.sigma.sample(grid)
    vdiag = model.potential
    s_max = times[-1]
    tail = np.empty(len(times))
    for i, t in enumerate(times):
        svals = np.linspace(t, s_max, s_grid_points)
        h_shift = np.broadcast_to(
            np.asarray(spec.h(*(np.asarray(c) / t for c in grid.position_mesh())), dtype=float),
            grid.shape,
        )
        norms = np.empty(len(svals))
        for j, s in enumerate(svals):
            ves = evolve(model, state, s)
            kicked = LatticeState(grid, vdiag * ves.amplitudes)
            freeback = apply_multiplier(kicked, np.exp(1j * s * sig_samples))
            # conjugate h(x/t) through the free flow: exp(itSigma) h_t exp(-itSigma)
            inner = apply_multiplier(freeback, chivals)
            inner = apply_multiplier(inner, np.exp(-1j * t * sig_samples))
            inner = LatticeState(grid, h_shift * inner.amplitudes)
            inner = apply_multiplier(inner, np.exp(1j * t * sig_samples))
            inner = apply_multiplier(inner, chivals)
            norms[j] = inner.norm()
        tail[i] = float(np.trapezoid(norms, svals))

    onset = int(np.argmax(det_norms))
    after = det_norms[onset:]
    monotone = bool(np.all(np.diff(after) <= 1e-12 + 1e-6 * after[:-1]))

    # dilation monotonicity of the convex set (supp h) - Vel(supp chi), which
    # contains zero exactly because the velocity image lies inside supp h
    lo, hi = spec.h_support_interval()
    momenta = grid.momentum_points()
    chi_mask = spec.chi.support_contains(momenta)
    vel = model.sigma.velocities(momenta[chi_mask])
    h_pts = np.array([[lo], [hi]])
    window_pts = (h_pts[:, None, :] - vel[None, :, :]).reshape(-1, grid.d)
    cone = RegionSet(window_pts, 0.0)
    checks = 0
    violations = 0
    sample_x = grid.position_points()[:: max(1, grid.volume // 64)]
    for x in sample_x:
        for ti, tj in itertools.combinations(times[:: max(1, len(times) // 4)], 2):
            first, second = cone_monotone(cone, x, min(ti, tj), max(ti, tj))
            checks += 1
            if first and not second:
                violations += 1

    conclusive = bool(det_norms[-1] <= threshold)
    return ChainStudyReport(
        times=times,
        detector_norms=det_norms,
        tail_proxy=tail,
        onset_index=onset,
        monotone_after_onset=monotone,
        cone_checks=checks,
        cone_violations=violations,
        final_norm=float(det_norms[-1]),
        conclusive=conclusive,
    )


# ---------------------------------------------------------------------------
# rank-one moment expansion of chi(D) f(x/t) chi(D)


@dataclass
class BostelmannReport:
    residual: float
    order: int
    comb_estimate: float
    tail_increment: float
    converged: bool


def _quad_nodes(span: float, panels: int = 24, order: int = 48):
    """Composite Gauss-Legendre nodes and weights on [-span, span]."""
    nodes, weights = np.polynomial.legendre.leggauss(order)
    edges = np.linspace(-span, span, panels + 1)
    mid = 0.5 * (edges[1:] + edges[:-1])
    half = 0.5 * np.diff(edges)
    xs = (mid[:, None] + half[:, None] * nodes).ravel()
    ws = (half[:, None] * weights).ravel()
    return xs, ws


def _moments(profile: Callable, radius: float, orders: int) -> np.ndarray:
    """Integrals of x^m times the profile by composite Gauss-Legendre quadrature."""
    xs, ws = _quad_nodes(max(10.0 * radius, 5.0), panels=64, order=64)
    fx = np.asarray(profile(xs), dtype=float) * ws
    powers = xs[None, :] ** np.arange(orders + 1)[:, None]
    return powers @ fx


def comb_remainder_norm(ghat_samples: np.ndarray, profile: Callable, radius: float, grid: TorusGrid, t: float, ell_max: int = 3) -> float:
    """Norm of the nonzero lattice-comb part of chi(D) f(x/t) chi(D).

    Built from the momentum kernel ghat(p) fhat(t(p - q + 2 pi ell)) ghat(q)
    summed over ell != 0, with fhat tabulated by direct quadrature on a
    fine position grid.
    """
    if grid.d != 1:
        raise DetectorError("comb remainder implemented for d = 1")
    L = grid.L
    p = grid.momentum_coords
    xs, ws = _quad_nodes(max(10.0 * radius, 5.0))
    fw = np.asarray(profile(xs), dtype=float) * ws

    def fhat(zeta: np.ndarray) -> np.ndarray:
        # (2 pi)^(-1/2) int f(x) exp(-i zeta x) dx on the shared nodes
        flat = zeta.ravel()
        out = np.empty(flat.shape, dtype=complex)
        chunk = 4096
        for start in range(0, len(flat), chunk):
            z = flat[start : start + chunk, None]
            out[start : start + chunk] = np.exp(-1j * z * xs) @ fw
        return out.reshape(zeta.shape) / np.sqrt(2.0 * np.pi)

    dq = p[:, None] - p[None, :]
    kernel = np.zeros((L, L), dtype=complex)
    for ell in range(-ell_max, ell_max + 1):
        if ell == 0:
            continue
        kernel += fhat(t * (dq + 2.0 * np.pi * ell))
    kernel *= (2.0 * np.pi) ** (-0.5) * t * ghat_samples[:, None] * ghat_samples[None, :]
    # operator on the dual grid with measure (2 pi / L): uniform weights
    kernel *= 2.0 * np.pi / L
    return dense_norm(kernel)


def bostelmann_truncation(
    ghat,
    profile: Callable,
    radius: float,
    grid: TorusGrid,
    t: float,
    tolerance: float = 1e-7,
    order_cap: int = 60,
) -> BostelmannReport:
    """Compare chi(D) f(x/t) chi(D) against its rank-one moment expansion.

    The expansion keeps the zero lattice-comb term,

        sum_{a,b} c_ab |ghat(k) k^a >< ghat(k) k^b|,
        c_ab = (2 pi)^(-1) (-1)^b (-i)^(a+b) t^(1+a+b) mu_(a+b) / (a! b!),

    with mu_m the position moments of the profile computed by quadrature.
    The total order is raised until the operator-norm increment of the
    last layer drops below ``tolerance``; the nonzero-comb remainder is
    estimated separately and bounds what the truncation can achieve.
    """
    if grid.d != 1:
        raise DetectorError("rank-one expansion implemented for d = 1, single particle")
    if t * np.pi * radius > 10.0:
        raise DetectorError(
            f"outside the convergence guard t * pi * radius = {t * np.pi * radius:.3g} > 10"
        )
    L = grid.L
    gs = np.asarray(ghat(*grid.momentum_mesh()), dtype=float)
    lhs = multiplier_operator(grid, gs.astype(complex)).kernel
    hvals = np.asarray(profile(grid.site_coords / t), dtype=float)
    lhs = lhs @ np.diag(hvals) @ multiplier_operator(grid, gs.astype(complex)).kernel

    moments = _moments(profile, radius, order_cap)
    p = grid.momentum_coords
    # position vectors of the weighted states ghat(k) k^a
    vectors = []
    from math import factorial

    rhs = np.zeros((L, L), dtype=complex)
    increments = []
    converged = False
    order_used = 0
    for total in range(order_cap + 1):
        layer = np.zeros((L, L), dtype=complex)
        for a in range(total + 1):
            b = total - a
            while len(vectors) <= max(a, b):
                m = len(vectors)
                vec = inverse_fourier(grid, (gs * p**m).astype(complex)).amplitudes
                vectors.append(vec)
            c = (
                (2.0 * np.pi) ** (-1.0)
                * (-1.0) ** b
                * (-1j) ** (a + b)
                * t ** (1 + a + b)
                * moments[a + b]
                / (factorial(a) * factorial(b))
            )
            layer += c * np.outer(vectors[a], vectors[b].conj())
        rhs += layer
        inc = dense_norm(layer)
        increments.append(inc)
        order_used = total
        if total >= 2 and inc < tolerance and increments[-2] < tolerance:
            converged = True
            break

    ell_needed = int(np.ceil((radius * t + grid.L / 2.0) / grid.L)) + 1
    comb = comb_remainder_norm(gs, profile, radius, grid, t, ell_max=max(2, ell_needed))
    residual = dense_norm(lhs - rhs)
    return BostelmannReport(
        residual=float(residual),
        order=order_used,
        comb_estimate=float(comb),
        tail_increment=float(increments[-1]),
        converged=converged,
    )
