"""Dispersion relations, group velocities, and freely propagating packets.

A dispersion is a smooth periodic single-particle energy Sigma on the
Brillouin zone ]-pi, pi]^d; its gradient is the group velocity.  Built-in
families:

* ``nearest_neighbor``: Sigma(p) = m + sum_j (1 - cos p_j), speed <= 1
  per axis, the standard tight-binding band shifted by a mass gap m.
* ``ising``: Sigma(p) = sqrt(1 + lam^2 - 2 lam cos p) in one dimension,
  the quasiparticle band of the transverse-field chain in its gapped
  phases (lam != 1).
* ``flat``: Sigma = const, zero velocity, handy for degenerate checks.

Wave packets carry a smooth momentum profile ghat supported strictly
inside the zone, an optional polynomial weight p^beta, and a time t:

    g_t(x) = (2*pi)**(-d/2) * (2*pi/L)**d * sum_p exp(-i Sigma(p) t + i p.x) ghat(p) p^beta
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence, Tuple

import numpy as np

from lattscat.grid import LatticeState, TorusGrid, inverse_fourier

__all__ = [
    "Dispersion",
    "WavePacket",
    "builtin_dispersion",
    "wave_packet_state",
    "packet_momentum_amplitudes",
    "velocity_support",
    "support_momenta",
    "cone_leakage",
]

MAX_BETA_ORDER = 6


@dataclass(frozen=True)
class Dispersion:
    """Smooth periodic dispersion with its analytic gradient."""

    name: str
    params: dict
    sigma: Callable[..., np.ndarray]
    grad: Callable[..., tuple]

    def sample(self, grid: TorusGrid) -> np.ndarray:
        return np.broadcast_to(np.asarray(self.sigma(*grid.momentum_mesh()), dtype=float), grid.shape).copy()

    def sample_grad(self, grid: TorusGrid) -> tuple:
        return tuple(
            np.broadcast_to(np.asarray(g, dtype=float), grid.shape).copy()
            for g in self.grad(*grid.momentum_mesh())
        )

    def max_speed(self, grid: TorusGrid) -> float:
        comps = self.sample_grad(grid)
        return float(np.max(np.sqrt(sum(c**2 for c in comps))))

    def velocities(self, momenta: np.ndarray) -> np.ndarray:
        """Group velocities at a flat (n, d) array of momentum points."""
        momenta = np.atleast_2d(np.asarray(momenta, dtype=float))
        comps = self.grad(*(momenta[:, i] for i in range(momenta.shape[1])))
        return np.stack([np.broadcast_to(np.asarray(c, float), momenta.shape[:1]) for c in comps], axis=-1)

    def hessian_vanishing_set(self, grid: TorusGrid, tol: float = 1e-9) -> np.ndarray:
        """Grid momenta where |det Hess Sigma| <= tol (reported, not enforced).

        The Hessian is taken by centered differences of the analytic
        gradient at the grid spacing.
        """
        pts = grid.momentum_points()
        h = grid.momentum_spacing
        n, d = pts.shape
        hess = np.empty((n, d, d))
        for j in range(d):
            shift = np.zeros(d)
            shift[j] = h
            vp = self.velocities(pts + shift)
            vm = self.velocities(pts - shift)
            hess[:, :, j] = (vp - vm) / (2.0 * h)
        dets = np.linalg.det(hess)
        return pts[np.abs(dets) <= tol]


def builtin_dispersion(name: str, **params) -> Dispersion:
    """Construct a named dispersion family; rejects non-smooth parameters."""
    if name == "nearest_neighbor":
        mass = float(params.pop("mass", 1.0))
        if params:
            raise ValueError(f"unknown parameters for nearest_neighbor: {sorted(params)}")

        def sigma(*p):
            return mass + sum(1.0 - np.cos(np.asarray(c, float)) for c in p)

        def grad(*p):
            return tuple(np.sin(np.asarray(c, float)) for c in p)

        return Dispersion("nearest_neighbor", {"mass": mass}, sigma, grad)

    if name == "ising":
        lam = float(params.pop("lam", 0.5))
        if params:
            raise ValueError(f"unknown parameters for ising: {sorted(params)}")
        if lam <= 0.0 or abs(lam - 1.0) < 1e-9:
            raise ValueError(f"ising dispersion requires lam > 0, lam != 1; got {lam}")

        def sigma(p):
            return np.sqrt(1.0 + lam**2 - 2.0 * lam * np.cos(np.asarray(p, float)))

        def grad(p):
            p = np.asarray(p, float)
            return (lam * np.sin(p) / np.sqrt(1.0 + lam**2 - 2.0 * lam * np.cos(p)),)

        return Dispersion("ising", {"lam": lam}, sigma, grad)

    if name == "flat":
        value = float(params.pop("value", 0.0))
        if params:
            raise ValueError(f"unknown parameters for flat: {sorted(params)}")

        def sigma(*p):
            return np.zeros(np.broadcast(*p).shape) + value if len(p) > 1 else np.zeros_like(np.asarray(p[0], float)) + value

        def grad(*p):
            return tuple(np.zeros_like(np.asarray(c, float)) for c in p)

        return Dispersion("flat", {"value": value}, sigma, grad)

    raise ValueError(f"unknown dispersion family {name!r}")


@dataclass(frozen=True)
class WavePacket:
    """Momentum profile, polynomial weight multi-index, and a time."""

    profile: object  # momentum-space profile (periodic RadialPlateau or similar)
    beta: Tuple[int, ...] = ()
    t: float = 0.0

    def __post_init__(self):
        beta = tuple(int(b) for b in self.beta)
        if any(b < 0 for b in beta):
            raise ValueError(f"beta must be nonnegative, got {beta}")
        if sum(beta) > MAX_BETA_ORDER:
            raise ValueError(f"|beta| = {sum(beta)} exceeds the cap {MAX_BETA_ORDER}")
        object.__setattr__(self, "beta", beta)


def _check_interior_support(packet: WavePacket, grid: TorusGrid) -> None:
    prof = packet.profile
    center = np.asarray(getattr(prof, "center", (0.0,) * grid.d), dtype=float)
    outer = float(prof.support_radius)
    margin = np.pi - (np.max(np.abs(center)) + outer)
    if margin <= 0.0:
        raise ValueError(
            "momentum profile support touches the Brillouin zone boundary "
            f"(margin {margin:.3g}); wave packets need support strictly inside ]-pi, pi]^d"
        )


def packet_momentum_amplitudes(packet: WavePacket, sigma: Dispersion, grid: TorusGrid) -> np.ndarray:
    """ghat(p) p^beta exp(-i Sigma(p) t) sampled on the momentum grid."""
    _check_interior_support(packet, grid)
    mesh = grid.momentum_mesh()
    values = np.asarray(packet.profile(*mesh), dtype=complex)
    beta = packet.beta if packet.beta else (0,) * grid.d
    if len(beta) != grid.d:
        raise ValueError(f"beta length {len(beta)} does not match d={grid.d}")
    for b, comp in zip(beta, mesh):
        if b:
            values = values * np.asarray(comp, float) ** b
    phase = np.exp(-1j * packet.t * np.asarray(sigma.sigma(*mesh), dtype=float))
    return np.broadcast_to(values * phase, grid.shape).copy()


def wave_packet_state(packet: WavePacket, sigma: Dispersion, grid: TorusGrid) -> LatticeState:
    """Position representation of the freely propagated packet at its time."""
    return inverse_fourier(grid, packet_momentum_amplitudes(packet, sigma, grid))


def support_momenta(profile, grid: TorusGrid) -> np.ndarray:
    """Grid momentum points inside the declared support of a profile."""
    pts = grid.momentum_points()
    mask = profile.support_contains(pts)
    return pts[mask]


def velocity_support(momenta: np.ndarray, sigma: Dispersion):
    """Image point cloud of the group velocity over a momentum set."""
    from lattscat.regions import RegionSet

    momenta = np.atleast_2d(np.asarray(momenta, dtype=float))
    return RegionSet(points=sigma.velocities(momenta), delta=0.0)


def _initial_radius(packet: WavePacket, sigma: Dispersion, grid: TorusGrid, tail: float = 1e-8) -> float:
    """Radius holding all but a relative `tail` of the packet's t=0 mass."""
    frozen = WavePacket(packet.profile, packet.beta, 0.0)
    weights = np.abs(wave_packet_state(frozen, sigma, grid).amplitudes.ravel()) ** 2
    radii = np.max(np.abs(grid.position_points()), axis=1)
    order = np.argsort(radii)
    outside = np.sqrt(np.maximum(weights.sum() - np.cumsum(weights[order]), 0.0))
    cutoff = tail * np.sqrt(weights.sum())
    idx = np.searchsorted(-outside, -cutoff)
    return float(radii[order][min(idx, len(radii) - 1)])


def cone_leakage(packet: WavePacket, sigma: Dispersion, grid: TorusGrid, outside, s: float) -> float:
    """l2 mass of the time-s packet in {x : x/s in outside}.

    ``outside`` is a velocity-space region (see lattscat.regions) whose
    closure must stay clear of the fattened velocity support of the
    packet profile; disjoint supports make this a pure non-stationary
    phase quantity.
    """
    if s <= 0:
        raise ValueError(f"time s must be positive, got {s}")
    vel = velocity_support(support_momenta(packet.profile, grid), sigma)
    sep = outside.separation(vel.points, vel.delta)
    if sep <= 0.0:
        raise ValueError(
            f"outside region overlaps the fattened velocity support (separation {sep:.3g})"
        )
    vmax = float(np.max(np.abs(sigma.velocities(support_momenta(packet.profile, grid)))))
    grid.assert_no_wrap(vmax, s, _initial_radius(packet, sigma, grid))
    moved = WavePacket(packet.profile, packet.beta, float(s))
    state = wave_packet_state(moved, sigma, grid)
    scaled = grid.position_points() / float(s)
    mask = outside.contains(scaled).reshape(grid.shape)
    return float(np.linalg.norm(state.amplitudes[mask]))
