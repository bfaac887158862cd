"""Weyl quantization on the discrete torus and the operator-lemma residuals.

The quantization of a symbol a(x, xi) is the dense kernel

    K(x, y) = (2*pi/L)**d * (2*pi)**(-d) * sum_xi a(m(x,y), xi) * exp(i w(x,y).xi)

over the momentum grid, a Riemann sum of the continuum midpoint formula.
On the torus the pair (midpoint, difference) is taken per axis from the
minimal representative w in [-L/2, L/2) of x - y, with m = y + w/2 folded
back into the window; for the antipodal tie |x - y| = L/2 the two
representatives are averaged, which keeps real symbols exactly
self-adjoint.  For unwrapped pairs this reduces to the plain window
formula.  The exp(i w.xi) sum collapses to one inverse FFT, so the
prefactors cancel and K(x, y) = ifft_xi[a(m, .)][(x - y) mod L].

Symbols whose scaled position support a(x/t, .) outstrips the window are
evaluated in periodized form, sum_j a((x + j L)/t, xi), the exact torus
analog of the line symbol; ``scaled_symbol`` handles this.

Residual studies quantify three operator expansions:

* ``expansion_residual_moyal``: h(x/t) ghat(D) minus its Weyl symbol plus
  (i/2t) (grad h)(x/t) . (grad ghat) correction; decays like t**-2.
* ``localization_residual``: (1 - h(x/t)) a_t^w with h = 1 on the x-support
  of a; decays faster than any polynomial.
* ``conjugation_residual``: exp(i Sigma(D) t) a_t^w exp(-i Sigma(D) t)
  against the transported symbol a(x/t + grad Sigma(xi), xi); t**-2.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Optional, Sequence, Union

import numpy as np

from lattscat.grid import GridError, LatticeState, TorusGrid, spectral_derivative
from lattscat.dispersion import Dispersion

__all__ = [
    "Symbol",
    "SymbolError",
    "LatticeOperator",
    "PowerIterationError",
    "weyl_quantize",
    "multiplier_operator",
    "position_operator",
    "operator_norm",
    "schur_bound",
    "dense_norm",
    "scaled_symbol",
    "periodized_profile_values",
    "momentum_gradient_samples",
    "expansion_residual_moyal",
    "localization_residual",
    "conjugation_residual",
]

DENSE_ROW_CAP = 4096


class SymbolError(ValueError):
    """Raised for symbols that cannot be evaluated as required."""


class PowerIterationError(RuntimeError):
    """Power iteration failed to converge; carries the last estimate."""

    def __init__(self, message: str, last_estimate: float, iterations: int):
        super().__init__(message)
        self.last_estimate = last_estimate
        self.iterations = iterations


@dataclass(frozen=True)
class Symbol:
    """Phase-space symbol; either a general callable or a separable pair.

    ``func(*x, *xi)`` receives d position arrays followed by d momentum
    arrays (mutually broadcastable) and must be evaluable at half-integer
    positions.  Separable symbols carry the factors instead, with the
    momentum factor given as a callable or as samples on the momentum
    grid in FFT layout (the only points quantization ever needs).
    ``x_support_radius`` is the declared position-support radius; None
    means unbounded.
    """

    func: Optional[Callable] = None
    x_func: Optional[Callable] = None
    xi_values: Union[Callable, np.ndarray, None] = None
    x_support_radius: Optional[float] = None

    @classmethod
    def of(cls, func: Callable, x_support_radius: Optional[float] = None) -> "Symbol":
        return cls(func=func, x_support_radius=x_support_radius)

    @classmethod
    def separable(
        cls,
        x_func: Callable,
        xi_values: Union[Callable, np.ndarray],
        x_support_radius: Optional[float] = None,
    ) -> "Symbol":
        return cls(x_func=x_func, xi_values=xi_values, x_support_radius=x_support_radius)

    @property
    def is_separable(self) -> bool:
        return self.func is None

    def as_callable(self) -> Callable:
        if self.func is not None:
            return self.func
        if callable(self.xi_values):
            xf, gf = self.x_func, self.xi_values

            def joint(*coords):
                d = len(coords) // 2
                return np.asarray(xf(*coords[:d])) * np.asarray(gf(*coords[d:]))

            return joint
        raise SymbolError("separable symbol with sampled momentum factor has no pointwise callable")


@dataclass
class LatticeOperator:
    """Dense complex kernel on grid sites (flattened FFT layout)."""

    grid: TorusGrid
    kernel: np.ndarray

    def __post_init__(self):
        n = self.grid.volume
        kernel = np.asarray(self.kernel, dtype=complex)
        if kernel.shape != (n, n):
            raise GridError(f"kernel shape {kernel.shape} does not match grid volume {n}")
        self.kernel = kernel

    def apply(self, state: LatticeState) -> LatticeState:
        out = self.kernel @ state.amplitudes.ravel()
        return LatticeState(self.grid, out.reshape(self.grid.shape))

    def adjoint(self) -> "LatticeOperator":
        return LatticeOperator(self.grid, self.kernel.conj().T)

    def __add__(self, other: "LatticeOperator") -> "LatticeOperator":
        return LatticeOperator(self.grid, self.kernel + other.kernel)

    def __sub__(self, other: "LatticeOperator") -> "LatticeOperator":
        return LatticeOperator(self.grid, self.kernel - other.kernel)

    def __mul__(self, scalar: complex) -> "LatticeOperator":
        return LatticeOperator(self.grid, self.kernel * scalar)

    __rmul__ = __mul__

    def __matmul__(self, other: "LatticeOperator") -> "LatticeOperator":
        return LatticeOperator(self.grid, self.kernel @ other.kernel)


def _check_dense_cap(grid: TorusGrid) -> None:
    if grid.volume > DENSE_ROW_CAP:
        raise GridError(
            f"dense kernels are capped at {DENSE_ROW_CAP} rows; grid has {grid.volume}"
        )


def _pair_tables(grid: TorusGrid):
    """Per-axis (L, L) tables of difference index, midpoint indices, ties."""
    L = grid.L
    s = grid.site_coords
    diff = s[:, None] - s[None, :]
    r = np.mod(diff, L).astype(np.int64)
    wmin = np.mod(diff + L / 2.0, L) - L / 2.0
    tie = r == L // 2

    def mid_index(w):
        m = s[None, :] + w / 2.0
        m = np.mod(m + L / 2.0, L) - L / 2.0
        return np.round(2.0 * (m + L / 2.0)).astype(np.int64) % (2 * L)

    return r, mid_index(wmin), mid_index(np.full_like(diff, L / 2.0)), tie


def _axis_views(tables, d):
    """Reshape per-axis (L, L) tables so they broadcast over flattened pairs."""
    out = []
    for ax, tab in enumerate(tables):
        shape = [1] * (2 * d)
        shape[ax] = tab.shape[0]
        shape[d + ax] = tab.shape[1]
        out.append(tab.reshape(shape))
    return out


def _evaluate_f_table(a: Symbol, grid: TorusGrid) -> np.ndarray:
    """ifft over xi of a(m, xi) for all half-integer midpoints m.

    Returns shape (2L,)*d + (L,)*d, flattened later for gathering.
    """
    L, d = grid.L, grid.d
    mvals = (np.arange(2 * L) - L) / 2.0
    func = a.as_callable()
    n_mid = (2 * L) ** d
    mid_mesh = np.meshgrid(*([mvals] * d), indexing="ij")
    mid_flat = [m.ravel() for m in mid_mesh]
    xi_mesh = grid.momentum_mesh()
    out = np.empty((n_mid,) + grid.shape, dtype=complex)
    chunk = max(1, int(2**22 // max(1, grid.volume)))
    for start in range(0, n_mid, chunk):
        stop = min(n_mid, start + chunk)
        xargs = [m[start:stop].reshape((-1,) + (1,) * d) for m in mid_flat]
        xiargs = [np.asarray(x)[None, ...] for x in xi_mesh]
        vals = np.asarray(func(*xargs, *xiargs), dtype=complex)
        vals = np.broadcast_to(vals, (stop - start,) + grid.shape)
        if not np.all(np.isfinite(vals)):
            raise SymbolError("symbol evaluation produced non-finite values at half-integer points")
        out[start:stop] = np.fft.ifftn(vals, axes=tuple(range(1, d + 1)))
    return out.reshape((n_mid, grid.volume))


def _xi_samples(a: Symbol, grid: TorusGrid) -> np.ndarray:
    if callable(a.xi_values):
        vals = np.asarray(a.xi_values(*grid.momentum_mesh()), dtype=complex)
        return np.broadcast_to(vals, grid.shape).copy()
    vals = np.asarray(a.xi_values, dtype=complex)
    if vals.shape != grid.shape:
        raise SymbolError(f"sampled momentum factor shape {vals.shape} does not match {grid.shape}")
    return vals


def weyl_quantize(a: Symbol, grid: TorusGrid) -> LatticeOperator:
    """Dense midpoint quantization of a symbol on the torus."""
    _check_dense_cap(grid)
    L, d = grid.L, grid.d
    n = grid.volume
    r_t, m0_t, m1_t, tie_t = _pair_tables(grid)
    # per-axis views of the shared tables (the tables are axis-independent)
    r_ax = _axis_views([r_t] * d, d)
    m_ax = {0: _axis_views([m0_t] * d, d), 1: _axis_views([m1_t] * d, d)}
    tie_ax = _axis_views([tie_t] * d, d)

    if a.is_separable:
        mvals = (np.arange(2 * L) - L) / 2.0
        x_mesh = np.meshgrid(*([mvals] * d), indexing="ij", sparse=True)
        xv = np.broadcast_to(np.asarray(a.x_func(*x_mesh), dtype=complex), (2 * L,) * d).ravel()
        gv = np.fft.ifftn(_xi_samples(a, grid)).ravel()

        def gather(jm, jr):
            return xv[jm] * gv[jr]

    else:
        f_table = _evaluate_f_table(a, grid)

        def gather(jm, jr):
            return f_table[jm, jr]

    # joint flat difference index, shared by every representative choice
    jr = np.zeros((1,) * (2 * d), dtype=np.int64)
    for ax in range(d):
        jr = jr * L + r_ax[ax]
    jr = np.broadcast_to(jr, (L,) * (2 * d)).reshape(n, n)

    kernel = np.zeros((n, n), dtype=complex)
    any_tie = bool(tie_t.any())
    for assignment in itertools.product((0, 1), repeat=d):
        if 1 in assignment and not any_tie:
            continue
        jm = np.zeros((1,) * (2 * d), dtype=np.int64)
        weight = np.ones((1,) * (2 * d))
        for ax, pick in enumerate(assignment):
            jm = jm * (2 * L) + m_ax[pick][ax]
            if pick == 0:
                weight = weight * np.where(tie_ax[ax], 0.5, 1.0)
            else:
                weight = weight * np.where(tie_ax[ax], 0.5, 0.0)
        if not weight.any():
            continue
        jm = np.broadcast_to(jm, (L,) * (2 * d)).reshape(n, n)
        weight = np.broadcast_to(weight, (L,) * (2 * d)).reshape(n, n)
        if weight.min() == 1.0:
            kernel += gather(jm, jr)
        else:
            kernel += weight * gather(jm, jr)
    return LatticeOperator(grid, kernel)


def multiplier_operator(grid: TorusGrid, m) -> LatticeOperator:
    """Dense matrix of a momentum multiplier m(D)."""
    _check_dense_cap(grid)
    from lattscat.grid import _multiplier_values

    L, d, n = grid.L, grid.d, grid.volume
    gv = np.fft.ifftn(_multiplier_values(grid, m)).ravel()
    r_t = _pair_tables(grid)[0]
    r_ax = _axis_views([r_t] * d, d)
    jr = np.zeros((1,) * (2 * d), dtype=np.int64)
    for ax in range(d):
        jr = jr * L + r_ax[ax]
    jr = np.broadcast_to(jr, (L,) * (2 * d)).reshape(n, n)
    return LatticeOperator(grid, gv[jr])


def position_operator(grid: TorusGrid, values) -> LatticeOperator:
    """Dense diagonal matrix of a position-space multiplication operator."""
    _check_dense_cap(grid)
    if callable(values):
        values = np.asarray(values(*grid.position_mesh()), dtype=complex)
        values = np.broadcast_to(values, grid.shape)
    else:
        values = np.asarray(values, dtype=complex)
        if values.shape != grid.shape:
            raise GridError(f"position values shape {values.shape} does not match {grid.shape}")
    return LatticeOperator(grid, np.diag(values.ravel()))


def operator_norm(
    op: Union[LatticeOperator, np.ndarray],
    tol: float = 1e-9,
    max_iter: int = 5000,
    seed: int = 0,
    block: int = 8,
) -> float:
    """Largest singular value by (block) power iteration on K*K.

    A small orthonormal block is iterated instead of a single vector so
    that clustered top singular values do not stall the Rayleigh
    estimate.  Stops when the estimate changes by less than tol relative;
    raises PowerIterationError (carrying the last iterate) at the cap.
    """
    kernel = op.kernel if isinstance(op, LatticeOperator) else np.asarray(op)
    if tol <= 0:
        raise ValueError(f"tol must be positive, got {tol}")
    if kernel.size == 0 or np.abs(kernel).max() == 0.0:
        return 0.0
    n = kernel.shape[1]
    q = max(1, min(block, n))
    rng = np.random.default_rng(seed)
    v = rng.normal(size=(n, q)) + 1j * rng.normal(size=(n, q))
    v, _ = np.linalg.qr(v)
    kh = kernel.conj().T
    sigma_old = 0.0
    delta_old = np.inf
    for _ in range(1, max_iter + 1):
        u = kernel @ v
        sigma = float(np.linalg.svd(u, compute_uv=False)[0])
        w = kh @ u
        v, _ = np.linalg.qr(w)
        delta = abs(sigma - sigma_old)
        # Ritz values increase geometrically toward the norm; extrapolate
        # the remaining tail from the contraction of successive increments.
        if delta == 0.0:
            return sigma
        rho = delta / delta_old if delta_old > 0 else 1.0
        tail = delta * rho / (1.0 - rho) if rho < 1.0 else np.inf
        if delta + tail <= 0.5 * tol * max(sigma, np.finfo(float).tiny):
            return sigma
        sigma_old, delta_old = sigma, delta
    raise PowerIterationError(
        f"power iteration did not converge within {max_iter} iterations", float(sigma_old), max_iter
    )


def schur_bound(op: Union[LatticeOperator, np.ndarray]) -> float:
    """(max row l1 sum * max column l1 sum)**1/2, always >= the operator norm."""
    kernel = op.kernel if isinstance(op, LatticeOperator) else np.asarray(op)
    absk = np.abs(kernel)
    return float(np.sqrt(absk.sum(axis=1).max() * absk.sum(axis=0).max()))


def dense_norm(op: Union[LatticeOperator, np.ndarray]) -> float:
    """Exact largest singular value via LAPACK; the dense-matrix oracle."""
    kernel = op.kernel if isinstance(op, LatticeOperator) else np.asarray(op)
    if kernel.size == 0 or np.abs(kernel).max() == 0.0:
        return 0.0
    from scipy.linalg import svdvals

    return float(svdvals(kernel)[0])


def _translate_count(radius: Optional[float], t: float, L: int) -> int:
    if radius is None:
        raise SymbolError("periodized scaling needs a declared x-support radius")
    return int(np.floor((radius * t + L / 2.0) / L + 1e-12))


def periodized_profile_values(
    profile_func: Callable, grid: TorusGrid, t: float, radius: Optional[float], axis: Optional[int] = None
):
    """Samples of sum_j f((x + jL)/t) on the sites (axis selects a gradient component).

    Also returns the matching periodized callable for midpoint evaluation.
    """
    L, d = grid.L, grid.d
    J = _translate_count(radius, t, L)
    shifts = list(itertools.product(*([range(-J, J + 1)] * d)))

    def periodized(*coords):
        total = 0.0
        for jvec in shifts:
            args = [(np.asarray(c, float) + j * L) / t for c, j in zip(coords, jvec)]
            vals = profile_func(*args)
            total = total + (vals[axis] if axis is not None else vals)
        return total

    site_values = np.broadcast_to(
        np.asarray(periodized(*grid.position_mesh()), dtype=float), grid.shape
    ).copy()
    return site_values, periodized


def scaled_symbol(a: Symbol, grid: TorusGrid, t: float) -> Symbol:
    """The symbol a(x/t, xi), periodized over window translates in x."""
    L, d = grid.L, grid.d
    J = _translate_count(a.x_support_radius, t, L)
    shifts = list(itertools.product(*([range(-J, J + 1)] * d)))

    if a.is_separable:
        xf = a.x_func

        def xper(*coords):
            return sum(
                xf(*[(np.asarray(c, float) + j * L) / t for c, j in zip(coords, jvec)])
                for jvec in shifts
            )

        return Symbol.separable(xper, a.xi_values, a.x_support_radius)

    func = a.func

    def per(*coords):
        x, xi = coords[:d], coords[d:]
        return sum(
            func(*[(np.asarray(c, float) + j * L) / t for c, j in zip(x, jvec)], *xi)
            for jvec in shifts
        )

    return Symbol.of(per, a.x_support_radius)


def momentum_gradient_samples(profile, grid: TorusGrid, mode: str = "auto"):
    """Per-axis gradient samples of a momentum profile on the grid.

    Returns (tuple of arrays, resolved mode).  ``auto`` prefers the
    profile's analytic gradient, falling back to spectral differentiation
    of the sampled values.
    """
    if mode not in ("auto", "analytic", "spectral"):
        raise ValueError(f"unknown gradient mode {mode!r}")
    has_grad = hasattr(profile, "gradient")
    if mode == "analytic" and not has_grad:
        raise ValueError("profile has no analytic gradient")
    if mode in ("auto", "analytic") and has_grad:
        comps = profile.gradient(*grid.momentum_mesh())
        return tuple(np.broadcast_to(np.asarray(c, complex), grid.shape).copy() for c in comps), "analytic"
    samples = np.broadcast_to(
        np.asarray(profile(*grid.momentum_mesh()), dtype=complex), grid.shape
    ).copy()
    return (
        tuple(spectral_derivative(grid, samples, axis) for axis in range(grid.d)),
        "spectral",
    )


def _residual_norm(kernel: np.ndarray, method: str, tol: float) -> float:
    """Norm of a residual kernel: exact SVD oracle or power iteration."""
    if method == "exact":
        return dense_norm(kernel)
    if method == "power":
        return operator_norm(kernel, tol=tol)
    raise ValueError(f"unknown norm method {method!r}")


def expansion_residual_moyal(
    h_profile,
    g_profile,
    grid: TorusGrid,
    t: float,
    norm_tol: float = 1e-9,
    gradient_mode: str = "auto",
    norm_method: str = "exact",
) -> float:
    """|| h(x/t) ghat(D) - (h_t ghat)^w - (i/2t)((grad h)_t . grad ghat)^w ||."""
    if t < 1:
        raise ValueError(f"t must be >= 1, got {t}")
    radius = h_profile.support_radius
    g_samples = np.broadcast_to(
        np.asarray(g_profile(*grid.momentum_mesh()), dtype=complex), grid.shape
    ).copy()
    mg = multiplier_operator(grid, g_samples)

    h_sites, h_per = periodized_profile_values(h_profile, grid, t, radius)
    lhs = LatticeOperator(grid, h_sites.ravel()[:, None] * mg.kernel)

    q0 = weyl_quantize(Symbol.separable(h_per, g_samples, radius), grid)

    g_grads, _ = momentum_gradient_samples(g_profile, grid, gradient_mode)
    correction = np.zeros_like(lhs.kernel)
    for axis in range(grid.d):
        _, dh_per = periodized_profile_values(h_profile.gradient, grid, t, radius, axis=axis)
        q1 = weyl_quantize(Symbol.separable(dh_per, g_grads[axis], radius), grid)
        correction += q1.kernel
    residual = lhs.kernel - q0.kernel - (1j / (2.0 * t)) * correction
    return _residual_norm(residual, norm_method, norm_tol)


def localization_residual(
    h_profile,
    a: Symbol,
    grid: TorusGrid,
    t: float,
    norm_tol: float = 1e-9,
    norm_method: str = "exact",
) -> float:
    """|| (1 - h(x/t)) (a_t)^w || with h identically one on the x-support of a."""
    if t < 1:
        raise ValueError(f"t must be >= 1, got {t}")
    if a.x_support_radius is None:
        raise SymbolError("localization residual needs a declared x-support radius")
    if a.x_support_radius * t >= grid.L / 2.0:
        raise GridError(
            f"scaled symbol support {a.x_support_radius * t} does not fit the half window {grid.L / 2}"
        )
    # sampled check that h == 1 on the declared support
    pts = grid.position_points() / t
    inside = np.linalg.norm(pts, axis=1) <= a.x_support_radius
    hvals = np.asarray(h_profile(*(pts[inside, i] for i in range(grid.d))), dtype=float)
    if inside.any() and np.max(np.abs(hvals - 1.0)) > 1e-12:
        raise ValueError("h is not identically 1 on the declared x-support of the symbol")

    h_sites, _ = periodized_profile_values(h_profile, grid, t, h_profile.support_radius)
    a_op = weyl_quantize(scaled_symbol(a, grid, t), grid)
    residual = (1.0 - h_sites.ravel())[:, None] * a_op.kernel
    return _residual_norm(residual, norm_method, norm_tol)


def conjugation_residual(
    a: Symbol,
    sigma: Dispersion,
    grid: TorusGrid,
    t: float,
    norm_tol: float = 1e-9,
    norm_method: str = "exact",
) -> float:
    """|| exp(i Sigma(D) t) (a_t)^w exp(-i Sigma(D) t) - (a1_t)^w ||,
    with a1(x, xi) = a(x + grad Sigma(xi), xi)."""
    if t < 1:
        raise ValueError(f"t must be >= 1, got {t}")
    d = grid.d
    sig_samples = sigma.sample(grid)
    phase = np.exp(1j * t * sig_samples)
    e_plus = multiplier_operator(grid, phase)
    e_minus = multiplier_operator(grid, phase.conj())

    a_op = weyl_quantize(scaled_symbol(a, grid, t), grid)
    lhs = e_plus.kernel @ a_op.kernel @ e_minus.kernel

    func = a.as_callable()
    grad = sigma.grad

    def transported(*coords):
        x, xi = coords[:d], coords[d:]
        vel = grad(*xi)
        return func(*[np.asarray(c, float) + np.asarray(v, float) for c, v in zip(x, vel)], *xi)

    radius = None
    if a.x_support_radius is not None:
        radius = a.x_support_radius + sigma.max_speed(grid)
    a1 = Symbol.of(transported, radius)
    rhs = weyl_quantize(scaled_symbol(a1, grid, t), grid)
    return _residual_norm(lhs - rhs.kernel, norm_method, norm_tol)
