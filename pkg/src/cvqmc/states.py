"""Gaussian states, phase gates and reflection operators on the grid.

Width/squeezing convention: a squeezing factor ``r`` produces a position
wavefunction width ``s = exp(-r) / sqrt(2)``; ``r = 0`` is the vacuum
(``s = 1/sqrt(2)``).  All reflections come in an exact rank-one
subtraction form (the reference) and, where relevant, a window-smearing
approximation built from displaced Gaussians, whose error is O(window^2)
plus a squeezing-budget floor.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .grid import (
    Basis,
    BasisError,
    Grid,
    SupportError,
    WaveFunction,
    apply_diagonal_phase,
    inner_product,
    partial_project,
    product_state,
    to_momentum,
    to_position,
    wavefunction,
)

VACUUM_WIDTH = 1.0 / math.sqrt(2.0)


def width_from_squeeze(r: float) -> float:
    """Wavefunction width for squeezing factor r: s = exp(-r)/sqrt(2)."""
    return math.exp(-r) / math.sqrt(2.0)


def squeeze_from_width(s: float) -> float:
    """Inverse of :func:`width_from_squeeze`; requires s > 0."""
    if not s > 0:
        raise ValueError(f"width must be positive, got {s}")
    return -math.log(s * math.sqrt(2.0))


@dataclass(frozen=True)
class GaussianParams:
    """Displacement and width of a squeezed-displaced Gaussian.

    Either ``s`` or ``r`` may be given; the other is derived.  If both
    are given they must satisfy s = exp(-r)/sqrt(2).
    """

    x0: float = 0.0
    s: float | None = None
    r: float | None = None

    def __post_init__(self):
        s, r = self.s, self.r
        if s is None and r is None:
            object.__setattr__(self, "r", 0.0)
            object.__setattr__(self, "s", VACUUM_WIDTH)
        elif s is None:
            object.__setattr__(self, "s", width_from_squeeze(r))
        elif r is None:
            object.__setattr__(self, "r", squeeze_from_width(s))
        else:
            if abs(s - width_from_squeeze(r)) > 1e-9 * max(s, 1.0):
                raise ValueError(f"inconsistent width/squeezing pair s={s}, r={r}")
        if not self.s > 0:
            raise ValueError("width must be positive")


def gaussian_amplitudes(x: np.ndarray, x0: float, s: float) -> np.ndarray:
    """Continuum-normalized Gaussian wavefunction sampled at ``x``."""
    return np.exp(-((x - x0) ** 2) / (2.0 * s * s)) / (math.sqrt(s) * np.pi**0.25)


def gaussian_state(grid: Grid, x0: float = 0.0, s: float | None = None,
                   r: float | None = None) -> WaveFunction:
    """Displaced squeezed Gaussian on a grid, renormalized discretely.

    Raises SupportError if ``x0 +- 5 s`` leaves the grid or the grid
    cannot resolve the width (s < spacing).
    """
    p = GaussianParams(x0, s, r)
    if p.s < grid.spacing:
        raise SupportError(
            f"width {p.s:.3g} below grid spacing {grid.spacing:.3g}"
        )
    if abs(p.x0) + 5.0 * p.s > grid.half_width:
        raise SupportError(
            f"support x0 +- 5 s = [{p.x0 - 5 * p.s:.3g}, {p.x0 + 5 * p.s:.3g}] "
            f"leaves the grid [-{grid.half_width}, {grid.half_width})"
        )
    amp = gaussian_amplitudes(grid.points(), p.x0, p.s).astype(np.complex128)
    amp /= math.sqrt(float(np.sum(np.abs(amp) ** 2)) * grid.spacing)
    return wavefunction(amp, grid)


def vacuum_state(grid: Grid) -> WaveFunction:
    return gaussian_state(grid, 0.0, VACUUM_WIDTH)


def fock_state(grid: Grid, k: int) -> WaveFunction:
    """k-th Hermite-function fixture, orthonormal family whose k=0 member
    is the engine vacuum.  Test fixture, not a simulation primitive."""
    u = grid.points() / VACUUM_WIDTH
    coef = np.zeros(k + 1)
    coef[k] = 1.0
    hk = np.polynomial.hermite.hermval(u, coef)
    amp = hk * np.exp(-(u**2) / 2.0)
    amp = amp.astype(np.complex128)
    amp /= math.sqrt(float(np.sum(np.abs(amp) ** 2)) * grid.spacing)
    return wavefunction(amp, grid)


# ---------------------------------------------------------------------------
# phase gates


def _unit_phase_ramp(hvals: np.ndarray, p2: np.ndarray, n3: int, p3_start: float,
                     dp3: float) -> np.ndarray:
    """exp(-i h p2 p3) over a uniform p3 axis, built as a geometric
    progression of unit phasors (cheap compared to a dense exp)."""
    base = np.multiply.outer(hvals, p2)
    ratio = np.exp(-1j * base * dp3)
    out = np.empty(base.shape + (n3,), dtype=np.complex128)
    out[..., 0] = 1.0
    np.cumprod(
        np.broadcast_to(ratio[..., None], base.shape + (n3 - 1,)),
        axis=-1,
        out=out[..., 1:],
    )
    out *= np.exp(-1j * base * p3_start)[..., None]
    return out


def controlled_rotation(wf: WaveFunction, h: Callable[..., np.ndarray],
                        block: int = 64) -> WaveFunction:
    """Three-mode interaction exp(-i h(q_controls) (x) p_2 (x) p_3).

    The last two modes are the ancillas; every earlier mode is a control
    and must be in the position basis.  Ancillas are rotated to momentum
    internally if needed and returned in their incoming basis.  ``h``
    must accept one array per control mode (vectorized).  Unitary: the
    gate is a pure phase in the mixed basis.
    """
    n = wf.n_modes
    if n < 3:
        raise ValueError("controlled rotation needs at least three modes")
    a2, a3 = n - 2, n - 1
    for m in range(n - 2):
        if wf.basis(m) is not Basis.POSITION:
            raise BasisError(f"control mode {m} must be in the position basis")

    rotated = []
    work = wf
    for m in (a2, a3):
        if work.basis(m) is Basis.POSITION:
            work = to_momentum(work, m)
            rotated.append(m)

    ctrl_grids = [work.grid(m) for m in range(n - 2)]
    mesh = np.meshgrid(*[g.points() for g in ctrl_grids], indexing="ij") \
        if n > 3 else [ctrl_grids[0].points()]
    hvals = np.asarray(h(*mesh), dtype=float)
    hflat = hvals.reshape(-1)

    g2, g3 = work.grid(a2), work.grid(a3)
    p2 = g2.points()
    p3 = g3.points()
    amp = work.amplitudes.reshape(hflat.size, g2.n_points, g3.n_points).copy()
    for lo in range(0, hflat.size, block):
        hi = min(lo + block, hflat.size)
        ph = _unit_phase_ramp(hflat[lo:hi], p2, g3.n_points, p3[0], g3.spacing)
        amp[lo:hi] *= ph
    out = WaveFunction(work.modes, amp.reshape(work.amplitudes.shape))

    for m in reversed(rotated):
        out = to_position(out, m)
    return out


def controlled_shift(wf: WaveFunction, mode: int, amount: float) -> WaveFunction:
    """Displace one position-basis mode by ``amount`` via a momentum-basis
    phase ramp exp(-i amount p / 2) (exact translation of the band-limited
    grid representation)."""
    g, basis = wf.modes[mode]
    if basis is not Basis.POSITION:
        raise BasisError("controlled_shift expects a position-basis mode")
    work = to_momentum(wf, mode)
    work = apply_diagonal_phase(work, (mode,), lambda p: -amount * p / 2.0)
    return to_position(work, mode)


# ---------------------------------------------------------------------------
# reflections


@dataclass(frozen=True)
class ReflectionSpec:
    """Configuration record for the reflection family.

    ``kind`` is one of ``pbl``, ``vacuum-fock``, ``vacuum-via-pbl``,
    ``initial-state``, ``projector``.  ``width`` is the projector state
    width for the projector kind and the sign-flip window otherwise.
    """

    kind: str
    x0: float = 0.0
    width: float = 0.1
    x_off: float = 0.0
    r_max: float = 6.0

    def __post_init__(self):
        if not self.width > 0:
            raise ValueError("width must be positive")


def reflect_about(wf: WaveFunction, state: WaveFunction) -> WaveFunction:
    """Rank-one reflection psi -> psi - 2 <phi|psi> phi / <phi|phi>."""
    ov = inner_product(state, wf) / inner_product(state, state)
    return WaveFunction(wf.modes, wf.amplitudes - 2.0 * ov * state.amplitudes)


def window_indicator(grid: Grid, x0: float, width: float) -> np.ndarray:
    """Boolean mask of grid points with |x - x0| <= width/2 (window edges
    land on the nearest grid points)."""
    return np.abs(grid.points() - x0) <= width / 2.0


def pbl_reflection(wf: WaveFunction, mode: int, x0: float, width: float) -> WaveFunction:
    """Sign flip of all amplitudes inside a position window (the
    Pati-Braunstein-Lloyd gate, realized directly on the diagonal)."""
    g, basis = wf.modes[mode]
    if basis is not Basis.POSITION:
        raise BasisError("pbl_reflection expects a position-basis mode")
    if width < 2.0 * g.spacing:
        raise ValueError(
            f"window {width} narrower than two grid spacings ({2 * g.spacing:.3g}); "
            "the indicator is unresolvable"
        )
    mask = window_indicator(g, x0, width)
    shape = [1] * wf.n_modes
    shape[mode] = g.n_points
    factor = np.where(mask, -1.0, 1.0).reshape(shape)
    return WaveFunction(wf.modes, wf.amplitudes * factor)


def kickback_fixture(grid: Grid, envelope_width: float | None = None) -> WaveFunction:
    """Ancilla state for the kickback realization of the window flip.

    A plane wave of momentum pi (position wavefunction ~ exp(i pi y / 2));
    with no envelope this is an exact discrete momentum eigenvector when
    pi lies on the momentum grid (half_width an even integer), so the
    kickback phase is exactly -1.  A finite Gaussian envelope reproduces
    the non-normalizable ideal up to an O((2/envelope_width)^2) phase
    deficit.
    """
    y = grid.points()
    wave = np.exp(1j * np.pi * y / 2.0)
    if envelope_width is not None:
        wave = wave * gaussian_amplitudes(y, 0.0, envelope_width)
    amp = wave / math.sqrt(float(np.sum(np.abs(wave) ** 2)) * grid.spacing)
    return wavefunction(amp, grid)


def pbl_kickback(wf: WaveFunction, mode: int, x0: float, width: float,
                 ancilla_grid: Grid | None = None,
                 envelope_width: float | None = None) -> WaveFunction:
    """Window flip via an ancilla kickback: attach the fixture, apply
    exp(-i c(q_mode) p_ancilla) with c the window indicator, project the
    ancilla back onto the fixture.  Equivalent to :func:`pbl_reflection`
    up to the fixture's envelope correction."""
    g = wf.grid(mode)
    if ancilla_grid is None:
        ancilla_grid = Grid(64, 8.0)
    fixture = kickback_fixture(ancilla_grid, envelope_width)
    joint = product_state(wf, fixture)
    z = joint.n_modes - 1
    joint = to_momentum(joint, z)
    mask = window_indicator(g, x0, width).astype(float)
    shape_m = [1] * joint.n_modes
    shape_m[mode] = g.n_points

    def phase(x, p):
        c = mask.reshape(shape_m)
        return -c * p

    joint = apply_diagonal_phase(joint, (mode, z), phase)
    joint = to_position(joint, z)
    return partial_project(joint, z, fixture)


def _gauss_legendre(window: float, nodes: int):
    y, w = np.polynomial.legendre.leggauss(nodes)
    return y * window / 2.0, w * window / 2.0


def smear_matrix(grid: Grid, window: float, width: float, center: float = 0.0,
                 nodes: int = 33) -> np.ndarray:
    """Window-smeared Gaussian comparison operator

        M = (2 / window) * integral_{|y| <= window/2} dy |G_{center+y,width}><G_{center+y,width}|

    discretized on the grid (Gauss-Legendre in y).  For width near the
    vacuum width, M approaches twice the vacuum projector as window -> 0,
    with matrix-element error O(window^2)."""
    ys, ws = _gauss_legendre(window, nodes)
    x = grid.points()
    vecs = gaussian_amplitudes(x[None, :], center + ys[:, None], width)
    m = np.einsum("i,ia,ib->ab", ws, vecs, vecs) * (2.0 / window) * grid.spacing
    return m


def _apply_mode_matrices(wf: WaveFunction, mode_mats: dict[int, np.ndarray]) -> np.ndarray:
    amp = wf.amplitudes
    for m, mat in mode_mats.items():
        amp = np.moveaxis(np.tensordot(mat, amp, axes=([1], [m])), 0, m)
    return amp


def vacuum_reflection(wf: WaveFunction, modes: Sequence[int], method: str = "fock",
                      r_max: float = 6.0, window: float = 0.05) -> WaveFunction:
    """Reflection of the joint vacuum of the listed modes.

    ``fock``: exact rank-one subtraction psi - 2 <vac...|psi> |vac...>
    (reference implementation of the vacuum sign flip).

    ``pbl``: window-smearing approximation; each mode contributes a
    comparison operator built from displaced Gaussians of width
    s_vac * sqrt(1 + exp(-2 r_max)) smeared over ``window``.  The
    squeezing budget ``r_max`` sets the excess-width floor; total error
    is O(window^2) + O(exp(-4 r_max)).
    """
    modes = tuple(sorted(modes))
    for m in modes:
        if wf.basis(m) is not Basis.POSITION:
            raise BasisError("vacuum reflection expects position-basis modes")
    if method == "fock":
        vacs = {m: vacuum_state(wf.grid(m)) for m in modes}
        rest = wf
        for m in reversed(modes):
            rest = partial_project(rest, m, vacs[m])
        add = rest.amplitudes
        for i, m in enumerate(modes):
            add = np.multiply.outer(add, vacs[m].amplitudes)
            add = np.moveaxis(add, -1, m)
        return WaveFunction(wf.modes, wf.amplitudes - 2.0 * add)
    if method == "pbl":
        w = VACUUM_WIDTH * math.sqrt(1.0 + math.exp(-2.0 * r_max))
        if window < VACUUM_WIDTH * math.exp(-r_max):
            raise ValueError(
                "window narrower than the squeezed comparison state; "
                "raise window or r_max"
            )
        for m in modes:
            g = wf.grid(m)
            if window / 2.0 + 5.0 * w > g.half_width:
                raise SupportError("smearing window leaves the grid")
        mats = {m: smear_matrix(wf.grid(m), window, w) for m in modes}
        out = _apply_mode_matrices(wf, mats)
        scale = 2.0 ** (1 - len(modes))
        return WaveFunction(wf.modes, wf.amplitudes - scale * out)
    raise ValueError(f"unknown method {method!r}")


def initial_reflection(wf: WaveFunction, method: str = "fock", **kw) -> WaveFunction:
    """Reflection of the all-modes vacuum (the computational start state)."""
    return vacuum_reflection(wf, range(wf.n_modes), method=method, **kw)


def projector_reflection(wf: WaveFunction, width: float, x_off: float,
                         method: str = "exact", pbl_window: float = 0.03,
                         r_max: float = 6.0) -> WaveFunction:
    """Reflection defined by the two-ancilla squeezed-coherent projector,
    I - 2 I (x) P_{0,width} (x) P_{x_off,width}, acting on the last two modes.

    ``exact``: rank-one-per-mode subtraction (reference path).
    ``pbl``: the squeeze/displace/vacuum-reflect composite; the inner
    vacuum reflection uses the window-smearing and the squeeze/displace
    conjugation is carried out analytically on the smearing kernels
    (coordinate rescaling, no state resampling).
    """
    n = wf.n_modes
    if n < 2:
        raise ValueError("projector reflection needs at least two modes")
    m2, m3 = n - 2, n - 1
    for m in (m2, m3):
        if wf.basis(m) is not Basis.POSITION:
            raise BasisError("projector reflection expects position-basis ancillas")
    if method == "exact":
        bras = {
            m2: gaussian_state(wf.grid(m2), 0.0, width),
            m3: gaussian_state(wf.grid(m3), x_off, width),
        }
        rest = partial_project(partial_project(wf, m3, bras[m3]), m2, bras[m2])
        add = np.multiply.outer(
            np.multiply.outer(rest.amplitudes, bras[m2].amplitudes),
            bras[m3].amplitudes,
        )
        return WaveFunction(wf.modes, wf.amplitudes - 2.0 * add)
    if method == "pbl":
        scale = width / VACUUM_WIDTH
        w = VACUUM_WIDTH * math.sqrt(1.0 + math.exp(-2.0 * r_max))
        mats = {
            m2: smear_matrix(wf.grid(m2), scale * pbl_window, scale * w, 0.0),
            m3: smear_matrix(wf.grid(m3), scale * pbl_window, scale * w, x_off),
        }
        out = _apply_mode_matrices(wf, mats)
        return WaveFunction(wf.modes, wf.amplitudes - 0.5 * out)
    raise ValueError(f"unknown method {method!r}")
