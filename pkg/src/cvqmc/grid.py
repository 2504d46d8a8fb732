"""Discretized multimode wavefunctions on uniform position grids.

A mode lives on a symmetric grid of ``n_points`` samples covering
``[-half_width, half_width)`` and carries a basis tag (position or
momentum).  Multimode states are dense complex arrays with one axis per
mode, row-major.

Fourier convention
------------------
Position and momentum wavefunctions are related by the kernel

    psi_mom(p) = (1 / (2 sqrt(pi))) * integral dq psi(q) exp(-i q p / 2)

which is unitary.  Under this kernel a centered Gaussian of width ``s``
maps to a centered Gaussian of width ``2/s``, and a position shift by
``a`` multiplies the momentum wavefunction by ``exp(-i a p / 2)``.  The
momentum grid conjugate to a position grid with spacing ``dx`` spans
``[-2 pi / dx, 2 pi / dx)``; callers needing broader momentum support
must refine the position spacing (it is never rescaled silently).

All operations are pure: they accept wavefunctions and return new ones.
Amplitude arrays are marked read-only after construction.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Callable, Sequence

import numpy as np
import scipy.fft as _fft

SQRT_PI = float(np.sqrt(np.pi))

#: Tolerance used by normalization checks throughout the package.
NORM_TOL = 1e-10


class SupportError(ValueError):
    """State support (or a required window) does not fit the grid."""


class BasisError(ValueError):
    """A mode is not in the basis an operation requires."""


class Basis(Enum):
    POSITION = "position"
    MOMENTUM = "momentum"


@dataclass(frozen=True)
class Grid:
    """Uniform symmetric grid, points x_k = -half_width + k * spacing."""

    n_points: int
    half_width: float

    def __post_init__(self):
        n = self.n_points
        if n < 8 or (n & (n - 1)) != 0:
            raise ValueError(f"n_points must be a power of two >= 8, got {n}")
        if not self.half_width > 0:
            raise ValueError(f"half_width must be positive, got {self.half_width}")

    @property
    def spacing(self) -> float:
        return 2.0 * self.half_width / self.n_points

    def points(self) -> np.ndarray:
        return -self.half_width + self.spacing * np.arange(self.n_points)

    def conjugate(self) -> "Grid":
        """Momentum grid paired with this position grid (and vice versa)."""
        return Grid(self.n_points, 2.0 * np.pi / self.spacing)


def make_grid(n_points: int, half_width: float) -> Grid:
    return Grid(n_points, float(half_width))


@dataclass(frozen=True)
class WaveFunction:
    """Multimode state: per-mode (grid, basis) plus a dense amplitude array."""

    modes: tuple[tuple[Grid, Basis], ...]
    amplitudes: np.ndarray

    def __post_init__(self):
        shape = tuple(g.n_points for g, _ in self.modes)
        if self.amplitudes.shape != shape:
            raise ValueError(
                f"amplitude shape {self.amplitudes.shape} does not match grids {shape}"
            )
        self.amplitudes.setflags(write=False)

    @property
    def n_modes(self) -> int:
        return len(self.modes)

    def grid(self, mode: int) -> Grid:
        return self.modes[mode][0]

    def basis(self, mode: int) -> Basis:
        return self.modes[mode][1]

    def volume_element(self) -> float:
        v = 1.0
        for g, _ in self.modes:
            v *= g.spacing
        return v

    def norm_squared(self) -> float:
        a = self.amplitudes
        return float(np.real(np.vdot(a, a))) * self.volume_element()

    def norm(self) -> float:
        return float(np.sqrt(self.norm_squared()))


def wavefunction(amplitudes: np.ndarray, grids, bases=None) -> WaveFunction:
    """Wrap an amplitude array; grids may be a single Grid for one mode."""
    if isinstance(grids, Grid):
        grids = (grids,)
    if bases is None:
        bases = (Basis.POSITION,) * len(grids)
    elif isinstance(bases, Basis):
        bases = (bases,) * len(grids)
    amp = np.asarray(amplitudes, dtype=np.complex128)
    return WaveFunction(tuple(zip(grids, bases)), amp)


def product_state(*wfs: WaveFunction) -> WaveFunction:
    """Tensor product, modes concatenated in argument order."""
    amp = wfs[0].amplitudes
    modes = list(wfs[0].modes)
    for w in wfs[1:]:
        amp = np.multiply.outer(amp, w.amplitudes)
        modes.extend(w.modes)
    return WaveFunction(tuple(modes), amp)


def _check_same_structure(a: WaveFunction, b: WaveFunction):
    if len(a.modes) != len(b.modes):
        raise ValueError("mode count mismatch")
    for (ga, ba), (gb, bb) in zip(a.modes, b.modes):
        if ga != gb:
            raise ValueError(f"grid mismatch: {ga} vs {gb}")
        if ba != bb:
            raise BasisError(f"basis mismatch: {ba} vs {bb}")


def inner_product(a: WaveFunction, b: WaveFunction) -> complex:
    """Discrete <a|b>: conjugate dot product times the volume element."""
    _check_same_structure(a, b)
    return complex(np.vdot(a.amplitudes, b.amplitudes)) * a.volume_element()


def _axis_sign(n: int, ndim: int, axis: int) -> np.ndarray:
    sign = (-1.0) ** np.arange(n)
    shape = [1] * ndim
    shape[axis] = n
    return sign.reshape(shape)


def _fft_mom(amp: np.ndarray, dx: float, axis: int) -> np.ndarray:
    # (dx / 2 sqrt(pi)) (-1)^j FFT[(-1)^k amp_k]; the sign flips center both
    # grids at zero and the leftover global phase exp(-i N pi / 2) is unity
    # because N is a multiple of four.
    sign = _axis_sign(amp.shape[axis], amp.ndim, axis)
    out = _fft.fft(amp * sign, axis=axis, workers=-1)
    out *= sign * (dx / (2.0 * SQRT_PI))
    return out


def _fft_pos(amp: np.ndarray, dp: float, axis: int) -> np.ndarray:
    n = amp.shape[axis]
    sign = _axis_sign(n, amp.ndim, axis)
    out = _fft.ifft(amp * sign, axis=axis, workers=-1)
    out *= sign * (dp * n / (2.0 * SQRT_PI))
    return out


def to_momentum(wf: WaveFunction, mode: int) -> WaveFunction:
    """Rotate one mode from position to momentum basis (exactly unitary)."""
    g, basis = wf.modes[mode]
    if basis is not Basis.POSITION:
        raise BasisError(f"mode {mode} already in momentum basis")
    amp = _fft_mom(wf.amplitudes, g.spacing, mode)
    modes = list(wf.modes)
    modes[mode] = (g.conjugate(), Basis.MOMENTUM)
    return WaveFunction(tuple(modes), amp)


def to_position(wf: WaveFunction, mode: int) -> WaveFunction:
    """Inverse of :func:`to_momentum`; round trip is identity to 1e-10."""
    g, basis = wf.modes[mode]
    if basis is not Basis.MOMENTUM:
        raise BasisError(f"mode {mode} already in position basis")
    amp = _fft_pos(wf.amplitudes, g.spacing, mode)
    modes = list(wf.modes)
    modes[mode] = (g.conjugate(), Basis.POSITION)
    return WaveFunction(tuple(modes), amp)


def apply_diagonal_phase(
    wf: WaveFunction,
    modes: Sequence[int],
    phase_fn: Callable[..., np.ndarray],
) -> WaveFunction:
    """Multiply amplitudes by exp(i * phase_fn(coords of the listed modes)).

    ``phase_fn`` receives one broadcast-ready coordinate array per listed
    mode (each reshaped to align with its axis) and must return a real
    array.  Norm is unchanged.
    """
    modes = tuple(modes)
    coords = []
    for m in modes:
        g, _ = wf.modes[m]
        shape = [1] * wf.n_modes
        shape[m] = g.n_points
        coords.append(g.points().reshape(shape))
    phase = phase_fn(*coords)
    if np.iscomplexobj(phase):
        raise ValueError("phase_fn must return a real array")
    return WaveFunction(wf.modes, wf.amplitudes * np.exp(1j * phase))


def partial_project(wf: WaveFunction, mode: int, bra: WaveFunction) -> WaveFunction:
    """Contract one mode against a single-mode bra state.

    Returns the amplitude-weighted remainder; its squared norm is the
    probability of projecting onto ``bra`` on that mode.  The bra should
    be normalized if a probability is wanted.
    """
    if bra.n_modes != 1:
        raise ValueError("bra must be single-mode")
    g, basis = wf.modes[mode]
    gb, bb = bra.modes[0]
    if g != gb:
        raise ValueError("bra grid does not match target mode")
    if basis is not bb:
        raise BasisError("bra basis does not match target mode")
    amp = np.tensordot(np.conj(bra.amplitudes), wf.amplitudes, axes=([0], [mode]))
    amp = amp * g.spacing
    modes = wf.modes[:mode] + wf.modes[mode + 1 :]
    return WaveFunction(modes, amp)


def mode_marginal(wf: WaveFunction, mode: int) -> np.ndarray:
    """Probability marginal |psi|^2 integrated over all other modes."""
    prob = np.abs(wf.amplitudes) ** 2
    axes = tuple(i for i in range(wf.n_modes) if i != mode)
    other = wf.volume_element() / wf.grid(mode).spacing
    return prob.sum(axis=axes) * other


def check_support(wf: WaveFunction, mode: int | None = None, frac: float = 0.10,
                  mass_tol: float = 1e-8) -> None:
    """Raise SupportError if outer-``frac`` of a grid holds >= ``mass_tol``
    of that mode's probability mass (per the boundary-truncation rule)."""
    targets = range(wf.n_modes) if mode is None else (mode,)
    for m in targets:
        g, _ = wf.modes[m]
        marg = mode_marginal(wf, m) * g.spacing
        total = marg.sum()
        if total == 0:
            continue
        x = g.points()
        outer = np.abs(x) > (1.0 - frac) * g.half_width
        if marg[outer].sum() > mass_tol * total:
            raise SupportError(
                f"mode {m}: {marg[outer].sum() / total:.2e} of probability mass "
                f"in the outer {frac:.0%} of the grid"
            )


def normalized(wf: WaveFunction) -> WaveFunction:
    n = wf.norm()
    if n == 0:
        raise ValueError("cannot normalize the zero state")
    return WaveFunction(wf.modes, wf.amplitudes / n)
