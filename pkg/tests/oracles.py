"""Independent numerical oracles used to freeze expected test values.

Everything here goes through scipy quadrature or dense tensor
contractions built directly from the defining integrals; none of it
reuses the library's grid/FFT machinery.
"""

import numpy as np
from scipy.integrate import quad


def gauss(x, x0, s):
    return np.exp(-((x - x0) ** 2) / (2.0 * s * s)) / (np.sqrt(s) * np.pi**0.25)


def overlap_quad(x0a, sa, x0b, sb):
    """<G_a|G_b> by adaptive quadrature of the defining integral."""
    lo = min(x0a - 10 * sa, x0b - 10 * sb)
    hi = max(x0a + 10 * sa, x0b + 10 * sb)
    val, _ = quad(lambda x: gauss(x, x0a, sa) * gauss(x, x0b, sb), lo, hi, limit=200)
    return val


def fourier_quad(psi, p, lo, hi):
    """Momentum wavefunction at p under the fixed kernel, by quadrature."""
    re = quad(lambda q: np.real(psi(q) * np.exp(-1j * q * p / 2.0)), lo, hi, limit=400)[0]
    im = quad(lambda q: np.imag(psi(q) * np.exp(-1j * q * p / 2.0)), lo, hi, limit=400)[0]
    return (re + 1j * im) / (2.0 * np.sqrt(np.pi))


def postselect_weight_quad(h_abs, s, x_off, nodes=220):
    """Probability-level postselection weight from its defining 4-D integral.

    Evaluates I4 = integral G_{0,s}(x2) G_{0,s}(x3) G_{0,s}(x2'')
    G_{x_off,s}(x3'') exp(-i (x3 - x3'')(x2 - x2'') / |h|) and returns
    (I4 / 2 pi)^2, the closed form's defining expression.  Gauss-Legendre
    tensor quadrature, contracted pairwise so cost is O(nodes^3).
    """
    half = 7.0 * s
    y, w = np.polynomial.legendre.leggauss(nodes)
    x23 = y * half  # nodes for x2, x2'', x3 (centered at 0)
    w23 = w * half
    x3pp = x_off + y * half
    w3pp = w * half

    g0 = gauss(x23, 0.0, s)
    gp = gauss(x3pp, x_off, s)
    # phase exp(-i (x3 - x3'') (x2 - x2'') / h) factorizes into four bilinear
    # pieces; contract x3 and x3'' first.
    m = np.exp(-1j * np.multiply.outer(x23, x23) / h_abs)        # [x2 or x2'', x3]
    mpp = np.exp(1j * np.multiply.outer(x23, x3pp) / h_abs)      # [x2 or x2'', x3'']
    t3 = np.einsum("c,c,ac,bc->ab", w23, g0, m, np.conj(m))      # [x2, x2'']
    t3pp = np.einsum("d,d,ad,bd->ab", w3pp, gp, mpp, np.conj(mpp))
    i4 = np.einsum("a,a,b,b,ab,ab->", w23, g0, w23, g0, t3, np.conj(t3pp))
    return float(np.abs(i4 / (2.0 * np.pi)) ** 2)


def projection_amplitude_quad(h_abs, s_prep, s_meas, x_off):
    """Two-ancilla postselected amplitude by 1-D quadrature in momentum.

    amp = integral dp2 q2(p2) T3(h p2), with q2 the product of the two
    mode-2 momentum Gaussians and T3 the Fourier transform of the mode-3
    product (done by quadrature, not the closed form).
    """
    sp2 = 2.0 / s_prep
    sm2 = 2.0 / s_meas

    def q2(p):
        return gauss(p, 0.0, sm2) * gauss(p, 0.0, sp2)

    def t3(v):
        f = lambda p: gauss(p, 0.0, sm2) * gauss(p, 0.0, sp2) * np.cos((x_off / 2.0 - v) * p)
        hi = 8.0 * max(sp2, sm2)
        return quad(f, -hi, hi, limit=300)[0]

    hi = 8.0 * max(sp2, sm2)
    val, _ = quad(lambda p: q2(p) * t3(h_abs * p), -hi, hi, limit=300)
    return val
