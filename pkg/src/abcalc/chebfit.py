"""Piecewise barycentric Chebyshev models of functions on a segment [c, z].

Used to compose operators: the inner operator is sampled on an adaptive set
of nodes along the segment, fitted panel-by-panel at Chebyshev points
(degree <= 40 per panel), and the resulting interpolant is fed to the outer
operator as an ordinary callable-with-derivative.

Panels bisect until the Chebyshev coefficient tail is below tolerance, so
algebraic endpoint behaviour at the basepoint (typical of fractional
integrals, e.g. (z-c)^0.6 components) is absorbed by geometric grading
toward c rather than polluting the whole fit.
"""

import numpy as np

DEGREE = 32
MAX_DEPTH = 26
MAX_PANELS = 96

# Chebyshev-Lobatto points (descending) and barycentric weights
_XI = np.cos(np.pi * np.arange(DEGREE + 1) / DEGREE)
_BARY_W = np.ones(DEGREE + 1)
_BARY_W[1::2] = -1.0
_BARY_W[0] *= 0.5
_BARY_W[-1] *= 0.5

# values -> Chebyshev coefficients (type-2 DCT written as a dense matrix;
# n = 32 keeps this trivially cheap)
_K = np.arange(DEGREE + 1)
_COS = np.cos(np.pi * np.outer(_K, _K) / DEGREE)
_CMAT = (2.0 / DEGREE) * _COS
_CMAT[:, 0] *= 0.5
_CMAT[:, -1] *= 0.5
_CMAT[0, :] *= 0.5
_CMAT[-1, :] *= 0.5


def _coeffs(values):
    return _CMAT @ values


class _Panel:
    __slots__ = ("a", "b", "values", "coeffs")

    def __init__(self, a, b, values):
        self.a = a
        self.b = b
        self.values = values
        self.coeffs = _coeffs(values)

    def tail_ok(self, tol):
        scale = max(float(np.max(np.abs(self.coeffs))), 1e-300)
        tail = float(np.max(np.abs(self.coeffs[-3:])))
        return tail <= max(tol, 1e-14 * scale)

    def eval(self, xi):
        d = xi[:, None] - _XI[None, :]
        hit = d == 0
        d = np.where(hit, 1.0, d)
        q = _BARY_W[None, :] / d
        out = (q @ self.values) / q.sum(axis=1)
        rows = hit.any(axis=1)
        if np.any(rows):
            idx = np.argmax(hit[rows], axis=1)
            out[rows] = self.values[idx]
        return out


class ChebInterpolant:
    """Callable piecewise-polynomial model of a function on [c, z0]."""

    def __init__(self, c, z0, panels):
        self.c = complex(c)
        self.z0 = complex(z0)
        self.panels = sorted(panels, key=lambda p: p.a)
        self._edges = np.array([p.a for p in self.panels] + [1.0])

    @classmethod
    def build(cls, func, c, z0, tol=1e-9):
        """Fit func on the segment [c, z0]; func maps complex -> complex
        (scalars; vectorization is handled here)."""
        c, z0 = complex(c), complex(z0)
        h = z0 - c

        def sample(a, b):
            t = a + (b - a) * 0.5 * (_XI + 1.0)
            return np.array([complex(func(c + tt * h)) for tt in t])

        panels = []
        stack = [(0.0, 1.0, 0)]
        while stack:
            a, b, depth = stack.pop()
            panel = _Panel(a, b, sample(a, b))
            if (panel.tail_ok(tol) or depth >= MAX_DEPTH
                    or len(panels) + len(stack) >= MAX_PANELS - 1):
                panels.append(panel)
            else:
                mid = 0.5 * (a + b)
                stack.append((a, mid, depth + 1))
                stack.append((mid, b, depth + 1))
        return cls(c, z0, panels)

    def _t_of(self, w):
        return (np.asarray(w, dtype=complex) - self.c) / (self.z0 - self.c)

    def __call__(self, w):
        scalar = np.isscalar(w) or np.ndim(w) == 0
        t = np.atleast_1d(self._t_of(w))
        # points are expected on (a neighbourhood of) the segment; panel
        # lookup uses the real part, clipped into [0, 1]
        tr = np.clip(t.real, 0.0, 1.0)
        idx = np.clip(np.searchsorted(self._edges, tr, side="right") - 1,
                      0, len(self.panels) - 1)
        out = np.empty_like(t)
        for j in np.unique(idx):
            m = idx == j
            p = self.panels[j]
            xi = (2.0 * t[m] - (p.a + p.b)) / (p.b - p.a)
            out[m] = p.eval(xi)
        return complex(out[0]) if scalar else out.reshape(np.shape(w))

    def derivative(self):
        """Exact derivative of the piecewise polynomial (new interpolant)."""
        dpanels = []
        for p in self.panels:
            dc = np.polynomial.chebyshev.chebder(p.coeffs)
            scale = 2.0 / ((p.b - p.a) * (self.z0 - self.c))
            dvals = np.polynomial.chebyshev.chebval(_XI, dc) * scale
            dpanels.append(_Panel(p.a, p.b, dvals))
        return ChebInterpolant(self.c, self.z0, dpanels)
