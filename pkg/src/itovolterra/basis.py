"""Orthonormal Chelyshkov polynomial basis on [0, 1].

The family of degree cap N consists of N+1 polynomials

    phi_i(t) = sqrt(2i+1) * sum_{k=0}^{N-i} (-1)^k C(N-i, k) C(N+k+i+1, N-i) t^(k+i)

for i = 0..N.  Member i has lowest monomial power i and polynomial degree N,
and the family is orthonormal on [0, 1] with unit weight.  Coefficients are
built in exact integer arithmetic (binomials overflow naive fixed-width
integers around N ~ 15) and stored as a dense monomial table; evaluation is
by nested multiplication from the highest power down.

Conditioning of the monomial representation degrades with N; N <= 12 is the
supported range (the solvers use N <= 8 in practice).

A ChelyshkovBasis is immutable after construction and safe to share across
threads.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb, sqrt

import numpy as np

__all__ = ["ChelyshkovBasis"]


class ChelyshkovBasis:
    """The N+1 orthonormal Chelyshkov polynomials of degree cap N."""

    def __init__(self, degree_cap: int):
        if degree_cap < 0:
            raise ValueError(f"degree_cap must be >= 0, got {degree_cap}")
        N = int(degree_cap)
        self.degree_cap = N
        # Integer part of the coefficients, c_int[i][a]; the full coefficient
        # is sqrt(2i+1) * c_int[i][a].  Kept exact for gram_matrix/integrals.
        c_int = [[0] * (N + 1) for _ in range(N + 1)]
        for i in range(N + 1):
            for k in range(N - i + 1):
                c_int[i][i + k] = (-1) ** k * comb(N - i, k) * comb(N + k + i + 1, N - i)
        self._c_int = c_int
        scale = np.sqrt(2.0 * np.arange(N + 1) + 1.0)
        self.coeffs = scale[:, None] * np.array(c_int, dtype=float)
        self.coeffs.setflags(write=False)

    @property
    def size(self) -> int:
        return self.degree_cap + 1

    def _check_t(self, t: float) -> float:
        t = float(t)
        if not 0.0 <= t <= 1.0:
            raise ValueError(f"t must lie in [0, 1], got {t}")
        return t

    def eval(self, i: int, t: float) -> float:
        """Value of member i at t, by Horner's scheme."""
        if not 0 <= i <= self.degree_cap:
            raise IndexError(f"basis index {i} out of range [0, {self.degree_cap}]")
        t = self._check_t(t)
        acc = 0.0
        for a in range(self.degree_cap, -1, -1):
            acc = acc * t + self.coeffs[i, a]
        return acc

    def eval_all(self, t: float) -> np.ndarray:
        """Values of all N+1 members at t."""
        t = self._check_t(t)
        acc = np.zeros(self.size)
        for a in range(self.degree_cap, -1, -1):
            acc *= t
            acc += self.coeffs[:, a]
        return acc

    def eval_many(self, ts: np.ndarray) -> np.ndarray:
        """Value table V[p, i] = phi_i(ts[p]) for an array of points."""
        ts = np.asarray(ts, dtype=float)
        if ts.size and (ts.min() < 0.0 or ts.max() > 1.0):
            raise ValueError("all evaluation points must lie in [0, 1]")
        acc = np.zeros((ts.size, self.size))
        for a in range(self.degree_cap, -1, -1):
            acc *= ts[:, None]
            acc += self.coeffs[None, :, a]
        return acc

    def linear_combination(self, h: np.ndarray, t: float) -> float:
        """sum_j h[j] * phi_j(t)."""
        h = np.asarray(h, dtype=float)
        if h.shape != (self.size,):
            raise ValueError(f"expected {self.size} coefficients, got shape {h.shape}")
        return float(h @ self.eval_all(t))

    def gram_matrix(self) -> np.ndarray:
        """Exact monomial-moment inner products G[i, j] = int_0^1 phi_i phi_j dt.

        The rational part is summed exactly; only the sqrt normalisation
        factors round, so orthonormality holds to machine precision.
        """
        n = self.size
        G = np.empty((n, n))
        for i in range(n):
            ci = self._c_int[i]
            for j in range(i, n):
                cj = self._c_int[j]
                s = Fraction(0)
                for a in range(i, n):
                    if ci[a] == 0:
                        continue
                    for b in range(j, n):
                        if cj[b] == 0:
                            continue
                        s += Fraction(ci[a] * cj[b], a + b + 1)
                G[i, j] = G[j, i] = sqrt(2 * i + 1) * sqrt(2 * j + 1) * float(s)
        return G

    def integrals(self) -> np.ndarray:
        """int_0^1 phi_i(t) dt for each member, from exact monomial moments."""
        out = np.empty(self.size)
        for i in range(self.size):
            s = Fraction(0)
            for a, c in enumerate(self._c_int[i]):
                if c:
                    s += Fraction(c, a + 1)
            out[i] = sqrt(2 * i + 1) * float(s)
        return out

    def __repr__(self) -> str:
        return f"ChelyshkovBasis(degree_cap={self.degree_cap})"
