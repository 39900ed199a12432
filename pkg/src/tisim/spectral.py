"""Adjacency spectrum via cyclic Jacobi rotations, and the spectral indices."""

import math
from dataclasses import dataclass

import numpy as np

from .exceptions import ConvergenceError
from .graph import check_connected

MAX_SWEEPS = 100


@dataclass(frozen=True)
class SpectralDecomposition:
    eigenvalues: np.ndarray  # descending
    residual: float  # max |off-diagonal| after the last sweep
    iterations: int  # sweeps performed


def jacobi_eigenvalues(matrix, tol=None, max_sweeps=MAX_SWEEPS):
    """Eigenvalues of a real symmetric matrix by cyclic Jacobi.

    Converged once the off-diagonal Frobenius norm drops below ``tol``
    (default ``1e-12 * n``). Returns ``(eigenvalues, residual, sweeps)``
    with eigenvalues sorted descending.
    """
    a = np.array(matrix, dtype=np.float64, copy=True)
    n = a.shape[0]
    if a.shape != (n, n):
        raise ValueError("matrix must be square")
    if tol is None:
        tol = 1e-12 * n

    def off_norm():
        return float(np.linalg.norm(a - np.diag(np.diag(a))))

    sweeps = 0
    while off_norm() >= tol:
        if sweeps == max_sweeps:
            residual = float(np.max(np.abs(a - np.diag(np.diag(a)))))
            raise ConvergenceError(
                f"Jacobi iteration did not converge in {max_sweeps} sweeps "
                f"(max off-diagonal {residual:.3e})", residual=residual, iterations=sweeps)
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                app = a[p, p]
                aqq = a[q, q]
                h = aqq - app
                if abs(h) > 1e100 * abs(apq):
                    # theta**2 would overflow; t ~ 1/(2 theta)
                    t = apq / h
                else:
                    theta = h / (2.0 * apq)
                    t = 1.0 / (abs(theta) + math.sqrt(theta * theta + 1.0))
                    if theta < 0:
                        t = -t
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                col_p = a[:, p].copy()
                col_q = a[:, q]
                a[:, p] = c * col_p - s * col_q
                a[:, q] = s * col_p + c * col_q
                a[p, :] = a[:, p]
                a[q, :] = a[:, q]
                a[p, p] = app - t * apq
                a[q, q] = aqq + t * apq
                a[p, q] = a[q, p] = 0.0
        sweeps += 1
    off = a - np.diag(np.diag(a))
    residual = float(np.max(np.abs(off))) if n > 1 else 0.0
    return np.sort(np.diag(a))[::-1].copy(), residual, sweeps


def eigenvalues(g):
    """Adjacency spectrum of ``g`` as a :class:`SpectralDecomposition`."""
    values, residual, sweeps = jacobi_eigenvalues(g.adjacency)
    values.setflags(write=False)
    spec = SpectralDecomposition(values, residual, sweeps)
    problems = check_spectrum(spec, g)
    if problems:
        raise ConvergenceError("; ".join(problems), residual=residual, iterations=sweeps)
    return spec


def check_spectrum(spec, g):
    """Trace and sum-of-squares identities; returns a list of violations."""
    lam = spec.eigenvalues
    problems = []
    if abs(float(lam.sum())) > 1e-8 * g.n:
        problems.append(f"trace identity violated: sum = {lam.sum():.3e}")
    m2 = 2 * g.n_edges
    if abs(float(np.sum(lam ** 2)) - m2) > 1e-6 * (1 + m2):
        problems.append(f"sum of squares {np.sum(lam ** 2):.12g} != 2|E| = {m2}")
    return problems


def _spectrum(g, spectrum):
    return (eigenvalues(g) if spectrum is None else spectrum).eigenvalues


def graph_energy(g, spectrum=None):
    check_connected(g)
    return float(np.sum(np.abs(_spectrum(g, spectrum))))


def estrada_index(g, spectrum=None):
    check_connected(g)
    return float(np.sum(np.exp(_spectrum(g, spectrum))))


def resolvent_energy(g, spectrum=None):
    """Sum of ``1 / (n - lambda_i)``. ``lambda_1 <= n - 1`` keeps this finite."""
    check_connected(g)
    lam = _spectrum(g, spectrum)
    gaps = g.n - lam
    if np.any(gaps <= 1e-12):
        raise ArithmeticError("resolvent undefined: an eigenvalue reaches n")
    return float(np.sum(1.0 / gaps))
