"""Eigen-decomposition of small Hermitian perturbation matrices.

Dimension <= 3 uses closed forms (trigonometric cubic, then deflation onto
the complement of the best-separated eigenvector so that degenerate pairs
keep full precision).  Dimension 4..16 uses cyclic complex Jacobi.
Degenerate eigenvalues are merged at relative tolerance 1e-10 and each
eigenspace gets a canonical basis aligned with the input basis vectors.
"""

from __future__ import annotations

import math
from typing import NamedTuple

import numpy as np

MAX_DIM = 16
MERGE_RTOL = 1e-10
HERMITIAN_RTOL = 1e-12


class Eigenspace(NamedTuple):
    value: float
    multiplicity: int
    vectors: np.ndarray  # orthonormal columns, shape (dim, multiplicity)


def _normalize(v: np.ndarray) -> np.ndarray:
    return v / np.linalg.norm(v)


def _eig2(A: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Closed form via the rotation angle; vectors are orthonormal by construction."""
    a, d = A[0, 0].real, A[1, 1].real
    b = A[0, 1]
    g = abs(b)
    mean = 0.5 * (a + d)
    h = math.hypot(0.5 * (a - d), g)
    t = 0.5 * math.atan2(2.0 * g, a - d)
    phase = np.conj(b) / g if g > 0 else 1.0
    c, s = math.cos(t), math.sin(t)
    vecs = np.array([[-s, c], [phase * c, phase * s]], dtype=A.dtype)
    return np.array([mean - h, mean + h]), vecs


def _null_vector3(B: np.ndarray) -> np.ndarray:
    best, best_norm = None, -1.0
    for i, j in ((0, 1), (0, 2), (1, 2)):
        c = np.cross(B[i], B[j])
        nrm = np.linalg.norm(c)
        if nrm > best_norm:
            best, best_norm = c, nrm
    if best_norm == 0.0:
        raise ArithmeticError("no isolated eigenvector")
    return best / best_norm


def _eig3(A: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    q = np.trace(A).real / 3.0
    off = abs(A[0, 1]) ** 2 + abs(A[0, 2]) ** 2 + abs(A[1, 2]) ** 2
    p2 = sum((A[i, i].real - q) ** 2 for i in range(3)) + 2.0 * off
    if p2 == 0.0:
        return np.array([q, q, q]), np.eye(3, dtype=A.dtype)
    p = math.sqrt(p2 / 6.0)
    Bm = (A - q * np.eye(3)) / p
    r = max(-1.0, min(1.0, np.linalg.det(Bm).real / 2.0))
    phi = math.acos(r) / 3.0
    hi = q + 2.0 * p * math.cos(phi)
    lo = q + 2.0 * p * math.cos(phi + 2.0 * math.pi / 3.0)
    mid = 3.0 * q - hi - lo
    lam = hi if hi - mid >= mid - lo else lo
    v = _null_vector3(A - lam * np.eye(3))
    lam = np.vdot(v, A @ v).real
    k = int(np.argmin(np.abs(v)))
    e = np.zeros(3, dtype=A.dtype)
    e[k] = 1.0
    u1 = _normalize(e - v * np.vdot(v, e))
    u2 = _normalize(np.conj(np.cross(v, u1)))
    U = np.column_stack([u1, u2])
    vals2, vecs2 = _eig2(U.conj().T @ A @ U)
    vals = np.concatenate([[lam], vals2])
    vecs = np.column_stack([v, U @ vecs2])
    return vals, vecs


def _jacobi(A: np.ndarray, max_sweeps: int = 100) -> tuple[np.ndarray, np.ndarray]:
    A = A.copy()
    n = A.shape[0]
    V = np.eye(n, dtype=A.dtype)
    scale = np.linalg.norm(A)
    if scale == 0.0:
        return np.zeros(n), V
    for _ in range(max_sweeps):
        off = np.linalg.norm(A - np.diag(np.diag(A)))
        if off <= 1e-16 * scale:
            break
        rotated = False
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = A[p, q]
                g = abs(apq)
                if g <= 1e-300 or g <= 1e-18 * scale:
                    continue
                u = apq.conjugate() / g if np.iscomplexobj(A) else math.copysign(1.0, apq)
                tau = (A[q, q].real - A[p, p].real) / (2.0 * g)
                t = 1.0 / (abs(tau) + math.sqrt(1.0 + tau * tau))
                if tau < 0:
                    t = -t
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = t * c
                J = np.array([[c, s], [-s * u, c * u]], dtype=A.dtype)
                cols = [p, q]
                A[:, cols] = A[:, cols] @ J
                A[cols, :] = J.conj().T @ A[cols, :]
                A[p, q] = A[q, p] = 0.0
                V[:, cols] = V[:, cols] @ J
                rotated = True
        if not rotated:
            break
    else:
        raise ArithmeticError("Jacobi iteration did not converge")
    return np.diag(A).real.copy(), V


def _canonical_basis(V: np.ndarray) -> np.ndarray:
    """Deterministic orthonormal basis of span(V), aligned with unit vectors."""
    dim, k = V.shape
    if k == dim:
        return np.eye(dim, dtype=V.dtype)
    P = V @ V.conj().T
    weights = np.sqrt(np.abs(np.diag(P)))
    order = sorted(range(dim), key=lambda j: (-round(float(weights[j]), 10), j))
    out = []
    for j in order:
        w = P[:, j].copy()
        for b in out:
            w = w - b * np.vdot(b, w)
        nrm = np.linalg.norm(w)
        if nrm > 1e-8:
            out.append(w / nrm)
        if len(out) == k:
            break
    B = np.column_stack(out)
    for col in range(k):
        idx = int(np.argmax(np.abs(B[:, col]) > np.abs(B[:, col]).max() - 1e-12))
        phase = B[idx, col] / abs(B[idx, col])
        B[:, col] = B[:, col] / phase
    return B


def _entries(pm) -> np.ndarray:
    return np.asarray(getattr(pm, "entries", pm))


def diagonalize(pm) -> list[Eigenspace]:
    """Eigenvalues (ascending, merged) with multiplicities and eigenvector bases.

    Accepts a ``PerturbationMatrix`` or any square array-like.
    """
    A = _entries(pm)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValueError(f"matrix must be square, got shape {A.shape}")
    dim = A.shape[0]
    if dim > MAX_DIM:
        raise ValueError(f"dimension {dim} > {MAX_DIM} is not supported")
    A = A.astype(complex) if np.iscomplexobj(A) else A.astype(float)
    norm = np.linalg.norm(A)
    if np.linalg.norm(A - A.conj().T) > HERMITIAN_RTOL * max(norm, 1e-300):
        raise ValueError("matrix is not Hermitian")
    A = 0.5 * (A + A.conj().T)
    scale = float(np.max(np.abs(A))) if dim else 0.0
    if scale == 0.0:
        return [Eigenspace(0.0, dim, np.eye(dim, dtype=A.dtype))] if dim else []
    # Work at unit scale so tiny or huge entries neither underflow nor overflow.
    A = A / scale
    if dim == 1:
        vals, vecs = np.array([A[0, 0].real]), np.ones((1, 1), dtype=A.dtype)
    elif dim == 2:
        vals, vecs = _eig2(A)
    elif dim == 3:
        vals, vecs = _eig3(A)
    else:
        vals, vecs = _jacobi(A)
    order = np.argsort(vals, kind="stable")
    vals, vecs = vals[order], vecs[:, order]
    vals = vals * scale
    tol = MERGE_RTOL * float(np.max(np.abs(vals)))
    groups: list[list[int]] = []
    for i in range(dim):
        if groups and vals[i] - vals[groups[-1][-1]] <= tol:
            groups[-1].append(i)
        else:
            groups.append([i])
    out = []
    for g in groups:
        value = float(np.mean(vals[g]))
        basis = _canonical_basis(vecs[:, g])
        out.append(Eigenspace(value, len(g), basis))
    return out


def eigenvalues(pm) -> np.ndarray:
    """Flat ascending list of eigenvalues with repetition."""
    return np.array([e.value for e in diagonalize(pm) for _ in range(e.multiplicity)])
