"""Dense complex Hermitian eigensolver by cyclic Jacobi rotations.

Pairs are visited in round-robin order; the rotations of one round act on
disjoint index pairs, so they are applied together as vectorized row and
column updates. Each rotation annihilates one off-diagonal entry exactly;
sweeps repeat until the largest off-diagonal magnitude falls below
tol_factor times the largest entry of the input matrix.
"""

from __future__ import annotations

import numpy as np


def hermitian_eigs(h: np.ndarray, tol_factor: float = 1e-12,
                   max_sweeps: int = 100) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues (ascending) and orthonormal eigenvector columns of h.

    Raises ValueError if h is not Hermitian to within tol_factor times
    its largest entry.
    """
    h = np.asarray(h, dtype=complex)
    n = h.shape[0]
    if h.ndim != 2 or h.shape[1] != n:
        raise ValueError("matrix must be square")
    scale = float(np.max(np.abs(h))) if n else 0.0
    if scale == 0.0:
        return np.zeros(n), np.eye(n, dtype=complex)
    if float(np.max(np.abs(h - h.conj().T))) > tol_factor * scale:
        raise ValueError("input matrix is not Hermitian within tolerance")

    a = h.copy()
    v = np.eye(n, dtype=complex)
    tol = tol_factor * scale
    skip_below = 1e-300  # treat as already annihilated

    for _ in range(max_sweeps):
        off = np.abs(a - np.diag(np.diag(a)))
        if float(off.max()) < tol:
            break
        for p_idx, q_idx in _round_robin_rounds(n):
            apq = a[p_idx, q_idx]
            mag = np.abs(apq)
            act = mag > skip_below
            if not np.any(act):
                continue
            p = p_idx[act]
            q = q_idx[act]
            apq = apq[act]
            mag = mag[act]
            app = a[p, p].real
            aqq = a[q, q].real
            tau = (aqq - app) / (2.0 * mag)
            t = np.sign(tau) / (np.abs(tau) + np.sqrt(1.0 + tau * tau))
            t = np.where(tau == 0.0, 1.0, t)  # 45-degree rotation at tau = 0
            c = 1.0 / np.sqrt(1.0 + t * t)
            s = t * c
            phase = apq / mag

            sp = s * phase           # multiplies the q-row/col partner
            # left update: rows p and q of (J^dagger a)
            rows_p = a[p, :]
            rows_q = a[q, :]
            a[p, :] = c[:, None] * rows_p - sp[:, None] * rows_q
            a[q, :] = np.conj(sp)[:, None] * rows_p + c[:, None] * rows_q
            # right update: columns p and q of (a J)
            cols_p = a[:, p]
            cols_q = a[:, q]
            a[:, p] = c[None, :] * cols_p - np.conj(sp)[None, :] * cols_q
            a[:, q] = sp[None, :] * cols_p + c[None, :] * cols_q
            # accumulate the same column rotations into v
            vp = v[:, p]
            vq = v[:, q]
            v[:, p] = c[None, :] * vp - np.conj(sp)[None, :] * vq
            v[:, q] = sp[None, :] * vp + c[None, :] * vq
        a = 0.5 * (a + a.conj().T)
    else:
        raise RuntimeError(f"Jacobi did not converge in {max_sweeps} sweeps")

    w = np.real(np.diag(a))
    order = np.argsort(w, kind="stable")
    return w[order], v[:, order]


def _round_robin_rounds(n: int):
    """Disjoint index pairs covering every (p, q) once per sweep."""
    if n < 2:
        return
    players = list(range(n)) + ([n] if n % 2 else [])
    size = len(players)
    others = players[1:]
    for _ in range(size - 1):
        line = [players[0]] + others
        p_list, q_list = [], []
        for k in range(size // 2):
            i, j = line[k], line[size - 1 - k]
            if i >= n or j >= n:
                continue  # dummy slot when n is odd
            p_list.append(min(i, j))
            q_list.append(max(i, j))
        yield np.array(p_list, dtype=int), np.array(q_list, dtype=int)
        others = [others[-1]] + others[:-1]


def characteristic_polynomial(h: np.ndarray) -> np.ndarray:
    """Coefficients of det(lambda I - h) via the Faddeev-LeVerrier recursion.

    Independent route to eigenvalues (through polynomial root finding) used
    to cross-check the Jacobi solver on small matrices.
    """
    h = np.asarray(h, dtype=complex)
    n = h.shape[0]
    coeffs = np.zeros(n + 1, dtype=complex)
    coeffs[0] = 1.0
    mk = np.zeros_like(h)
    for k in range(1, n + 1):
        mk = h @ mk + coeffs[k - 1] * np.eye(n)
        coeffs[k] = -np.trace(h @ mk) / k
    return coeffs


def eigenvalues_by_charpoly(h: np.ndarray) -> np.ndarray:
    """Ascending eigenvalues from the characteristic polynomial roots."""
    roots = np.roots(characteristic_polynomial(h))
    return np.sort(roots.real)
