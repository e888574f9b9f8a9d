"""Matrix-product states with mixed canonical form and truncation logging.

Site tensors have shape (D_left, d, D_right).  The state keeps an
orthogonality center: tensors strictly left of it are left-canonical,
strictly right of it right-canonical.  Purified (thermal) states fuse a
physical and an ancilla leg into one d^2-dimensional site leg; operators
are lifted onto the physical half by the chains module.
"""

from __future__ import annotations

import numpy as np


class TensorNetworkState:
    def __init__(self, tensors, center=0, purified=False, base_dim=None,
                 discarded_weight=0.0):
        self.tensors = [np.asarray(t) for t in tensors]
        self.center = center
        self.purified = purified
        d = self.tensors[0].shape[1]
        self.base_dim = base_dim if base_dim is not None else (
            int(round(np.sqrt(d))) if purified else d)
        if purified and self.base_dim ** 2 != d:
            raise ValueError(
                f"purified site dimension {d} is not a perfect square")
        self.discarded_weight = discarded_weight

    # -- construction -----------------------------------------------------

    @classmethod
    def product_state(cls, vectors, purified=False):
        """An unentangled state from one local vector per site."""
        tensors = []
        for v in vectors:
            v = np.asarray(v, dtype=complex)
            n = np.linalg.norm(v)
            if n == 0:
                raise ValueError("product-state vectors must be nonzero")
            tensors.append((v / n).reshape(1, -1, 1))
        return cls(tensors, center=0, purified=purified)

    @classmethod
    def infinite_temperature(cls, length, base_dim):
        """Purified identity state: |I>/sqrt(d) on every (phys, anc) pair."""
        v = np.eye(base_dim).reshape(-1) / np.sqrt(base_dim)
        return cls.product_state([v] * length, purified=True)

    # -- basic structure --------------------------------------------------

    @property
    def L(self):
        return len(self.tensors)

    @property
    def local_dim(self):
        return self.tensors[0].shape[1]

    def bond_dimensions(self):
        return [t.shape[2] for t in self.tensors[:-1]]

    def max_chi(self):
        dims = self.bond_dimensions()
        return max(dims) if dims else 1

    def copy(self):
        out = TensorNetworkState([t.copy() for t in self.tensors],
                                 self.center, self.purified, self.base_dim,
                                 self.discarded_weight)
        return out

    # -- canonical form ---------------------------------------------------

    def _shift_right(self):
        i = self.center
        t = self.tensors[i]
        Dl, d, Dr = t.shape
        q, r = np.linalg.qr(t.reshape(Dl * d, Dr))
        self.tensors[i] = q.reshape(Dl, d, -1)
        self.tensors[i + 1] = np.tensordot(r, self.tensors[i + 1], axes=(1, 0))
        self.center = i + 1

    def _shift_left(self):
        i = self.center
        t = self.tensors[i]
        Dl, d, Dr = t.shape
        # LQ via QR of the transpose
        q, r = np.linalg.qr(t.reshape(Dl, d * Dr).conj().T)
        self.tensors[i] = q.conj().T.reshape(-1, d, Dr)
        self.tensors[i - 1] = np.tensordot(self.tensors[i - 1], r.conj().T,
                                           axes=(2, 0))
        self.center = i - 1

    def move_center(self, i):
        while self.center < i:
            self._shift_right()
        while self.center > i:
            self._shift_left()

    def canonicalize(self, center=0):
        """Re-establish mixed canonical form from scratch."""
        self.center = self.L - 1
        self.move_center(0)
        self.move_center(center)

    def norm(self):
        c = self.tensors[self.center]
        return float(np.linalg.norm(c))

    def normalize(self):
        n = self.norm()
        if n == 0:
            raise ValueError("cannot normalize the zero state")
        self.tensors[self.center] = self.tensors[self.center] / n
        return n

    def canonical_residuals(self):
        """Max deviation from the canonical conditions on either side."""
        worst = 0.0
        for i, t in enumerate(self.tensors):
            Dl, d, Dr = t.shape
            if i < self.center:
                m = t.reshape(Dl * d, Dr)
                worst = max(worst, np.max(np.abs(
                    m.conj().T @ m - np.eye(Dr))))
            elif i > self.center:
                m = t.reshape(Dl, d * Dr)
                worst = max(worst, np.max(np.abs(
                    m @ m.conj().T - np.eye(Dl))))
        return worst

    # -- gates ------------------------------------------------------------

    def apply_two_site_gate(self, i, gate, chi_max=None, trunc_tol=1e-14,
                            move_right=True):
        """Apply a (d^2 x d^2) gate to sites (i, i+1) and truncate.

        Singular values are kept until the cumulative discarded squared
        weight falls below trunc_tol, subject to the bond-dimension cap;
        the discarded weight (relative to the full squared norm) is
        accumulated on the state.  The center ends at i+1 (move_right) or i.
        """
        if not 0 <= i < self.L - 1:
            raise IndexError(f"bond {i} outside the chain")
        if self.center not in (i, i + 1):
            self.move_center(i)
        a, b = self.tensors[i], self.tensors[i + 1]
        Dl, d, _ = a.shape
        _, d2, Dr = b.shape
        theta = np.tensordot(a, b, axes=(2, 0)).reshape(Dl, d * d2, Dr)
        theta = np.tensordot(theta, np.asarray(gate), axes=(1, 1))
        theta = theta.transpose(0, 2, 1).reshape(Dl * d, d2 * Dr)
        u, s, vh = np.linalg.svd(theta, full_matrices=False)
        total = float(np.sum(s ** 2))
        if total == 0.0:
            raise ValueError("two-site block collapsed to zero")
        keep = len(s)
        # smallest k such that the discarded tail weight is <= tol
        tail = np.cumsum((s ** 2)[::-1])[::-1]  # tail[k] = sum_{j>=k} s_j^2
        admissible = np.nonzero(tail <= trunc_tol * total)[0]
        if admissible.size:
            keep = max(1, int(admissible[0]))
        if chi_max is not None:
            keep = min(keep, chi_max)
        keep = max(keep, 1)
        discarded = float(np.sum(s[keep:] ** 2)) / total
        self.discarded_weight += discarded
        s = s[:keep]
        self.tensors[i] = u[:, :keep].reshape(Dl, d, keep)
        if move_right:
            self.tensors[i + 1] = (s[:, None] * vh[:keep]).reshape(keep, d2, Dr)
            self.center = i + 1
        else:
            self.tensors[i + 1] = vh[:keep].reshape(keep, d2, Dr)
            self.tensors[i] = self.tensors[i] * s[None, None, :]
            self.center = i
        return discarded

    # -- expectation values ----------------------------------------------

    def expectation_window(self, i0, op, n_sites):
        """<op> for a dense operator on sites i0 .. i0+n_sites-1."""
        if not (0 <= i0 and i0 + n_sites <= self.L):
            raise IndexError(
                f"window [{i0}, {i0 + n_sites}) outside the chain")
        self.move_center(i0)
        theta = self.tensors[i0]
        for k in range(1, n_sites):
            theta = np.tensordot(theta, self.tensors[i0 + k], axes=(theta.ndim - 1, 0))
        Dl = theta.shape[0]
        Dr = theta.shape[-1]
        d_tot = int(np.prod(theta.shape[1:-1]))
        theta = theta.reshape(Dl, d_tot, Dr)
        op = np.asarray(op)
        if op.shape != (d_tot, d_tot):
            raise ValueError(
                f"operator shape {op.shape} incompatible with window "
                f"dimension {d_tot}")
        opt = np.tensordot(theta, op, axes=(1, 1))        # (Dl, Dr, d_out)
        val = np.einsum('apb,abp->', theta.conj(), opt)
        nrm = np.einsum('apb,apb->', theta.conj(), theta)
        return complex(val / nrm)
