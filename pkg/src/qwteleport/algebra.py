"""Small dense complex linear algebra for 2x2 and 3x3 objects.

Vectors and matrices are plain ``numpy`` complex arrays. Basis order for
coin space is (R, L).
"""

import numpy as np

UNITARY_TOL = 1e-10
CLASSIFY_TOL = 1e-9

KET_R = np.array([1, 0], dtype=complex)
KET_L = np.array([0, 1], dtype=complex)

I2 = np.eye(2, dtype=complex)
I3 = np.eye(3, dtype=complex)
X = np.array([[0, 1], [1, 0]], dtype=complex)
Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
Z = np.array([[1, 0], [0, -1]], dtype=complex)
HADAMARD = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)

NAMED_GATES = {"I": I2, "X": X, "Y": Y, "Z": Z, "H": HADAMARD}


def as_complex_array(m, shape=None, name="value"):
    """Convert ``m`` to a complex array, checking shape and finiteness."""
    arr = np.asarray(m, dtype=complex)
    if shape is not None and arr.shape != shape:
        raise ValueError(f"{name}: expected shape {shape}, got {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name}: entries must be finite")
    return arr


def dagger(m):
    return np.conj(np.transpose(m))


def is_unitary(m, tol=UNITARY_TOL):
    """True iff max |(m^dagger m - I)_ij| <= tol."""
    if tol <= 0:
        raise ValueError("tol must be positive")
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        return False
    gram = dagger(m) @ m
    return bool(np.max(np.abs(gram - np.eye(m.shape[0]))) <= tol)


def unitarity_defect(m):
    """Max entrywise deviation of m^dagger m from m-scaled identity.

    Returns ``(kappa_sq, defect)`` where ``kappa_sq`` is the mean diagonal of
    m^dagger m and ``defect`` is the larger of the off-diagonal modulus and the
    diagonal spread.
    """
    gram = dagger(m) @ m
    d0, d1 = gram[0, 0].real, gram[1, 1].real
    defect = max(abs(gram[0, 1]), abs(d0 - d1))
    return 0.5 * (d0 + d1), defect


def proportional_unitary_scale(m, tol=UNITARY_TOL):
    """Return kappa > 0 with m^dagger m = kappa^2 I (within ``tol``), else None.

    The zero matrix is not considered proportional to a unitary.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    m = np.asarray(m, dtype=complex)
    kappa_sq, defect = unitarity_defect(m)
    if defect > tol or kappa_sq <= 0:
        return None
    kappa = float(np.sqrt(kappa_sq))
    if kappa <= 0:
        return None
    return kappa


def distance_up_to_phase(a, b):
    """min over |theta| = 1 of the Frobenius norm ||a - theta b||."""
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    overlap = np.vdot(b, a)  # trace(b^dagger a)
    if abs(overlap) > 0:
        theta = overlap / abs(overlap)
    else:
        k = np.unravel_index(np.argmax(np.abs(b)), b.shape)
        if abs(b[k]) == 0:
            theta = 1.0
        elif abs(a[k]) == 0:
            theta = 1.0
        else:
            ratio = a[k] / b[k]
            theta = ratio / abs(ratio)
    return float(np.linalg.norm(a - theta * b))


def haar_unitary(n, rng):
    """Haar-random n x n unitary from QR of a complex Ginibre matrix."""
    z = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    d = np.diagonal(r)
    return q * (d / np.abs(d))


def haar_unitary2(rng_seed):
    return haar_unitary(2, np.random.default_rng(rng_seed))


def random_unit_vector(n, rng):
    v = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    return v / np.linalg.norm(v)


def phase(theta):
    return np.exp(1j * theta)
