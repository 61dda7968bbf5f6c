"""Independent numerical helpers used only by the tests."""
import cmath

import numpy as np


def newton_solve(residual, z0, steps=60, h=1e-7):
    """Plain complex Newton with a finite-difference Jacobian."""
    z = np.array(z0, dtype=complex)
    for _ in range(steps):
        f = residual(z)
        if np.max(np.abs(f)) < 1e-14:
            break
        jac = np.empty((len(f), len(z)), dtype=complex)
        for k in range(len(z)):
            dz = np.zeros_like(z)
            dz[k] = h
            jac[:, k] = (residual(z + dz) - f) / h
        step = np.linalg.lstsq(jac, -f, rcond=None)[0]
        z = z + step
    return z


REGULAR = complex(0.5, 3 ** 0.5 / 2)
