"""Brute-force oracles that share no code with the library."""

import itertools

import sympy
from sympy.matrices.normalforms import smith_normal_decomp


def quotient_normal_form(rel, n):
    """A function sending ``x in Z^n`` to a canonical label of its class mod ``span(rel)``."""
    if not rel:
        return tuple
    d, u, _ = smith_normal_decomp(sympy.Matrix(rel).T, domain=sympy.ZZ)
    diag = [int(d[i, i]) for i in range(min(d.shape))]
    u = [[int(u[i, j]) for j in range(n)] for i in range(n)]

    def label(x):
        y = [sum(a * b for a, b in zip(row, x)) for row in u]
        return tuple(y[i] % diag[i] if i < len(diag) and diag[i] else y[i] for i in range(n))

    return label


def pushout_is_saturated(q_gens, pp_gens, h_cols, k_cols, bound=6, multiples=(2, 3, 4, 5, 6)):
    """Search for a witness of non-saturation in the integral pushout.

    ``h_cols``/``k_cols`` are the images of a basis of the (free) source under
    both maps.  The pushout lives in ``Z^{nq} ⊕ Z^{np}`` modulo the rows
    ``(h(b), -k(b))``.  Returns True when no witness exists with coefficients up
    to ``bound``.
    """
    nq, np_ = len(q_gens[0]), len(pp_gens[0])
    rel = [tuple(hc) + tuple(-x for x in kc) for hc, kc in zip(h_cols, k_cols)]
    gens = [tuple(g) + (0,) * np_ for g in q_gens] + [(0,) * nq + tuple(g) for g in pp_gens]
    n = nq + np_
    label = quotient_normal_form(rel, n)

    def combo(cs):
        return tuple(sum(c * g[i] for c, g in zip(cs, gens)) for i in range(n))

    monoid = {label(combo(cs)) for cs in itertools.product(range(3 * bound + 1), repeat=len(gens))}
    for ds in itertools.product(range(-bound, bound + 1), repeat=len(gens)):
        x = combo(ds)
        if label(x) in monoid:
            continue
        if any(label(tuple(k * v for v in x)) in monoid for k in multiples):
            return False
    return True


def brute_hilbert_basis(rays, inequalities, equations):
    """Irreducible lattice points of a cone with nonnegative rays.

    Every Hilbert basis element lies below the coordinatewise sum of the rays,
    so the box ``[0, sum]`` contains the whole basis and all decompositions of
    its elements.
    """
    import numpy as np

    rays = np.array(rays)
    n = rays.shape[1]
    top = rays.sum(axis=0)
    grid = np.indices(tuple(top + 1)).reshape(n, -1).T
    ineq = np.array(inequalities, dtype=np.int64).reshape(-1, n)
    eq = np.array(equations, dtype=np.int64).reshape(-1, n)
    ok = np.all(grid @ ineq.T >= 0, axis=1) & np.all(grid @ eq.T == 0, axis=1)
    pts = grid[ok]
    pts = pts[np.any(pts != 0, axis=1)]
    occupied = np.zeros(tuple(top + 1), dtype=bool)
    occupied[tuple(pts.T)] = True
    diff = pts[:, None, :] - pts[None, :, :]
    below = np.all(diff >= 0, axis=2) & np.any(diff != 0, axis=2)
    rows, cols = np.nonzero(below)
    hit = occupied[tuple(diff[rows, cols].T)]
    reducible = np.zeros(len(pts), dtype=bool)
    reducible[rows[hit]] = True
    return sorted(map(tuple, pts[~reducible].tolist()))
