"""Independent reference computations used only by the test-suite."""
from __future__ import annotations

import itertools

import sympy

from ncdef.linalg import Matrix, block_diag, hstack, vstack
from ncdef.rep import Rep, RepMap, cokernel, direct_sum


def kron(a: Matrix, b: Matrix) -> Matrix:
    f = a.field
    rows = []
    for i in range(a.nrows):
        for k in range(b.nrows):
            rows.append([a.rows[i][j] * b.rows[k][l] for j in range(a.ncols) for l in range(b.ncols)])
    return Matrix(f, a.nrows * b.nrows, a.ncols * b.ncols, rows)


def tensor_with_space(d: int, z: Rep) -> Rep:
    """``k^d (x) z`` as a representation."""
    f = z.field
    eye = Matrix.identity(f, d)
    return Rep(z.base, [d * n for n in z.dims], [kron(eye, m) for m in z.maps], check=False)


def coend_tensor(z, m: Rep) -> Rep:
    """``m (x)_A Z`` as the cokernel of ``sum_a m_v (x) Z_u -> sum_i m_i (x) Z_i``."""
    A = z.algebra
    f = z.field
    R = z.target
    targets = [tensor_with_space(m.dims[i], z.parts[i]) for i in range(A.n)]
    T = direct_sum(targets, R)
    sources = [tensor_with_space(m.dims[a.target], z.parts[a.source]) for a in A.quiver.arrows]
    S = direct_sum(sources, R)
    blocks = []
    for y in range(R.n):
        col_blocks = []
        for k, a in enumerate(A.quiver.arrows):
            u, v = a.source, a.target
            du = m.dims[v] * z.parts[u].dims[y]
            rows = []
            for i in range(A.n):
                h = targets[i].dims[y]
                blk = Matrix.zeros(f, h, du)
                if i == u:
                    blk = blk + kron(m.maps[k], Matrix.identity(f, z.parts[u].dims[y]))
                if i == v:
                    blk = blk - kron(Matrix.identity(f, m.dims[v]), z.arrow_maps[k].blocks[y])
                rows.append(blk)
            col_blocks.append(vstack(f, rows, du))
        blocks.append(hstack(f, col_blocks, T.dims[y]))
    g = RepMap(S, T, tuple(blocks))
    return cokernel(g)[0]


def sympy_matrix(m: Matrix) -> sympy.Matrix:
    return sympy.Matrix(m.nrows, m.ncols, lambda i, j: sympy.Rational(m.rows[i][j]))


def jordan_centralizer_dim(n: int) -> int:
    """Dimension of the commutant of a single nilpotent Jordan block, via sympy."""
    J = sympy.zeros(n, n)
    for i in range(n - 1):
        J[i + 1, i] = 1
    xs = sympy.symbols(f"x0:{n * n}")
    X = sympy.Matrix(n, n, xs)
    eqs = list(X * J - J * X)
    M, _ = sympy.linear_eq_to_matrix(eqs, xs)
    return n * n - M.rank()


def hom_module(z, zp: Rep) -> Rep:
    """``Hom_R(Z, Z')`` as a right A-module: ``(f . a) = f o rho(a)``."""
    from ncdef.rep import hom_space
    A = z.algebra
    f = z.field
    spaces = [hom_space(z.parts[v], zp) for v in range(A.n)]
    maps = []
    for k, a in enumerate(A.quiver.arrows):
        u, v = a.source, a.target
        cols = [spaces[u].coords(h @ z.arrow_maps[k]) for h in spaces[v].basis]
        maps.append(Matrix.from_columns(f, cols, spaces[u].dim))
    return Rep(A.bound, [H.dim for H in spaces], maps)


def brute_force_fully_faithful(z, modules) -> bool:
    """Is ``Hom_A(M, N) -> Hom_R(T M, T N)`` bijective for all pairs from ``modules``?"""
    from ncdef.aobjects import tensor_apply, tensor_map
    from ncdef.rep import hom_space
    T = [tensor_apply(z, m) for m in modules]
    for a, M in enumerate(modules):
        for b, N in enumerate(modules):
            H = hom_space(M, N)
            HR = hom_space(T[a].rep, T[b].rep)
            if H.dim != HR.dim:
                return False
            if H.dim == 0:
                continue
            cols = [tensor_map(z, g, T[a], T[b]).vector() for g in H.basis]
            if Matrix.from_columns(z.field, cols, len(cols[0])).rank() != H.dim:
                return False
    return True


def _mat_mul(p, a, b):
    n, m, k = len(a), len(b), len(b[0])
    return tuple(tuple(sum(a[i][t] * b[t][j] for t in range(m)) % p for j in range(k)) for i in range(n))


def _all_matrices(p, n):
    for vals in itertools.product(range(p), repeat=n * n):
        yield tuple(tuple(vals[i * n:(i + 1) * n]) for i in range(n))


def _inverse_mod(p, a):
    m = sympy.Matrix(a)
    return tuple(tuple(int(x) % p for x in row) for row in m.inv_mod(p).tolist())


def brute_force_truncated_loop(p: int, n: int, sigma_matrix) -> tuple[int, int]:
    """Deformations of a one-loop module ``V`` (loop acting by ``sigma_matrix``) over ``F_p[x]/(x^n)``.

    Works on ``F_p^n (x) V`` directly: loop matrices ``T`` commuting with
    ``x (x) 1`` whose action on the top ``Z / xZ`` is ``sigma_matrix``, modulo
    conjugation by A-linear automorphisms that are the identity on the top.
    Returns ``(raw count, orbit count)``.
    """
    d = len(sigma_matrix)
    N = n * d
    # basis index (power of x, vector index); x sends x^e (x) v to x^(e+1) (x) v
    X = [[0] * N for _ in range(N)]
    for e in range(n - 1):
        for t in range(d):
            X[(e + 1) * d + t][e * d + t] = 1
    X = tuple(tuple(r) for r in X)

    def commutes(T):
        return _mat_mul(p, T, X) == _mat_mul(p, X, T)

    def top(T):
        return tuple(tuple(T[i][j] for j in range(d)) for i in range(d))

    sig = tuple(tuple(int(x) % p for x in row) for row in sigma_matrix)
    ident = tuple(tuple(int(i == j) for j in range(d)) for i in range(d))
    candidates, group = [], []
    for T in _all_matrices(p, N):
        if not commutes(T):
            continue
        if top(T) == sig:
            candidates.append(T)
        if top(T) == ident:
            group.append(T)
    inv = [(g, _inverse_mod(p, g)) for g in group]
    remaining = set(candidates)
    orbits = 0
    while remaining:
        T = remaining.pop()
        orbits += 1
        for g, gi in inv:
            remaining.discard(_mat_mul(p, _mat_mul(p, g, T), gi))
    return len(candidates), orbits
