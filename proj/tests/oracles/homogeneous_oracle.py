"""Independent values for the homogeneous and holonomy tests.

Works with left-invariant frames / symmetric pairs directly in matrices,
Levi-Civita via Koszul, no torsion bookkeeping.  Prints the numbers the
C++ tests assert.
"""
import itertools
import sympy as sp


def su2_consts():
    c = {}
    def setb(i, j, k, v):
        c[(i, j, k)] = v
        c[(j, i, k)] = -v
    setb(0, 1, 2, 2); setb(1, 2, 0, 2); setb(2, 0, 1, 2)
    return lambda i, j, k: c.get((i, j, k), 0)


def group_lc_curvature(n, cf, G):
    # left-invariant LC: 2g(D_X Y, Z) = g([X,Y],Z) - g([Y,Z],X) + g([Z,X],Y)
    Gi = G.inv()
    br = lambda i, j: sp.Matrix([cf(i, j, k) for k in range(n)])
    g = lambda u, v: (u.T * G * v)[0]
    E = sp.eye(n)
    D = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            low = sp.Matrix([(g(br(i, j), E[:, k]) - g(br(j, k), E[:, i]) + g(br(k, i), E[:, j])) / 2 for k in range(n)])
            D[i][j] = Gi * low
    def nab(i, v):
        return sum((v[j] * D[i][j] for j in range(n)), sp.zeros(n, 1))
    def bracket(u, v):
        return sum((u[i] * v[j] * br(i, j) for i in range(n) for j in range(n)), sp.zeros(n, 1))
    R = {}
    for x, y, z, w in itertools.product(range(n), repeat=4):
        Rz = nab(x, D[y][z]) - nab(y, D[x][z])
        b = bracket(E[:, x], E[:, y])
        Rz -= sum((b[k] * D[k][z] for k in range(n)), sp.zeros(n, 1))
        R[(x, y, z, w)] = g(Rz, E[:, w])
    return R


def tau_squared_su2():
    # tau(X,Y,Z) = -1/2 <[X,Y],Z>, gram I; tau_X Y = -1/2 [X,Y]
    cf = su2_consts()
    n = 3
    def tX(x):
        return sp.Matrix(n, n, lambda k, j: sp.Rational(-1, 2) * cf(x, j, k))
    T = [tX(i) for i in range(n)]
    def tv(v):
        return sum((v[i] * T[i] for i in range(n)), sp.zeros(n))
    E = sp.eye(n)
    out = {}
    for x, y in itertools.product(range(n), repeat=2):
        M = T[x] * T[y] - T[y] * T[x] - tv(T[x] * E[:, y]) + tv(T[y] * E[:, x])
        for z, w in itertools.product(range(n), repeat=2):
            out[(x, y, z, w)] = (E[:, w].T * M * E[:, z])[0]
    return out


def so5_unit(i, j):
    m = sp.zeros(5)
    m[i, j] = 1
    m[j, i] = -1
    return m


def s4_holonomy_dim():
    # symmetric space: R(X,Y)Z = -[[X,Y],Z] on m = span(E_i5)
    m = [so5_unit(i, 4) for i in range(4)]
    def coords(A):
        return sp.Matrix([A[i, 4] for i in range(4)])
    gens = []
    for x, y in itertools.combinations(range(4), 2):
        K = m[x] * m[y] - m[y] * m[x]
        gens.append(sp.Matrix(4, 4, lambda r, c: coords(-(K * m[c] - m[c] * K))[r]))
    basis = []
    def add(A):
        cand = basis + [A]
        M = sp.Matrix([[a[i] for i in range(16)] for a in cand])
        if M.rank() > len(basis):
            basis.append(A)
    for A in gens:
        add(A)
    i = 0
    while i < len(basis):
        for j in range(i):
            add(basis[i] * basis[j] - basis[j] * basis[i])
        i += 1
    return len(basis)


def s2_curvature():
    # m = e1, e2; k = e3; R(X,Y,Z,W) = -<[[X,Y]_k, Z], W>
    cf = su2_consts()
    k = cf(0, 1, 2)  # [e1,e2]_k = 2 e3
    z = cf(2, 0, 1)  # [e3,e1] = 2 e2
    return -k * z


if __name__ == "__main__":
    cf = su2_consts()
    R = group_lc_curvature(3, cf, sp.eye(3))
    print("S3 Rg(e1,e2,e2,e1) =", R[(0, 1, 1, 0)])
    t2 = tau_squared_su2()
    print("su2 tau^2(e1,e2,e1,e2) =", t2[(0, 1, 0, 1)])
    print("su2 tau^2(e1,e2,e2,e1) =", t2[(0, 1, 1, 0)])
    # bi-invariant: R^tau = 0 so R^g should equal tau^2
    print("S3 Rg - tau^2 max =", max(abs(R[k] - t2[k]) for k in R))
    print("S2 Rtau(e1,e2,e1,e2) =", s2_curvature())
    print("S4 holonomy dim =", s4_holonomy_dim())
