"""Derive reference values used as frozen literals in the test suite.

Everything here is computed symbolically (sympy) or with mpmath-backed
evaluation, independent of the solver code. Run once and copy the printed
values into the tests; the script stays in the repo so the numbers can be
re-derived.
"""

from __future__ import annotations

import sympy as sp

xi, v, x, t = sp.symbols("xi v x t", real=True)


def lobatto_points(p: int) -> list[sp.Expr]:
    """Gauss-Lobatto nodes on [-1, 1] for p nodes (degree p-1 basis)."""
    if p == 1:
        return [sp.Integer(0)]
    leg = sp.legendre(p - 1, xi)
    interior = sp.solve(sp.diff(leg, xi), xi)
    pts = sorted([sp.Integer(-1), *interior, sp.Integer(1)], key=lambda e: float(e))
    return pts


def lobatto_weights(pts: list[sp.Expr]) -> list[sp.Expr]:
    p = len(pts)
    if p == 1:
        return [sp.Integer(2)]
    n = p - 1
    return [sp.Rational(2, n * (n + 1)) / sp.legendre(n, pt) ** 2 for pt in pts]


def lagrange_basis(pts: list[sp.Expr]) -> list[sp.Expr]:
    out = []
    for i, pi in enumerate(pts):
        terms = [(xi - pj) / (pi - pj) for j, pj in enumerate(pts) if j != i]
        out.append(sp.prod(terms) if terms else sp.Integer(1))
    return out


def element_matrices(p: int):
    """Mass J_{ll'} = int p_l p_l' and stiffness K_{ll'} = int p'_l p_l'."""
    pts = lobatto_points(p)
    basis = lagrange_basis(pts)
    J = sp.Matrix(p, p, lambda a, b: sp.integrate(basis[a] * basis[b], (xi, -1, 1)))
    K = sp.Matrix(
        p, p, lambda a, b: sp.integrate(sp.diff(basis[a], xi) * basis[b], (xi, -1, 1))
    )
    return pts, J, K


def section(title: str) -> None:
    print(f"\n=== {title} ===")


section("Lobatto nodes and weights, p = 2, 3, 4 (degree 1, 2, 3)")
for p in (2, 3, 4):
    pts = lobatto_points(p)
    wts = lobatto_weights(pts)
    print(f"p={p} nodes   ", [sp.nsimplify(q) for q in pts])
    print(f"p={p} weights ", [sp.nsimplify(w) for w in wts])
    print(f"p={p} weights (float)", [float(w) for w in wts])

section("Element matrices (reference cell [-1,1])")
for p in (2, 3, 4):
    _, J, K = element_matrices(p)
    print(f"p={p} J = {J.tolist()}")
    print(f"p={p} K = {K.tolist()}")
    # trace identity: K + K^T should equal diag(-1 first, ..., +1 last)
    S = K + K.T
    expect = sp.zeros(p, p)
    expect[0, 0] = -1
    expect[p - 1, p - 1] = 1
    assert sp.simplify(S - expect) == sp.zeros(p, p), p
print("trace identity K + K^T = e_r e_r^T - e_l e_l^T holds for p=2,3,4")

section("Gauss-Legendre 2-point rule on [-1,1]")
print("nodes +-1/sqrt(3) =", float(1 / sp.sqrt(3)), "weights 1,1")
print("integral of v^2 over [-1,1] exact:", sp.Rational(2, 3), "=", float(sp.Rational(2, 3)))

section("Maxwellian point values, q=(1,0,0.5) i.e. rho=1,u=0,theta=1")
M = lambda rho, u, th, vv: rho / sp.sqrt(2 * sp.pi * th) * sp.exp(-((vv - u) ** 2) / (2 * th))
print("M(v=0) =", sp.N(M(1, 0, 1, 0), 12))
print("M(v=1) =", sp.N(M(1, 0, 1, 1), 12))

section("Analytic Gaussian moments (full line)")
rho_s, u_s, th_s = sp.symbols("rho u theta", positive=True)
m_expr = M(rho_s, u_s, th_s, v)
mom0 = sp.simplify(sp.integrate(m_expr, (v, -sp.oo, sp.oo)))
mom1 = sp.simplify(sp.integrate(v * m_expr, (v, -sp.oo, sp.oo)))
mom2 = sp.simplify(sp.integrate(v**2 / 2 * m_expr, (v, -sp.oo, sp.oo)))
print("int M      =", mom0)
print("int v M    =", mom1)
print("int v^2/2 M =", mom2)

section("Euler flux from Maxwellian moments (gamma = 3, d = 1)")
f1 = sp.simplify(sp.integrate(v * m_expr, (v, -sp.oo, sp.oo)))
f2 = sp.simplify(sp.integrate(v**2 * m_expr, (v, -sp.oo, sp.oo)))
f3 = sp.simplify(sp.integrate(v**3 / 2 * m_expr, (v, -sp.oo, sp.oo)))
print("Phi_1 =", f1, "  (= m)")
print("Phi_2 =", f2, "  (= m^2/rho + rho*theta)")
print("Phi_3 =", f3, "  (= u*(E + rho*theta))")
E_expr = rho_s * u_s**2 / 2 + rho_s * th_s / 2
print("Phi_3 - u*(E + rho*theta) simplifies to",
      sp.simplify(f3 - u_s * (E_expr + rho_s * th_s)))

section("Euler flux literals at q = (1.2, 0.3, 1.1)")
q1, q2, q3 = sp.Rational(12, 10), sp.Rational(3, 10), sp.Rational(11, 10)
u_q = q2 / q1
th_q = (2 * q3 - q1 * u_q**2) / q1
phi = (q2, q2**2 / q1 + q1 * th_q, u_q * (q3 + q1 * th_q))
print("u =", sp.N(u_q, 15), " theta =", sp.N(th_q, 15))
print("Phi =", [sp.N(c, 15) for c in phi])

section("Flux Jacobian (symbolic) and eigenvalues")
qa, qb, qc = sp.symbols("qa qb qc", positive=True)
u_j = qb / qa
th_j = (2 * qc - qa * u_j**2) / qa
Phi_vec = sp.Matrix([qb, qb**2 / qa + qa * th_j, u_j * (qc + qa * th_j)])
Jac = sp.simplify(Phi_vec.jacobian(sp.Matrix([qa, qb, qc])))
print("dPhi/dq =", Jac.tolist())
stated = sp.Matrix([
    [0, 1, 0],
    [0, 0, 2],
    [-3 * qb * qc / qa**2 + 2 * qb**3 / qa**3, 3 * qc / qa - 3 * qb**2 / qa**2, 3 * qb / qa],
])
print("matches stated closed form:", sp.simplify(Jac - stated) == sp.zeros(3, 3))
eigs = sp.simplify(sp.Matrix(Jac).eigenvals())
print("eigenvalues:", {sp.simplify(k): m for k, m in eigs.items()})
c_j = sp.sqrt(3 * th_j)
check = {sp.simplify(u_j - c_j), sp.simplify(u_j), sp.simplify(u_j + c_j)}
print("equal to {u, u +- sqrt(3 theta)}:",
      all(any(sp.simplify(e - c) == 0 for c in check) for e in eigs))

section("Wavespeed literals")
sqrt3 = sp.sqrt(3)
print("Sod initial Lambda = sqrt(3) =", sp.N(sqrt3, 12))
# Lax left state: rho=0.445, u=0.698, p=3.528 => theta=p/rho
th_lax = sp.Rational(3528, 1000) / sp.Rational(445, 1000)
lam_lax_left = sp.Rational(698, 1000) + sp.sqrt(3 * th_lax)
th_lax_r = sp.Rational(571, 1000) / sp.Rational(5, 10)
lam_lax_right = sp.sqrt(3 * th_lax_r)
print("Lax left  u + sqrt(3 theta) =", sp.N(lam_lax_left, 12))
print("Lax right sqrt(3 theta)     =", sp.N(lam_lax_right, 12))
print("Lax initial Lambda          =", sp.N(sp.Max(lam_lax_left, lam_lax_right), 12))

section("Rusanov interface flux, Sod jump, first component")
# left (1,0,1) right (0.125,0,0.1) as (rho,u,p); theta = p/rho; q=(rho,m,E)
qL = (sp.Integer(1), sp.Integer(0), sp.Rational(1, 2))
th_R = sp.Rational(1, 10) / sp.Rational(1, 8)
qR = (sp.Rational(1, 8), sp.Integer(0), sp.Rational(1, 8) * th_R / 2)
phi_of = lambda q: (q[1],
                    q[1] ** 2 / q[0] + (2 * q[2] - q[1] ** 2 / q[0]),
                    q[1] / q[0] * (q[2] + (2 * q[2] - q[1] ** 2 / q[0])))
lam = sp.Max(sp.sqrt(3 * sp.Integer(1)), sp.sqrt(3 * th_R))
flux1 = (phi_of(qL)[0] + phi_of(qR)[0] - lam * (qR[0] - qL[0])) / 2
print("lambda_max =", sp.N(lam, 12))
print("Phi*_1 =", sp.N(flux1, 12))

section("Time step literals")
print("Sod dt = 0.2*0.01/sqrt(3) =", sp.N(sp.Rational(2, 1000) / sqrt3, 12))
print("uniform (1,0,0.5), C=1, h=1 -> dt = 1/sqrt(3) =", sp.N(1 / sqrt3, 12))

section("Asymptotic exact solution check (gamma = 3 Euler)")
rho_e = 1 + sp.Rational(1, 5) * sp.sin(10 * (x - t))
u_e = sp.Integer(1)
p_e = sp.Integer(1)
m_e = rho_e * u_e
E_e = rho_e * u_e**2 / 2 + p_e / 2  # p = rho theta, E = rho u^2/2 + rho theta / 2
th_e = p_e / rho_e
phi1 = m_e
phi2 = m_e**2 / rho_e + rho_e * th_e
phi3 = u_e * (E_e + rho_e * th_e)
r1 = sp.simplify(sp.diff(rho_e, t) + sp.diff(phi1, x))
r2 = sp.simplify(sp.diff(m_e, t) + sp.diff(phi2, x))
r3 = sp.simplify(sp.diff(E_e, t) + sp.diff(phi3, x))
print("residuals:", r1, r2, r3)

section("BDF2 constant-state relaxation literal")
dt_s, eps_s, c_s = sp.symbols("dt eps c", positive=True)
# (f - 4/3 c + 1/3 c)/(dt/3) + f/eps = 0  ->  f = c * 3 eps / (3 eps + dt)
f_sol = sp.solve((sp.Symbol("f") - c_s) / (dt_s / 3) + sp.Symbol("f") / eps_s, sp.Symbol("f"))[0]
print("f =", sp.simplify(f_sol))

section("IMEX tableau order conditions (exact rationals)")


def check_tableau(name, A_im, b_im, c_im, A_ex, b_ex, c_ex, order):
    R = sp.Rational
    s = len(b_im)
    conds = []
    for A, b, c, tag in ((A_im, b_im, c_im, "im"), (A_ex, b_ex, c_ex, "ex")):
        conds.append((f"{tag}: sum b = 1", sum(b) - 1))
        conds.append((f"{tag}: sum b c = 1/2", sum(b[i] * c[i] for i in range(s)) - R(1, 2)))
        conds.append((f"{tag}: row sums = c",
                      sp.Matrix([sum(A[i]) - c[i] for i in range(s)]).norm()))
    # coupling order 2 is implied by shared c; order 3 conditions:
    if order >= 3:
        for A, b, c, tag in ((A_im, b_im, c_im, "im"), (A_ex, b_ex, c_ex, "ex")):
            conds.append((f"{tag}: sum b c^2 = 1/3",
                          sum(b[i] * c[i] ** 2 for i in range(s)) - R(1, 3)))
        for Ao, b, c, tag in ((A_im, b_im, c_im, "im-im"), (A_ex, b_im, c_im, "im-ex"),
                              (A_im, b_ex, c_ex, "ex-im"), (A_ex, b_ex, c_ex, "ex-ex")):
            conds.append((f"{tag}: sum b A c = 1/6",
                          sum(b[i] * sum(Ao[i][j] * c[j] for j in range(s))
                              for i in range(s)) - R(1, 6)))
    print(name)
    for label, val in conds:
        print("  ", label, "->", sp.simplify(val))


R = sp.Rational
# SSP2(3,2,2): implicit DIRK part and explicit part
A_im2 = [[R(1, 2), 0, 0], [-R(1, 2), R(1, 2), 0], [0, R(1, 2), R(1, 2)]]
b_im2 = [0, R(1, 2), R(1, 2)]
c_im2 = [R(1, 2), 0, 1]
A_ex2 = [[0, 0, 0], [0, 0, 0], [0, 1, 0]]
b_ex2 = [0, R(1, 2), R(1, 2)]
c_ex2 = [0, 0, 1]
check_tableau("SSP2(3,2,2) order-2 set", A_im2, b_im2, c_im2, A_ex2, b_ex2, c_ex2, 2)
print("  expected order-3 failure: sum b_im c_im^2 =",
      sum(b_im2[i] * c_im2[i] ** 2 for i in range(3)), "(should be 1/3 for order 3)")

# ARS(4,4,3)
A_im3 = [
    [0, 0, 0, 0, 0],
    [0, R(1, 2), 0, 0, 0],
    [0, R(1, 6), R(1, 2), 0, 0],
    [0, -R(1, 2), R(1, 2), R(1, 2), 0],
    [0, R(3, 2), -R(3, 2), R(1, 2), R(1, 2)],
]
b_im3 = [0, R(3, 2), -R(3, 2), R(1, 2), R(1, 2)]
c_im3 = [0, R(1, 2), R(2, 3), R(1, 2), 1]
A_ex3 = [
    [0, 0, 0, 0, 0],
    [R(1, 2), 0, 0, 0, 0],
    [R(11, 18), R(1, 18), 0, 0, 0],
    [R(5, 6), -R(5, 6), R(1, 2), 0, 0],
    [R(1, 4), R(7, 4), R(3, 4), -R(7, 4), 0],
]
b_ex3 = [R(1, 4), R(7, 4), R(3, 4), -R(7, 4), 0]
c_ex3 = [0, R(1, 2), R(2, 3), R(1, 2), 1]
check_tableau("ARS(4,4,3) order-3 set", A_im3, b_im3, c_im3, A_ex3, b_ex3, c_ex3, 3)

section("Gas injection source normalization")
sig = sp.Rational(1, 10)
c0 = 1 / sp.integrate(sp.exp(-((x - sp.Rational(1, 2)) ** 2) / (2 * sig**2)), (x, 0, 1))
print("c0 =", sp.N(c0, 15))
print("1/(sigma*sqrt(2*pi)) =", sp.N(1 / (sig * sp.sqrt(2 * sp.pi)), 15))

section("Steady damped advection profile (sweep oracle)")
# d/dx f = -(sigma/v) f with inflow 1 at x=0: f(x) = exp(-sigma x / v)
sig_s, v_s = sp.symbols("sigma vv", positive=True)
fx = sp.Function("f")
sol = sp.dsolve(v_s * fx(x).diff(x) + sig_s * fx(x), fx(x), ics={fx(0): 1})
print("f(x) =", sol.rhs)
