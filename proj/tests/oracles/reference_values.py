"""High-precision reference values for the unit tests.

Builds the Lindblad generators from jump operators via Kronecker
vectorisation (9x9 superoperators) in mpmath and differentiates the
dominant eigenvalue numerically at 40 digits. Shares no code with the C++
library. Run: python3 tests/oracles/reference_values.py
"""
import mpmath as mp

mp.mp.dps = 40
X, U, L = 0, 1, 2


def ket_bra(i, j):
    m = mp.zeros(3, 3)
    m[i, j] = 1
    return m


def kron(a, b):
    out = mp.zeros(a.rows * b.rows, a.cols * b.cols)
    for i in range(a.rows):
        for j in range(a.cols):
            for k in range(b.rows):
                for l in range(b.cols):
                    out[i * b.rows + k, j * b.cols + l] = a[i, j] * b[k, l]
    return out


def dagger(a):
    return a.transpose_conj()


I3 = mp.eye(3)


# Row-major vec: vec(A rho B) = (A kron B^T) vec(rho)
def left(a):
    return kron(a, I3)


def right(b):
    return kron(I3, b.T)


def jumps(gu, gl, nu, nl):
    # (operator, rate, count added to the u bath)
    return [
        (ket_bra(U, X), gu * (nu + 1), +1),
        (ket_bra(X, U), gu * nu, -1),
        (ket_bra(L, X), gl * (nl + 1), 0),
        (ket_bra(X, L), gl * nl, 0),
    ]


def superop(h, ops, chi=0):
    m = -1j * (left(h) - right(h))
    for op, rate, sign in ops:
        od = dagger(op)
        phase = mp.exp(1j * sign * chi)
        m += rate * (phase * left(op) * right(od) - 0.5 * (left(od * op) + right(od * op)))
    return m


def hamiltonian(eps, delta):
    return -delta * ket_bra(U, U) + eps * (ket_bra(U, L) + ket_bra(L, U))


def classical_ops(p):
    gu, gl, nu, nl, eps, delta = p
    gam = (gu * nu + gl * nl) / 2
    gc = 2 * eps**2 * gam / (delta**2 + gam**2)
    return jumps(gu, gl, nu, nl) + [(ket_bra(U, L), gc, 0), (ket_bra(L, U), gc, 0)]


def dominant(m):
    vals = mp.eig(m, left=False, right=False)
    return max(vals, key=lambda z: mp.re(z))


def cumulants(build):
    f = lambda chi: dominant(build(chi))
    # zeta(chi) = i mean chi - var chi^2 / 2 + ...
    d1 = mp.diff(f, 0, 1)
    d2 = mp.diff(f, 0, 2)
    return mp.re(d1 / 1j), mp.re(-d2)


def steady_state(m):
    u, s, v = mp.svd_c(m)
    vec = v.transpose_conj()[:, v.rows - 1]
    rho = mp.matrix(3, 3)
    for i in range(3):
        for j in range(3):
            rho[i, j] = vec[i * 3 + j]
    rho /= rho[0, 0] + rho[1, 1] + rho[2, 2]
    return rho


def pinv(m):
    u, s, v = mp.svd_c(m)
    cutoff = mp.mpf(10) ** -30 * max(s)
    sp = mp.zeros(m.cols, m.rows)
    for i in range(len(s)):
        if s[i] > cutoff:
            sp[i, i] = 1 / s[i]
    return v.transpose_conj() * sp * u.transpose_conj()


def bound(p, rho):
    gu, gl, nu, nl, eps, delta = p
    h = hamiltonian(eps, delta)
    ops = jumps(gu, gl, nu, nl)
    k1 = -1j * left(h)
    k2 = 1j * right(h)
    for op, rate, _ in ops:
        od = dagger(op)
        k1 += rate * (0.5 * left(op) * right(od) - 0.5 * left(od * op))
        k2 += rate * (0.5 * left(op) * right(od) - 0.5 * right(od * op))
    lv = k1 + k2
    vec = mp.matrix([rho[i, j] for i in range(3) for j in range(3)])
    trace_row = mp.matrix([[1 if i == j else 0 for i in range(3) for j in range(3)]])
    proj = vec * trace_row
    q = mp.eye(9) - proj
    lp = q * pinv(lv) * q
    tr = lambda v: sum(v[i * 3 + i] for i in range(3))
    psi = -4 * tr(k1 * lp * k2 * vec + k2 * lp * k1 * vec)
    upsilon = sum(rate * mp.re(sum((dagger(op) * op * rho)[i, i] for i in range(3))) for op, rate, _ in ops)
    return upsilon, psi


def report(name, p):
    gu, gl, nu, nl, eps, delta = p
    h = hamiltonian(eps, delta)
    ops = jumps(gu, gl, nu, nl)
    mean, var = cumulants(lambda chi: superop(h, ops, chi))
    mean_cl, var_cl = cumulants(lambda chi: superop(mp.zeros(3, 3), classical_ops(p), chi))
    log = mp.log(nl * (nu + 1) / (nu * (nl + 1)))
    sigma = log * mean
    q = sigma * var / mean**2
    q_cl = log * mean_cl * var_cl / mean_cl**2
    q_pop = log * (nl * (nu + 1) + nu * (nl + 1)) / (nl - nu)
    rho = steady_state(superop(h, ops))
    upsilon, psi = bound(p, rho)
    b = sigma / (upsilon + mp.re(psi))
    print(f"# {name}: {p}")
    for key, val in [("mean", mean), ("variance", var), ("mean_cl", mean_cl), ("variance_cl", var_cl),
                     ("q", q), ("q_cl", q_cl), ("q_pop", q_pop), ("sigma", sigma),
                     ("rho_xx", mp.re(rho[X, X])), ("rho_uu", mp.re(rho[U, U])), ("rho_ll", mp.re(rho[L, L])),
                     ("rho_ul_re", mp.re(rho[U, L])), ("rho_ul_im", mp.im(rho[U, L])),
                     ("upsilon", upsilon), ("psi_re", mp.re(psi)), ("psi_im", mp.im(psi)), ("b", b)]:
        print(f"{key} = {mp.nstr(val, 20)}")


if __name__ == "__main__":
    f = mp.mpf
    report("resonant", (f(2), f("0.1"), f("0.027"), f(5), f("0.15"), f(0)))
    report("detuned", (f(2), f("0.1"), f("0.027"), f(5), f("0.15"), f("0.5")))
    report("generic", (f("0.7"), f("1.3"), f("0.4"), f("2.2"), f("0.6"), f("0.1")))
