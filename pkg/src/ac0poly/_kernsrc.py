"""Inner loops over reduced integers.

This file is loaded twice by ``_kernels``: once compiled with numba over
int64 arrays (valid while p < 2^31, so every product fits in 63 bits) and
once as plain Python over object arrays for larger primes. All arrays hold
values in [0, p); every function keeps them there.
"""

import numpy as np

OBJECT = globals().get("OBJECT", False)

if OBJECT:

    def jit(f):
        return f

    def zeros(n):
        return np.zeros(n, dtype=object)

    def zeros2(n, m):
        return np.zeros((n, m), dtype=object)

else:
    import numba

    jit = numba.njit(cache=True)

    @jit
    def zeros(n):
        return np.zeros(n, np.int64)

    @jit
    def zeros2(n, m):
        return np.zeros((n, m), np.int64)


# Above this truncation order the exponential is evaluated as a product of
# single-term exponentials; below it, by Horner on sum g^k/k!.
EXP_HORNER_MAX = 64


@jit
def powmod(a, e, p):
    r = 1
    a = a % p
    while e > 0:
        if e & 1:
            r = r * a % p
        a = a * a % p
        e >>= 1
    return r


@jit
def series_mul(a, b, N, p):
    out = zeros(N)
    la = min(len(a), N)
    for i in range(la):
        ai = a[i]
        if ai == 0:
            continue
        lb = min(len(b), N - i)
        for j in range(lb):
            out[i + j] = (out[i + j] + ai * b[j]) % p
    return out


@jit
def mul_poly(a, b, p):
    if len(a) == 0 or len(b) == 0:
        return zeros(0)
    out = zeros(len(a) + len(b) - 1)
    for i in range(len(a)):
        ai = a[i]
        if ai == 0:
            continue
        for j in range(len(b)):
            out[i + j] = (out[i + j] + ai * b[j]) % p
    return out


@jit
def rem_monic(a, f, p):
    """a mod f for monic f, returned with length deg f."""
    n = len(f) - 1
    r = zeros(max(len(a), n))
    for i in range(len(a)):
        r[i] = a[i]
    for i in range(len(a) - 1, n - 1, -1):
        c = r[i]
        if c == 0:
            continue
        for j in range(n + 1):
            r[i - n + j] = (r[i - n + j] - c * f[j]) % p
    return r[:n].copy()


@jit
def geom_series(w, N, p):
    """sum_{k<N} w^k mod t^N for w with zero constant term.

    Doubling form: prod_j (1 + w^(2^j)) over 2^J >= N.
    """
    acc = zeros(N)
    acc[0] = 1 % p
    pw = zeros(N)
    for i in range(min(len(w), N)):
        pw[i] = w[i]
    step = 1
    while step < N:
        t = series_mul(acc, pw, N, p)
        for i in range(N):
            acc[i] = (acc[i] + t[i]) % p
        step *= 2
        if step < N:
            pw = series_mul(pw, pw, N, p)
    return acc


@jit
def exp_horner(g, N, p, inv):
    """sum_{k<N} g^k / k! mod t^N, g(0) = 0, by Horner in g."""
    e = zeros(N)
    e[0] = 1 % p
    for k in range(N - 1, 0, -1):
        t = series_mul(g, e, N, p)
        ik = inv[k]
        for i in range(N):
            e[i] = t[i] * ik % p
        e[0] = (e[0] + 1) % p
    return e


@jit
def exp_factored(g, N, p, invfact):
    """Same truncated exponential as exp_horner, as prod_k exp(g_k t^k)."""
    e = zeros(N)
    e[0] = 1 % p
    for k in range(1, min(len(g), N)):
        c = g[k]
        if c == 0:
            continue
        jmax = (N - 1) // k
        terms = zeros(jmax + 1)
        cj = 1 % p
        for j in range(jmax + 1):
            terms[j] = cj * invfact[j] % p
            cj = cj * c % p
        new = zeros(N)
        for i in range(N):
            s = 0
            j = 0
            while j * k <= i:
                s = (s + e[i - j * k] * terms[j]) % p
                j += 1
            new[i] = s
        e = new
    return e


@jit
def exp_auto(g, N, p, inv, invfact):
    if N <= EXP_HORNER_MAX:
        return exp_horner(g, N, p, inv)
    return exp_factored(g, N, p, invfact)


@jit
def power_sums(f, d, p):
    """p_0..p_d of the roots of monic f as rev(f')/rev(f) mod t^(d+1)."""
    n = len(f) - 1
    N = d + 1
    w = zeros(N)
    for i in range(1, min(n, N - 1) + 1):
        w[i] = (p - f[n - i]) % p
    ginv = geom_series(w, N, p)
    rp = zeros(max(n, 1))
    for i in range(n):
        rp[i] = (n - i) % p * f[n - i] % p
    return series_mul(rp, ginv, N, p)


@jit
def esym_from_sums(c, top, p, inv, invfact):
    """e_0..e_top from power sums c_1..c_top (c[0] ignored)."""
    N = top + 1
    g = zeros(N)
    for k in range(1, N):
        v = c[k] * inv[k] % p
        g[k] = v if k % 2 == 1 else (p - v) % p
    return exp_auto(g, N, p, inv, invfact)


@jit
def from_power_sums(ps, n, p, inv, invfact):
    e = esym_from_sums(ps, n, p, inv, invfact)
    out = zeros(n + 1)
    for i in range(n + 1):
        v = e[n - i]
        out[i] = v if (n - i) % 2 == 0 else (p - v) % p
    return out


@jit
def root_power_sums(f, gred, ps, top, p):
    """c_k = sum over roots of f of g(alpha)^k for k <= top.

    Powers of g are reduced modulo f before pairing with the power sums of f;
    the sums are unchanged because f vanishes at each root.
    """
    n = len(f) - 1
    c = zeros(top + 1)
    c[0] = n % p
    G = zeros(n)
    if n > 0:
        G[0] = 1
    for k in range(1, top + 1):
        G = rem_monic(mul_poly(G, gred, p), f, p)
        s = 0
        for j in range(n):
            s = (s + G[j] * ps[j]) % p
        c[k] = s
    return c


@jit
def esym_all(f, gred, ps, top, p, inv, invfact):
    c = root_power_sums(f, gred, ps, top, p)
    return esym_from_sums(c, top, p, inv, invfact)


@jit
def interp_consec(vals, p, invfact):
    """Coefficients of the polynomial through (i, vals[i]), i = 0..D."""
    D = len(vals) - 1
    master = zeros(D + 2)
    master[0] = 1
    for j in range(D + 1):
        # multiply by (x - j)
        for i in range(j + 1, 0, -1):
            master[i] = (master[i - 1] - j * master[i]) % p
        master[0] = (-j * master[0]) % p
    out = zeros(D + 1)
    q = zeros(D + 1)
    for i in range(D + 1):
        if vals[i] == 0:
            continue
        # q = master / (x - i), synthetic division from the top
        carry = 0
        for k in range(D + 1, 0, -1):
            carry = (master[k] + carry * i) % p
            q[k - 1] = carry
        w = invfact[i] * invfact[D - i] % p
        if (D - i) % 2 == 1:
            w = (p - w) % p
        w = w * vals[i] % p
        for k in range(D + 1):
            out[k] = (out[k] + w * q[k]) % p
    return out


@jit
def filter_out(f, g, p, inv, invfact):
    """Monic product of the factors of f at roots where g does not vanish.

    Nonzero product over the roots of h(x, y) = (y - x) g(x): the largest k
    with e_k(h(alpha, y)) nonzero as a polynomial in y is read off the top
    y-coefficient e_k(g(alpha)); that e_k is sampled at y = 0..k,
    interpolated, and scaled by its leading coefficient.
    """
    n = len(f) - 1
    if n == 0:
        one = zeros(1)
        one[0] = 1
        return one
    ps = power_sums(f, n - 1, p)
    gred = rem_monic(g, f, p)
    e = esym_all(f, gred, ps, n, p, inv, invfact)
    D = 0
    for k in range(n, 0, -1):
        if e[k] != 0:
            D = k
            break
    if D == 0:
        one = zeros(1)
        one[0] = 1
        return one
    if D == n:
        return f.copy()
    xg = zeros(n + 1)
    for i in range(n):
        xg[i + 1] = gred[i]
    xg = rem_monic(xg, f, p)
    vals = zeros(D + 1)
    h = zeros(n)
    for y0 in range(D + 1):
        for i in range(n):
            h[i] = (y0 * gred[i] - xg[i]) % p
        ey = esym_all(f, h, ps, D, p, inv, invfact)
        vals[y0] = ey[D]
    r = interp_consec(vals, p, invfact)
    top = D
    while top > 0 and r[top] == 0:
        top -= 1
    li = powmod(r[top], p - 2, p)
    out = zeros(top + 1)
    for i in range(top + 1):
        out[i] = r[i] * li % p
    return out


@jit
def y_top_coeffs(g, ps, C, As, nx, p, inv, invfact):
    """Row l: coefficients in x (degree < nx) of the y^(m-1) coefficient of
    prod over roots b of monic g of (A_l(b) + y (x - b) C(b)), m = deg g.

    With D = (x0 - z) C, that coefficient is the t-linear part of the norm of
    D + t A_l, read off the exponential of the power sums Tr((D + t A_l)^k)
    = Tr(D^k) + t k Tr(D^(k-1) A_l). Traces pair against the Hankel matrix of
    power sums, so all rows share the powers of D. Rows of As need not be
    reduced mod g; with width W, ps must reach p_(m+W-2). Sampled at
    x0 = 0..nx-1 and interpolated.
    """
    m = len(g) - 1
    L = As.shape[0]
    W = As.shape[1]
    Cr = rem_monic(C, g, p)
    zC = zeros(m + 1)
    for i in range(m):
        zC[i + 1] = Cr[i]
    zC = rem_monic(zC, g, p)
    vals = zeros2(L, nx)
    D = zeros(m)
    v = zeros(W)
    T = zeros2(m + 1, L)
    c = zeros(m + 1)
    for x0 in range(nx):
        for i in range(m):
            D[i] = (x0 * Cr[i] - zC[i]) % p
        U = zeros(m)
        U[0] = 1
        for k in range(1, m + 1):
            for i in range(W):
                s = 0
                for j in range(m):
                    s = (s + ps[i + j] * U[j]) % p
                v[i] = s
            for l in range(L):
                s = 0
                for j in range(W):
                    s = (s + v[j] * As[l, j]) % p
                T[k, l] = s
            U = rem_monic(mul_poly(U, D, p), g, p)
            s = 0
            for j in range(m):
                s = (s + U[j] * ps[j]) % p
            c[k] = s
        g0 = zeros(m + 1)
        for k in range(1, m + 1):
            w = c[k] * inv[k] % p
            g0[k] = w if k % 2 == 1 else (p - w) % p
        E = exp_auto(g0, m + 1, p, inv, invfact)
        for l in range(L):
            s = 0
            for k in range(1, m + 1):
                t = E[m - k] * T[k, l] % p
                s = (s + t) if k % 2 == 1 else (s - t)
            vals[l, x0] = s % p
    out = zeros2(L, nx)
    for l in range(L):
        r = interp_consec(vals[l].copy(), p, invfact)
        for i in range(nx):
            out[l, i] = r[i]
    return out
