"""Taylor coefficients (in x = p - 1/2) of the Riemann-Siegel correction terms C0..C4.

psi(p) = cos(2 pi (p^2 - p - 1/16)) / cos(2 pi p); the C_k are fixed linear
combinations of psi's derivatives. Output is Rust source for src/rs_coeffs.rs.
"""
import mpmath as mp

mp.mp.dps = 150
DEG = 90


def psi(p):
    return mp.cos(2 * mp.pi * (p * p - p - mp.mpf(1) / 16)) / mp.cos(2 * mp.pi * p)


# Taylor coefficients via a Cauchy integral on |x| = 0.2 (psi is entire).
def taylor_psi(deg, radius=mp.mpf("0.2"), nodes=512):
    coeffs = []
    vals = [psi(mp.mpf(1) / 2 + radius * mp.expj(2 * mp.pi * (j + mp.mpf(1) / 3) / nodes)) for j in range(nodes)]
    for m in range(deg + 1):
        s = mp.mpc(0)
        for j in range(nodes):
            s += vals[j] * mp.expj(-2 * mp.pi * m * (j + mp.mpf(1) / 3) / nodes)
        coeffs.append((s / nodes / radius**m).real)
    return coeffs


c = taylor_psi(DEG)


def deriv(k):
    # Taylor coefficients of psi^{(k)}
    return [c[m + k] * mp.factorial(m + k) / mp.factorial(m) for m in range(DEG + 1 - k)]


def comb(terms):
    n = min(len(deriv(k)) for _, k in terms)
    out = [mp.mpf(0)] * n
    for w, k in terms:
        d = deriv(k)
        for i in range(n):
            out[i] += w * d[i]
    return out


pi = mp.pi
C = [
    comb([(1, 0)]),
    comb([(-1 / (96 * pi**2), 3)]),
    comb([(1 / (64 * pi**2), 2), (1 / (18432 * pi**4), 6)]),
    comb([(-1 / (64 * pi**2), 1), (-1 / (3840 * pi**4), 5), (-1 / (5308416 * pi**6), 9)]),
    comb([(1 / (128 * pi**2), 0), (19 / (24576 * pi**4), 4), (11 / (5898240 * pi**6), 8), (1 / (2038431744 * pi**8), 12)]),
]

# check C0 series against psi at the interval ends
for p in [mp.mpf("0.01"), mp.mpf("0.99"), mp.mpf("0.25")]:
    x = p - mp.mpf(1) / 2
    s = sum(C[0][i] * x**i for i in range(len(C[0])))
    ref = psi(p) if p != mp.mpf("0.25") else mp.limit(psi, p)
    assert abs(s - ref) < mp.mpf(10) ** -30, (p, s, ref)

print("// Generated by tools/rs_coeffs.py. Taylor coefficients in x = p - 1/2.")
for k, ck in enumerate(C):
    # drop coefficients that cannot matter for |x| <= 1/2 in f64
    keep = [v if abs(v) > mp.mpf(10) ** -60 else mp.mpf(0) for v in ck]
    while len(keep) > 1 and abs(keep[-1]) * mp.mpf(2) ** -(len(keep) - 1) < mp.mpf(10) ** -22:
        keep.pop()
    print(f"pub const C{k}: [f64; {len(keep)}] = [")
    for v in keep:
        print(f"    {mp.nstr(v, 20, min_fixed=-1, max_fixed=-1) if v else '0.0'},")
    print("];")
