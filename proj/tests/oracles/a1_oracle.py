"""Reference value of A1 = int_0^T sup_m (lambda_m+1)^q t^(a-1) E_{a,a}(-lambda_m t^a) dt.

Independent of the library: E_{a,a} comes from mpmath series (small argument)
or from QUADPACK on its spectral integral (large argument), and the outer
integral uses 4x the library's default panel count.
Run: python3 a1_oracle.py
"""
import math

import mpmath as mp
import numpy as np
from scipy import integrate

mp.mp.dps = 30


def ml_aa_series(a, x):
    a, x = mp.mpf(a), mp.mpf(x)
    s, k = mp.mpf(0), 0
    while True:
        t = (-x) ** k / mp.gamma(a * k + a)
        s += t
        if k > 10 and abs(t) < mp.mpf(10) ** -25:
            return float(s)
        k += 1


def ml_aa_integral(a, x):
    # E_{a,a}(-x) = sin(a pi)/(a pi) int_0^inf w^(1/a) e^(-w^(1/a)) / (w^2 + 2 cos(a pi) x w + x^2) dw
    c, s = math.cos(a * math.pi), math.sin(a * math.pi)
    f = lambda w: w ** (1 / a) * math.exp(-(w ** (1 / a))) / (w * w + 2 * c * x * w + x * x)
    upper = 60.0**a
    v1, _ = integrate.quad(f, 0, min(x, upper), limit=200, epsabs=0, epsrel=1e-12)
    v2, _ = integrate.quad(f, min(x, upper), upper, limit=200, epsabs=0, epsrel=1e-12)
    v3, _ = integrate.quad(f, upper, np.inf, limit=200, epsabs=0, epsrel=1e-12)
    return s / (a * math.pi) * (v1 + v2 + v3)


def ml_aa(a, x):
    if x == 0:
        return 1 / math.gamma(a)
    return ml_aa_series(a, x) if x <= 2 else ml_aa_integral(a, x)


def a1(alpha, T, q, lambdas, panels):
    S = T**alpha
    xg, wg = np.polynomial.legendre.leggauss(10)
    total = 0.0
    for j in range(panels):
        s0, s1 = S * (j / panels) ** 3, S * ((j + 1) / panels) ** 3
        for xi, wi in zip(xg, wg):
            s = 0.5 * (s0 + s1) + 0.5 * (s1 - s0) * xi
            best = max((l + 1) ** q * ml_aa(alpha, l * s) for l in lambdas)
            total += 0.5 * (s1 - s0) * wi * best
    return total / alpha


if __name__ == "__main__":
    # self-check of the two E_{a,a} routes where both apply
    for x in (1.5, 2.0, 3.0):
        d = abs(ml_aa_series(0.3, x) - ml_aa_integral(0.3, x))
        assert d < 1e-10, (x, d)
    lam = sorted({math.pi**2 * (i * i + j * j) for i in range(20) for j in range(20)})
    print("A1(alpha=0.3, T=3, q=0.5) = %.15g" % a1(0.3, 3.0, 0.5, lam, 240))
    print("A1(alpha=0.3, T=3, q=0)   = %.15g" % a1(0.3, 3.0, 0.0, lam, 240))
