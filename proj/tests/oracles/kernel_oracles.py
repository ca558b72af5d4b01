"""High-precision reference values for the kernel tests.

Fourier convention: fhat(p) = (2 pi)^{-1/2} int f(x) exp(+i p x) dx, so the
unit Hermite function h_n maps to i^n h_n and a shift by a multiplies by
exp(i a p).  The printed values are frozen into tests/test_kernel.cpp.
"""
import mpmath as mp

mp.mp.dps = 30


def h(n, x):
    return mp.hermite(n, x) * mp.e ** (-x * x / 2) / mp.sqrt(2 ** n * mp.factorial(n) * mp.sqrt(mp.pi))


def pk(p):
    # p / (1 - e^{-p}), regular at 0
    return mp.mpf(1) if p == 0 else p / (-mp.expm1(-p))


def pv_K(h_of_p, z=0):
    # PV int K(p) e^{izp} h(p) dp as int_0^inf (G(p) - G(-p)) / p
    def G(p):
        return pk(p) * mp.e ** (1j * z * p) * h_of_p(p)
    return mp.quad(lambda p: (G(p) - G(-p)) / p, [0, 1, 4, 12])


def hat(n, a=0):
    return lambda p: (1j) ** n * h(n, p) * mp.e ** (1j * a * p)


def pair(n1, a1, n2, a2):
    f, g = hat(n1, a1), hat(n2, a2)
    return lambda p: mp.conj(f(p)) * g(p)


print("theta(h0,h1)        =", mp.nstr(pv_K(pair(0, 0, 1, 0)), 20))
print("theta(h0,h0)        =", mp.nstr(pv_K(pair(0, 0, 0, 0)), 20))
print("theta(h1,h2(.-0.5)) =", mp.nstr(pv_K(pair(1, 0, 2, 0.5)), 20))
print("strip(h0,h1,.3+.4i) =", mp.nstr(pv_K(pair(0, 0, 1, 0), mp.mpc(0.3, 0.4)), 20))
print("strip(h0,h0,i/2)    =", mp.nstr(pv_K(pair(0, 0, 0, 0), 0.5j), 20))
print("strip(h0,h1,i)      =", mp.nstr(pv_K(pair(0, 0, 1, 0), 1j), 20))
v01 = mp.quad(lambda p: pair(0, 0, 1, 0)(p), [0, 4, 12])
print("vacuum(h0,h1)       =", mp.nstr(v01, 20))


def L(u):
    return mp.quad(lambda p: mp.log(1 - mp.e ** (-p)) * mp.cos(p * u), [0, 1, 5, 40, mp.inf])


def k_closed(u):
    if u == 0:
        return mp.mpc(0)
    return -1j * (mp.pi * mp.coth(mp.pi * u) - 1 / u)


for u in [mp.mpf("0.3"), mp.mpf("1.7")]:
    print("kernel u=%s" % u, mp.nstr(2j * u * L(u), 15), mp.nstr(k_closed(u), 15))


def corr01(u):
    # int h0(y+u) h1(y) dy in closed form
    return -u / mp.sqrt(2) * mp.e ** (-u * u / 4)


t01 = mp.quad(lambda u: k_closed(u) * corr01(u), [-mp.inf, 0, mp.inf]) / (2 * mp.pi)
print("tcorr(h0,h1)        =", mp.nstr(t01, 20))
print("theta - vacuum      =", mp.nstr(pv_K(pair(0, 0, 1, 0)) - v01, 20))
# bosonic 2-pt i*theta(h0, h0') with h0' = -h1/sqrt2
print("bosonic(h0,h0)      =", mp.nstr(1j * pv_K(pair(0, 0, 1, 0)) * (-1 / mp.sqrt(2)), 20))
