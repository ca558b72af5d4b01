"""State counts of the boson + NS fermion Fock space per energy, frozen into
tests/test_svir.cpp.

prod_{n>=1} (1 - q^n)^{-1} prod_{r in N - 1/2} (1 + q^r), written in t = q^{1/2}
and expanded to t^24 (energy 12).
"""
import sympy as sp

t = sp.symbols("t")
N2 = 24
series = sp.Integer(1)
for n in range(1, N2 // 2 + 1):
    series = sp.expand(series * sum(t ** (2 * n * k) for k in range(N2 // (2 * n) + 1)))
    series = sum(series.coeff(t, i) * t ** i for i in range(N2 + 1))
for j in range(1, N2 + 1, 2):
    series = sp.expand(series * (1 + t ** j))
    series = sum(series.coeff(t, i) * t ** i for i in range(N2 + 1))
counts = [int(series.coeff(t, i)) for i in range(N2 + 1)]
print(counts)
print("total", sum(counts))
