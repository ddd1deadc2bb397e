"""Independent reference values for the unit tests (mpmath, 40 digits).

Run from the repository root:  python3 tests/oracle/derive.py > tests/oracle_values.hpp
"""
import mpmath as mp

mp.mp.dps = 40


def gaussian_theta():
    return mp.nsum(lambda n: mp.e ** (-mp.pi * n * n), [-mp.inf, mp.inf])


def dilated_theta(lam):
    return mp.nsum(lambda n: mp.e ** (-mp.pi * (n / lam) ** 2), [-mp.inf, mp.inf])


def gamma_factor(s):
    return mp.pi ** (-s / 2) * mp.gamma(s / 2)


def kronecker_L(s, D):
    # Periodic coefficients: L(s) = q^-s sum_a chi(a) zeta(s, a/q).
    q = abs(D)
    return q ** (-mp.mpf(s)) * mp.fsum(kronecker(D, a) * mp.zeta(s, mp.mpf(a) / q) for a in range(1, q + 1))


def kronecker(D, n):
    # Kronecker symbol (D / n) for n >= 1.
    result = 1
    m = n
    while m % 2 == 0:
        m //= 2
        if D % 2 == 0:
            return 0
        result *= 1 if D % 8 in (1, 7) else -1
    a, b = D % m if m > 1 else 0, m
    if m == 1:
        return result
    t = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if b % 8 in (3, 5):
                t = -t
        a, b = b, a
        if a % 4 == 3 and b % 4 == 3:
            t = -t
        a %= b
    return result * t if b == 1 else 0


def split_orbital_gaussian(t0, r, radius):
    """int_R du  (1/pi) int_0^pi  exp(-pi |k Z k^-1|^2 / radius^2) dtheta,
    Z = t0 + [[r, 2 r u], [0, -r]], center 0, coordinates (alpha, beta, b, c)."""
    def f(u, th):
        c, s = mp.cos(th), mp.sin(th)
        beta, b, cc = r, 2 * r * u, mp.mpf(0)
        # k = [[c, -s], [s, c]]; M = k [[beta, b], [cc, -beta]] k^T
        m11 = c * (c * beta - s * cc) - s * (c * b + s * beta)
        m12 = s * (c * beta - s * cc) + c * (c * b + s * beta)
        m21 = c * (s * beta + c * cc) - s * (s * b - c * beta)
        q = t0 ** 2 + m11 ** 2 + m12 ** 2 + m21 ** 2
        return mp.e ** (-mp.pi * q / radius ** 2)
    inner = lambda u: mp.quad(lambda th: f(u, th), [0, mp.pi / 2, mp.pi]) / mp.pi
    return mp.quad(inner, [-mp.inf, -1, 0, 1, mp.inf])


def emit(name, value):
    print(f"inline constexpr double {name} = {mp.nstr(value, 25)};")


print("// Generated by tests/oracle/derive.py; do not edit by hand.")
print("#pragma once\n")
print("namespace oracle {\n")
emit("kThetaGaussian", gaussian_theta())
emit("kThetaDilated2", dilated_theta(2))
emit("kGammaFactor1", gamma_factor(1))
emit("kGammaFactor2", gamma_factor(2))
emit("kGammaFactor3", gamma_factor(3))
emit("kZeta2", mp.zeta(2))
emit("kZeta3", mp.zeta(3))
emit("kZeta1p5", mp.zeta(1.5))
emit("kHurwitzRegular1Half", -mp.digamma(mp.mpf(1) / 2))
emit("kHurwitzRegular1Third", -mp.digamma(mp.mpf(1) / 3))
emit("kHurwitzRegular2Quarter", mp.zeta(2, mp.mpf(1) / 4) - 1)
emit("kLMinus4At1", mp.pi / 4)
emit("kLMinus3At1", mp.pi / (3 * mp.sqrt(3)))
emit("kL5At1", 2 * mp.log((1 + mp.sqrt(5)) / 2) / mp.sqrt(5))
emit("kL8At1", mp.log(1 + mp.sqrt(2)) / mp.sqrt(2))
emit("kLMinus4At2", mp.catalan)
emit("kLMinus8At3", kronecker_L(3, -8))
emit("kL12At2", kronecker_L(2, 12))
emit("kRealWeightAt1", -mp.log(2) / 2)
emit("kRealWeightAt3", -mp.log(10) / 2)
emit("kSplitOrbitalGaussian", split_orbital_gaussian(mp.mpf(0), mp.mpf(1), mp.mpf(1)))
emit("kSplitOrbitalGaussianWide", split_orbital_gaussian(mp.mpf("0.5"), mp.mpf("0.75"), mp.mpf(2)))
print("\n}  // namespace oracle")
