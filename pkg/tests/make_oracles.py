"""Regenerate tests/oracle_values.py with mpmath (dps = 30).

    python3 tests/make_oracles.py > tests/oracle_values.py

Everything here is independent of the swb package.
"""
from __future__ import annotations

import mpmath as mp

mp.mp.dps = 30
pi = mp.pi
EG = mp.euler


def zstar(s):
    return pi ** (-s / 2) * mp.gamma(s / 2) * mp.zeta(s)


def zstar_d(s):
    return mp.diff(zstar, s)


def phi(s):
    return zstar(2 * s - 1) / zstar(2 * s)


def closed(s, T):
    return T ** (s - 1) / (s - 1) - phi(s) * T ** (-s) / s


def laurent_ct(f, s0, r=mp.mpf("0.2"), n=64):
    tot = 0
    for k in range(n):
        w = r * mp.expjpi(2 * (k + mp.mpf(1) / 2) / n)
        tot += f(s0 + w)
    return tot / n


def erf_half():
    return mp.erf(mp.sqrt(pi / 2))


def constants():
    a = mp.mpf(-1) / 2
    x = pi / 2
    G = mp.gammainc(a, x)
    dG = mp.diff(lambda t: mp.gammainc(t, x), a)
    Bt = mp.sqrt(pi / 2) * (dG - G * mp.log(x))
    A = 2 * erf_half() * (-4 * (EG + 1) + mp.log(2) + pi * mp.log(pi / 2)) + 2 * pi * mp.log(2 / pi) + mp.sqrt(pi) * dG
    A_alt = mp.sqrt(2) * Bt + (8 * (-EG - 1) + mp.log(4)) * erf_half()
    w32 = 3 * (-12 * mp.zeta(2, derivative=1) + 2 * EG * pi**2 + pi**2 * (-EG - mp.log(8))) / pi**3
    ct_half = mp.sqrt(2 * pi) * laurent_ct(lambda s: 2 ** (-s) * mp.gamma(s) * mp.zeta(2 * s) / mp.zeta(2 * s + 1),
                                           mp.mpf(1) / 2, r=mp.mpf("0.1"))
    return {
        "Btilde": Bt, "A": A, "A_alt": A_alt, "weight32": w32, "ct_half_gamma_zeta": ct_half,
        "zeta_prime_m1": mp.zeta(-1, derivative=1), "zeta_prime_2": mp.zeta(2, derivative=1),
        "zstar_prime_2": zstar_d(mp.mpf(2)), "zstar_prime_m1": zstar_d(mp.mpf(-1)),
        "erf_half_pi": erf_half(), "half_region_constant": mp.mpf(1) / 2 - mp.atanh(mp.mpf(1) / 2) - mp.log(mp.mpf(3) / 4) / 4,
    }


def closed_forms():
    out = {}
    for s, T in ((2, 2), (3, 1.5), (mp.mpc(2.5, 0.5), 4)):
        out[f"closed[{s},{T}]"] = closed(mp.mpmathify(s), mp.mpf(T))
    for T in (1, 2, 8, 10):
        T = mp.mpf(T)
        out[f"ct_s0[{int(T)}]"] = laurent_ct(lambda s: closed(s, T), 0)
        out[f"ct_s1[{int(T)}]"] = laurent_ct(lambda s: closed(s, T), 1)
        out[f"ct_s0_log[{int(T)}]"] = laurent_ct(lambda s: mp.diff(lambda w: closed(w, T), s), 0)
    return out


def eisenstein(z, s, n_max=60):
    x, y = mp.re(z), mp.im(z)
    val = y**s + phi(s) * y ** (1 - s)
    acc = 0
    for n in range(1, n_max):
        sig = sum(mp.mpf(d) ** (1 - 2 * s) for d in range(1, n + 1) if n % d == 0)
        acc += mp.mpf(n) ** (s - mp.mpf(1) / 2) * sig * mp.besselk(s - mp.mpf(1) / 2, 2 * pi * n * y) * mp.cos(2 * pi * n * x)
    return val + 4 * mp.sqrt(y) * acc / zstar(2 * s)


def siegel_brute(tau, z, bound=12, shift=0):
    u, v = mp.re(tau), mp.im(tau)
    x, y = mp.re(z), mp.im(z)
    tot = 0
    for l1 in range(-bound, bound + 1):
        for l2i in range(-bound, bound + 1):
            l2 = l2i + shift
            for l3 in range(-bound, bound + 1):
                q = l2 * l2 + l1 * l3
                D = l1 + 2 * l2 * x - l3 * (x * x + y * y)
                maj = 2 * q + D * D / (y * y)
                tot += mp.expj(2 * pi * q * u) * mp.exp(-pi * v * maj)
    return tot


def limit_profile(y, kappa):
    return sum(2 * mp.e1(pi * kappa * n * n / y**2) for n in range(1, 40))


def limit_case(T, kappa):
    T = mp.mpf(T)
    top = 1 / T
    f_hi = lambda y: limit_profile(y, kappa) / y**2  # noqa: E731
    f_lo = lambda y: limit_profile(y, kappa) * (1 - 2 * mp.sqrt(y * (top - y))) / y**2  # noqa: E731
    return mp.quad(f_hi, [top, 1, T]) + mp.quad(f_lo, [top / 4, top / 2, top])


def log_pet(x, y):
    q = mp.exp(2 * pi * mp.mpc(-y, x))
    s = -2 * pi * y
    qn = q
    for _ in range(80):
        s += 24 * mp.log(abs(1 - qn))
        qn *= q
    return s + 6 * mp.log(y)


def delta_compact():
    mp.mp.dps = 20
    f = lambda x: mp.quad(lambda y: log_pet(x, y) / y**2, [mp.sqrt(1 - x * x), 1])  # noqa: E731
    val = 2 * mp.quad(f, [0, mp.mpf(1) / 2])
    mp.mp.dps = 30
    return val


def main():
    vals = {}
    vals.update(constants())
    vals.update(closed_forms())
    vals["E[i,2]"] = eisenstein(mp.mpc(0, 1), mp.mpf(2))
    vals["E[0.3+1.7i,2]"] = eisenstein(mp.mpc("0.3", "1.7"), mp.mpf(2))
    vals["siegel[i,i,mu0]"] = siegel_brute(mp.mpc(0, 1), mp.mpc(0, 1))
    vals["siegel[i,i,mu1]"] = siegel_brute(mp.mpc(0, 1), mp.mpc(0, 1), shift=mp.mpf(1) / 2)
    vals["limit_case[2,1]"] = limit_case(2, 1)
    vals["limit_case[2,4]"] = limit_case(2, 4)
    vals["delta_compact"] = delta_compact()
    print('"""Frozen oracle values (mpmath, dps = 30); regenerate with make_oracles.py."""')
    print("ORACLE = {")
    for k, v in vals.items():
        v = mp.mpmathify(v)
        if isinstance(v, mp.mpc) and abs(mp.im(v)) > mp.mpf(10) ** -25:
            print(f"    {k!r}: complex({mp.nstr(mp.re(v), 20)}, {mp.nstr(mp.im(v), 20)}),")
        else:
            print(f"    {k!r}: {mp.nstr(mp.re(v), 20)!r},")
    print("}")


if __name__ == "__main__":
    main()
