"""Independent reference values for the unit tests, computed with mpmath/sympy.

Run: python3 tests/oracles/gen_oracles.py
The printed numbers are frozen into the C++ tests.
"""
import mpmath as mp
import sympy as sp

mp.mp.dps = 50


def shoot(eps, bits=400, n_max=3000):
    with mp.workprec(bits):
        eps = mp.mpf(eps)

        def side(x):
            v_prev, v = mp.mpf(0), x
            nxt = (eps - x) / x
            if nxt <= 0:
                return +1
            v_prev, v = v, nxt
            for n in range(1, n_max):
                nxt = eps * (n + 1) / v - v_prev - 1
                if nxt <= 0:
                    return +1 if (n + 1) % 2 else -1
                v_prev, v = v, nxt
            return 0

        lo, hi = mp.mpf(0), eps
        for _ in range(bits - 8):
            mid = (lo + hi) / 2
            s = side(mid)
            if s == 0:
                return mid
            if s > 0:
                hi = mid
            else:
                lo = mid
        return (lo + hi) / 2


def v_of(eps, x, n):
    prev, cur = mp.mpf(0), mp.mpf(x)
    for k in range(n):
        nxt = (eps - x) / x if k == 0 else eps * (k + 1) / cur - prev - 1
        prev, cur = cur, nxt
    return cur


def main():
    print("bisect q+sinh(2q)/2=0.2:", mp.findroot(lambda q: q + mp.sinh(2 * q) / 2 - mp.mpf("0.2"), 0.1))
    q = mp.findroot(lambda q: (q + mp.sinh(2 * q) / 2) / 2 - mp.mpf("0.1"), 0.1)
    print("catenoid_closed(1,0.1,-1): r =", mp.cosh(q) ** 2, " z =", q)
    print("sigma1(hbar=0.1):", mp.findroot(lambda s: s * (2 + s) ** 2 - mp.mpf("0.8"), 0.17))
    v = mp.findroot(lambda v: v / 2 + mp.sinh(2 * v) / 4 - 1, 0.8)
    print("helicoid w(1):", mp.sinh(v), " v =", v)
    print("enneper closed(0.1,0,1):", (mp.cbrt(mp.mpf("1.9")) - 1) * mp.mpf(2) / 3)
    print("hyperbola r_1(eps=1,delta=0,c=1):", -mp.mpf(1) / 2 + mp.sqrt(mp.mpf(5) / 4))
    for eps in ["1", "0.1", "0.02", "0.01", "0.005"]:
        print("vhat(%s):" % eps, mp.nstr(shoot(mp.mpf(eps)), 25))
    eps = mp.mpf("0.1")
    x = sp.symbols("x")
    e = sp.Rational(1, 10)
    c2 = ((1 + e) / 2) * (sp.sqrt(1 + 4 * e / (1 + e) ** 2) - 1)
    c3 = ((1 - 2 * e) / 8) * (sp.sqrt(1 + 16 * e / (1 - 2 * e) ** 2) - 1)
    c4 = e * (4 + e) / (3 - 2 * e) * (1 - sp.sqrt(1 - 5 * (3 - 2 * e) / (e + 4) ** 2))
    print("c2, c3, c4 (eps=0.1):", sp.N(c2, 20), sp.N(c3, 20), sp.N(c4, 20))
    print("v_2(c2), v_3(c3), v_4(c4):",
          mp.nstr(v_of(eps, mp.mpf(str(sp.N(c2, 40))), 2), 5),
          mp.nstr(v_of(eps, mp.mpf(str(sp.N(c3, 40))), 3), 5),
          mp.nstr(v_of(eps, mp.mpf(str(sp.N(c4, 40))), 4), 5))


if __name__ == "__main__":
    main()
