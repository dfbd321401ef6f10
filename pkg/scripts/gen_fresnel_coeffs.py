"""Regenerate the frozen Chebyshev tables used by nearband.fresnel.

The mid-range branch (1.6 < |x| <= 6) evaluates the auxiliary functions
f, g of the Fresnel integrals (Abramowitz & Stegun 7.3.9-7.3.10),

    C(x) = 1/2 + f(x) sin(pi x^2 / 2) - g(x) cos(pi x^2 / 2)
    S(x) = 1/2 - f(x) cos(pi x^2 / 2) - g(x) sin(pi x^2 / 2)

via Chebyshev expansions of pi*x*f(x) and pi*x*g(x) in the variable
s = 1/x^2.  This script refits those expansions with mpmath and prints
the coefficient tables ready to paste into fresnel.py, plus a few
reference values used to sanity-check the fit.

Development aid only; the package itself never imports mpmath.
"""

import mpmath as mp

mp.mp.dps = 50

X_LO = mp.mpf("1.6")
X_HI = mp.mpf("6.0")
S_LO = 1 / (X_HI * X_HI)
S_HI = 1 / (X_LO * X_LO)
M = 64  # sampling nodes; final tables are trimmed
TRIM = mp.mpf("1e-20")


def aux_fg(x):
    """Auxiliary f, g recovered from high-precision C, S."""
    u = mp.pi * x * x / 2
    c = mp.fresnelc(x)
    s = mp.fresnels(x)
    sn, cs = mp.sin(u), mp.cos(u)
    half = mp.mpf(1) / 2
    f = (c - half) * sn + (half - s) * cs
    g = -(c - half) * cs + (half - s) * sn
    return f, g


def cheb_fit(values):
    """Chebyshev coefficients from values at the M Gauss-Chebyshev nodes."""
    coeffs = []
    for k in range(M):
        acc = mp.fsum(
            values[j] * mp.cos(mp.pi * k * (j + mp.mpf(1) / 2) / M) for j in range(M)
        )
        coeffs.append(acc * 2 / M)
    return coeffs


def cheb_eval(coeffs, t):
    b0 = b1 = mp.mpf(0)
    for c in reversed(coeffs[1:]):
        b0, b1 = 2 * t * b0 - b1 + c, b0
    return t * b0 - b1 + coeffs[0] / 2


def main():
    # sanity: mpmath uses the normalized convention C(x) = int_0^x cos(pi t^2/2) dt
    assert abs(mp.fresnelc("0.5") - mp.mpf("0.4923442258714464")) < 1e-15

    nodes = [mp.cos(mp.pi * (j + mp.mpf(1) / 2) / M) for j in range(M)]
    fvals, gvals = [], []
    for t in nodes:
        s = (S_LO + S_HI) / 2 + t * (S_HI - S_LO) / 2
        x = 1 / mp.sqrt(s)
        f, g = aux_fg(x)
        fvals.append(mp.pi * x * f)
        gvals.append(mp.pi * x * g)

    cf = cheb_fit(fvals)
    cg = cheb_fit(gvals)

    nf = next(i for i in range(M - 1, -1, -1) if abs(cf[i]) > TRIM) + 1
    ng = next(i for i in range(M - 1, -1, -1) if abs(cg[i]) > TRIM) + 1

    def dump(name, coeffs, n):
        print(f"{name} = np.array([")
        for c in coeffs[:n]:
            print(f"    {mp.nstr(c, 20, strip_zeros=False)},")
        print("])")

    print(f"# s-interval [{mp.nstr(S_LO, 17)}, {mp.nstr(S_HI, 17)}]"
          f" ~ x in [{X_LO}, {X_HI}]")
    dump("_CHEB_F", cf, nf)
    dump("_CHEB_G", cg, ng)

    # fit residuals over a dense grid
    worst_c = worst_s = mp.mpf(0)
    for i in range(801):
        x = X_LO + (X_HI - X_LO) * i / 800
        s = 1 / (x * x)
        t = (2 * s - S_LO - S_HI) / (S_HI - S_LO)
        f = cheb_eval(cf[:nf], t) / (mp.pi * x)
        g = cheb_eval(cg[:ng], t) / (mp.pi * x)
        u = mp.pi * x * x / 2
        c_rec = mp.mpf(1) / 2 + f * mp.sin(u) - g * mp.cos(u)
        s_rec = mp.mpf(1) / 2 - f * mp.cos(u) - g * mp.sin(u)
        worst_c = max(worst_c, abs(c_rec - mp.fresnelc(x)))
        worst_s = max(worst_s, abs(s_rec - mp.fresnels(x)))
    print(f"# max |C err| on [{X_LO},{X_HI}]: {mp.nstr(worst_c, 3)}")
    print(f"# max |S err| on [{X_LO},{X_HI}]: {mp.nstr(worst_s, 3)}")

    # reference values for the test suite
    for tag, v in [
        ("C(0.5)", mp.fresnelc("0.5")),
        ("S(0.5)", mp.fresnels("0.5")),
        ("C(1.3)", mp.fresnelc("1.3")),
        ("S(1.3)", mp.fresnels("1.3")),
        ("S(10)", mp.fresnels(10)),
        ("C(10)", mp.fresnelc(10)),
    ]:
        print(f"# {tag} = {mp.nstr(v, 22)}")

    def gnb(g2):
        g2 = mp.mpf(g2)
        return abs(mp.mpc(mp.fresnelc(g2), mp.fresnels(g2))) / g2

    print(f"# Gnb(0.5)    = {mp.nstr(gnb('0.5'), 18)}")
    print(f"# Gnb(0.8253) = {mp.nstr(gnb('0.8253'), 18)}")

    # gamma2 where Gnb = 0.95 and the implied near-field boundary constant
    g2_95 = mp.findroot(lambda g: gnb(g) - mp.mpf("0.95"), mp.mpf("0.8"))
    print(f"# Gnb = 0.95 at gamma2 = {mp.nstr(g2_95, 12)}"
          f" -> 1/(4 g2^2) = {mp.nstr(1 / (4 * g2_95 ** 2), 12)}")

    # far-field squint limit: first root of sinc below tau
    for db in ("-1", "-2"):
        tau = mp.mpf(10) ** (mp.mpf(db) / 10)
        p = mp.findroot(lambda q: mp.sin(mp.pi * q) / (mp.pi * q) - tau, mp.mpf("0.4"))
        print(f"# sinc crossing for {db} dB: p = {mp.nstr(p, 12)}")


if __name__ == "__main__":
    main()
