#!/usr/bin/env python3
"""Arbitrary-precision reference evaluation of the four-pole Cole-Cole
dispersion relation, independent of the C++ implementation.

Prints frozen expected values used by tests/test_dielectric.cpp and the
acceptance suite. Run from the repository root:

    python3 tests/oracles/cole_cole_reference.py
"""
import mpmath as mp

mp.mp.dps = 50

C0 = mp.mpf(299792458)
MU0 = 4 * mp.pi * mp.mpf("1e-7")
EPS0 = 1 / (MU0 * C0 * C0)


def cole_cole(f, eps_inf, poles, sigma):
    w = 2 * mp.pi * f
    eps = mp.mpc(eps_inf)
    for (de, tau, a) in poles:
        eps += de / (1 + (1j * w * tau) ** (1 - a))
    if sigma != 0:
        eps += sigma / (1j * w * EPS0)
    return eps


def derived(f, eps):
    w = 2 * mp.pi * f
    k = w * mp.sqrt(MU0 * EPS0 * eps)          # principal sqrt
    alpha = -mp.im(k)                          # field attenuation, Np/m
    beta = mp.re(k)
    return {
        "sigma_eff": -w * EPS0 * mp.im(eps),
        "loss_tan": -mp.im(eps) / mp.re(eps),
        "pen_depth": 1 / alpha if alpha > 0 else mp.inf,
        "wavelength": 2 * mp.pi / beta,
        "alpha": alpha,
    }


MUSCLE = dict(
    eps_inf=mp.mpf(4),
    poles=[
        (mp.mpf(50), mp.mpf("7.23e-12"), mp.mpf("0.10")),
        (mp.mpf(7000), mp.mpf("353.68e-9"), mp.mpf("0.10")),
        (mp.mpf("1.2e6"), mp.mpf("318.31e-6"), mp.mpf("0.10")),
        (mp.mpf("2.5e7"), mp.mpf("2.274e-3"), mp.mpf("0.00")),
    ],
    sigma=mp.mpf("0.20"),
)

if __name__ == "__main__":
    f = mp.mpf("915e6")
    eps = cole_cole(f, **MUSCLE)
    d = derived(f, eps)
    print("muscle @ 915 MHz (Gabriel 1996 parametric row)")
    print("  eps_real     =", mp.nstr(mp.re(eps), 20))
    print("  eps_imag     =", mp.nstr(mp.im(eps), 20))
    print("  sigma_eff    =", mp.nstr(d["sigma_eff"], 20))
    print("  loss_tan     =", mp.nstr(d["loss_tan"], 20))
    print("  pen_depth    =", mp.nstr(d["pen_depth"], 20))
    print("  wavelength   =", mp.nstr(d["wavelength"], 20))
    print("  alpha        =", mp.nstr(d["alpha"], 20))

    # Debye limit spot value: one pole, a = 0, evaluated at w = 1/tau
    tau = mp.mpf("1e-9")
    f_dbg = 1 / (2 * mp.pi * tau)
    eps_dbg = cole_cole(f_dbg, eps_inf=mp.mpf(5), poles=[(mp.mpf(10), tau, 0)], sigma=0)
    print("single Debye pole at w*tau = 1:", mp.nstr(eps_dbg, 20))

    # Table 7.7 exemplar
    lam_free = C0 / mp.mpf("2.4e9")
    lam_tis = C0 / (mp.sqrt(35) * mp.mpf("2.4e9"))
    print("lambda free @2.4 GHz  =", mp.nstr(lam_free, 15))
    print("lambda eps35 @2.4 GHz =", mp.nstr(lam_tis, 15))
    print("ratio                 =", mp.nstr(lam_free / lam_tis, 15))

    # Friis loss, 915 MHz, 1 m, unity gains
    lam = C0 / mp.mpf("915e6")
    pl = 20 * mp.log10(4 * mp.pi / lam)
    print("friis 915 MHz @ 1 m   =", mp.nstr(pl, 15))

    # Neper -> dB
    print("20*log10(e)           =", mp.nstr(20 * mp.log10(mp.e), 15))
