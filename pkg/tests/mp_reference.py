"""Arbitrary-precision evaluation of the influence function, term by term.

Independent of the package: used to freeze reference values and to take
finite differences free of double-precision round-off.
"""

import mpmath as mp

mp.mp.dps = 50


def kernel_frequencies(m, M, omega, Omega, kappa):
    m, M, omega, Omega, kappa = (mp.mpf(v) for v in (m, M, omega, Omega, kappa))
    e2 = Omega**2 + kappa / M
    s = e2 + kappa / m
    root = mp.sqrt(s**2 - 4 * omega**2 * e2)
    return e2, mp.sqrt((s + root) / 2), mp.sqrt((s - root) / 2)


def delta(tau, m, M, omega, Omega, kappa, beta):
    e2, zp, zm = kernel_frequencies(m, M, omega, Omega, kappa)
    tau, beta = mp.mpf(tau), mp.mpf(beta)

    def term(z, other):
        weight = (z**2 - e2) / (z**2 - other**2)
        return weight * mp.cosh(z * (tau - beta / 2)) / (z * mp.sinh(z * beta / 2))

    return term(zp, zm) + term(zm, zp)


def delta_second_difference(h, m, M, omega, Omega, kappa, beta):
    h = mp.mpf(h)
    f = lambda t: delta(t, m, M, omega, Omega, kappa, beta)
    return (f(h) - 2 * f(0) + f(-h)) / h**2


def delta_ddot0(m, M, omega, Omega, kappa, beta):
    return mp.diff(lambda t: delta(t, m, M, omega, Omega, kappa, beta), 0, 2)
