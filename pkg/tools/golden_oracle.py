"""
Oráculo em precisão estendida (mpmath, 120 bits) para os valores de referência dos testes.

Rodar:
    python -m tools.golden_oracle
"""
import mpmath as mp

mp.mp.prec = 120


def _tau(tau_re, tau_im):
    return mp.mpc(tau_re, tau_im)


def _prod_one_minus_q2n(tau):
    q2 = mp.exp(2j * mp.pi * tau)
    eps = mp.mpf(2) ** (-mp.mp.prec)
    prod, term, n = mp.mpf(1), q2, 1
    while abs(term) > eps:
        prod *= 1 - term
        n += 1
        term = q2 ** n
    return prod


def oracle_theta(z, tau_re, tau_im):
    """theta(z; tau) = jtheta(3, pi z, exp(pi i tau))."""
    tau = _tau(tau_re, tau_im)
    return mp.jtheta(3, mp.pi * mp.mpc(z), mp.exp(1j * mp.pi * tau))


def oracle_eta(tau_re, tau_im):
    tau = _tau(tau_re, tau_im)
    return mp.exp(1j * mp.pi * tau / 12) * _prod_one_minus_q2n(tau)


def oracle_qsum(tau_re, tau_im):
    """S(tau) = sum log|1 - q^2n| = log|prod (1 - q^2n)|."""
    return mp.log(abs(_prod_one_minus_q2n(_tau(tau_re, tau_im))))


def oracle_f_ratio(tau_re, tau_im):
    t = mp.mpf(tau_im)
    return -2 * mp.log(t) - mp.log(4 * mp.pi) + mp.pi * t / 3 - 4 * oracle_qsum(tau_re, tau_im)


def oracle_capacity(tau_re, tau_im):
    t = mp.mpf(tau_im)
    return mp.sqrt(t) * 2 * mp.pi * mp.exp(-mp.pi * t / 6 + 2 * oracle_qsum(tau_re, tau_im))


def oracle_green(z, w, tau_re, tau_im):
    tau = _tau(tau_re, tau_im)
    t = mp.mpf(tau_im)
    u = mp.mpc(z) - mp.mpc(w) + (1 + tau) / 2
    theta_norm = t ** mp.mpf(0.25) * mp.exp(-mp.pi * mp.im(u) ** 2 / t) * abs(oracle_theta(u, tau_re, tau_im))
    eta_norm = t ** mp.mpf(0.25) * abs(oracle_eta(tau_re, tau_im))
    return mp.log(theta_norm / eta_norm)


GOLDEN_POINTS = {
    "theta(0; i)": lambda: oracle_theta(0, 0, 1),
    "|eta(i)|": lambda: abs(oracle_eta(0, 1)),
    "|eta(2i)|": lambda: abs(oracle_eta(0, 2)),
    "S(2i)": lambda: oracle_qsum(0, 2),
    "S(0.5+2i)": lambda: oracle_qsum(0.5, 2),
    "F(2i)": lambda: oracle_f_ratio(0, 2),
    "F(10i)": lambda: oracle_f_ratio(0, 10),
    "F(0.5+1.9192i)": lambda: oracle_f_ratio(0.5, 1.9192),
    "capacity(2i)": lambda: oracle_capacity(0, 2),
    "g(0.25, 0; 2i)": lambda: oracle_green(0.25, 0, 0, 2),
    "g((1+tau)/2, 0; 2i)": lambda: oracle_green(mp.mpc(0.5, 1), 0, 0, 2),
}


def main() -> None:
    for name, fn in GOLDEN_POINTS.items():
        print(f"{name:24s} {mp.nstr(fn(), 20)}")


if __name__ == "__main__":
    main()
