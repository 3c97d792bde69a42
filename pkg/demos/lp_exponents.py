"""L^p exponents of GL_n / (GL_n1 x ... x GL_nr), exhaustive versus closed form.

The exhaustive value max_I rho_h(E_I) / rho_{g/h}(E_I) agrees with
(m-1)/(n-m) when there is one nontrivial block. With two or more it can be
larger, yet the verdicts for even p still agree with m <= n - (n-1)/p.
"""

from fractions import Fraction

from temperkit import almost_lp, almost_lp_closed_form, lp_exponent

cases = [((3,), 4), ((2,), 5), ((2, 2), 4), ((2, 2), 5), ((3, 2), 6), ((2, 2, 2), 6)]
for parts, n in cases:
    m = max(parts)
    exact = lp_exponent(parts, n)
    closed = Fraction(m - 1, n - m)
    verdicts = [(p, almost_lp(parts, n, p), almost_lp_closed_form(parts, n, p)) for p in (2, 4, 6)]
    agree = all(a == b for _, a, b in verdicts)
    print(f"parts={parts} n={n}: exhaustive {exact}, (m-1)/(n-m) = {closed}, "
          f"even-p verdicts agree: {agree}")
