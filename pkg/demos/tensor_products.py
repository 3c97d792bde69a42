"""Which tensor products Ind_P(1) (x) Ind_Q(1) of GL_4 are tempered?

Prints the closed-form verdict d(P) + d(Q) <= n + 1 next to the brute-force
verdict on p cap q^o, and the extremal subset when the oracle finds one.
"""

from temperkit import compositions, d_value, epsilon_intersection, tempered_bruteforce, tensor_tempered

n = 4
print(f"{'P':<14}{'Q':<14}{'d(P)+d(Q)':>10}  closed  oracle  ratio  witness")
for P in compositions(n):
    for Q in compositions(n):
        report = tempered_bruteforce(epsilon_intersection(P, Q))
        closed = tensor_tempered(P, Q)
        assert closed == report.tempered
        witness = "-" if report.witness is None else "{" + ",".join(map(str, report.witness)) + "}"
        print(f"{str(P):<14}{str(Q):<14}{d_value(P) + d_value(Q):>10}  {str(closed):<6}  "
              f"{str(report.tempered):<6}  {str(report.extremal_ratio):<5}  {witness}")
