"""Temperedness of L^2(G/L) for Levi subgroups, regenerated from root data.

For each algebra, lists the non-tempered proper Levis with their type, the
exact extremal ratio rho_l / rho_g and a witness coweight.
"""

from temperkit import build, generate_table

for name in ["a3", "b4", "d5", "e6", "g2", "su(3,3)", "su*(8)", "so*(12)"]:
    R = build(name)
    table = generate_table(R)
    bad = [r for r in table.rows if not r.verdict.tempered and len(r.levi) < R.rank]
    print(f"{name}: {len(table.rows)} Levis, {len(bad)} non-tempered proper, "
          f"{len(table.mismatches)} table mismatches")
    for row in bad:
        print(f"    J={set(row.levi) or '{}'}  {'+'.join(row.levi_type)}  "
              f"ratio {row.verdict.extremal_ratio}  witness {row.verdict.witness}")
