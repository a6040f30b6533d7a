"""Regenerate tests/fixtures/erfc_oracle.csv with 50-digit mpmath values."""
import mpmath

mpmath.mp.dps = 50
xs = [-6, -4, -3, -2, -1.5, -1, -0.5, -0.1, 0, 1e-8, 0.1, 0.25, 0.5, 0.75, 1,
      1.5, 2, 2.5, 3, 4, 5, 6, 7, 8.5, 10]
with open("tests/fixtures/erfc_oracle.csv", "w") as out:
    out.write("x,erfc_x\n")
    for x in xs:
        v = mpmath.erfc(mpmath.mpf(x))
        out.write(f"{x!r},{mpmath.nstr(v, 25)}\n")
