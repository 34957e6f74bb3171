"""The GL antipode Adj.u.X.Adj.u against the exact inverse, for GL(2|2).

X.Adj.u squares to 1 + w11 w12 w21 w22 rather than 1, so the closed
formula is only an inverse modulo m^4.
"""

from ver4.hopf import build_gl, verify_hopf

for N in (4, 5, 6):
    closed = verify_hopf(build_gl(0, 2, N))
    series = verify_hopf(build_gl(0, 2, N, antipode="series"))
    print(f"N={N}  Adj.u.X.Adj.u: {closed.status:4}  series inverse: {series.status}")
    if not closed.passed:
        print(f"       first failure: {closed.first_failure()}")

