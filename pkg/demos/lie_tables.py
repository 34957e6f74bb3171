"""Print Lie(G) for the additive, multiplicative and general linear groups."""

from ver4.dist_lie import lie_of_group, verify_lie_axioms, verify_restricted_axioms
from ver4.hopf import build


def show(group, m=0, n=1, N=3):
    L = lie_of_group(build(group, m, n, N))
    print(f"{L.name}: basis {', '.join(L.labels)}  ({L.obj.mK} k + {L.obj.nP} P)")
    for i, a in enumerate(L.labels):
        if L.d(1 << i):
            print(f"  d{a} = {L.format(L.d(1 << i))}")
    for i, a in enumerate(L.labels):
        for j, b in enumerate(L.labels):
            v = L.br(1 << i, 1 << j)
            if v:
                print(f"  [{a},{b}] = {L.format(v)}")
    for x in L.closed_basis():
        print(f"  ({L.format(x)})^[2] = {L.format(L.sq(x))}")
    print(f"  {verify_lie_axioms(L)}")
    print(f"  {verify_restricted_axioms(L)}")


if __name__ == "__main__":
    show("ga")
    show("gm")
    show("gl", 0, 2)
    # GL(2|1): Delta does not commute with d, so axiom (i) fails
    show("gl", 1, 1)
