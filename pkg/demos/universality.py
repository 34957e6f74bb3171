"""Right-invariant derivations versus tangent vectors."""

from ver4.dist_lie import (commutator_of_derivations, derivation_from_tangent,
                           right_invariant_derivations, verify_universality)
from ver4.hopf import build
from ver4.tangent import enumerate_tangent_oracle, tangent_basis, tangent_labels

for group, m, n in [("ga", 0, 1), ("gm", 0, 1), ("gl", 0, 1), ("gl", 0, 2), ("gl", 1, 1)]:
    for N in (3, 4):
        H = build(group, m, n, N)
        rep = verify_universality(H)
        homs, _ = enumerate_tangent_oracle(H)
        print(f"{H.name:8} N={N}  derivations {rep.info['derivations']:2}  "
              f"tangent {rep.info['tangent']:2}  homs to E {homs:4}  {rep.status}")

H = build("gl", 0, 1, 4)
O = H.algebra
labels = tangent_labels(H)
Fs = [derivation_from_tangent(H, f) for f in tangent_basis(H)]
for a, F in zip(labels, Fs):
    for b, G in zip(labels, Fs):
        br = commutator_of_derivations(F, G)
        print(f"eta[F_{a},F_{b}] = {O.format(br.eta())}")
print("solved basis size:", len(right_invariant_derivations(H)))
