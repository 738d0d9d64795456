"""Build the four-term sequence for S3 and walk through its six-term sequence.

Run: python3 demos/s3_six_term.py
"""

from cohomkern.cohomology import cohomology_group, eta_map, six_term_verify
from cohomkern.groups import make_group
from cohomkern.sequences import build_sequence, verify_four_term

G = make_group(3, 2, 2, "dihedral")
seq = build_sequence(G, "dihedral-classic")
print(f"group of order {G.order}, module ranks {seq.ranks}")

rep = verify_four_term(seq)
print(f"four-term checks: {rep.counts()}")

for n in (0, 1):
    print(f"\ndegree {n}")
    for k in range(4):
        H = cohomology_group(seq.reduced(k), n)
        print(f"  H^{n}(M{k + 1} mod 3) = {H.describe()}")
    print(f"  eta matrix on class generators:\n{eta_map(seq, n).matrix}")
    six = six_term_verify(seq, n)
    for c in six.claims:
        if ".exact." in c.id or c.id.endswith("kernel_quotient"):
            print(f"  {c.status:4} {c.id}: {c.detail}")
