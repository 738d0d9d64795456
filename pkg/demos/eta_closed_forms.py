"""Compare the generic connecting map with its closed forms on sampled cocycles.

The semidirect group (5,4,2) is evaluated with both weight choices; only the
derived weights agree with the generic map everywhere.

Run: python3 demos/eta_closed_forms.py
"""

from cohomkern.cohomology import verify_eta_closed
from cohomkern.groups import make_group
from cohomkern.sequences import build_sequence

cases = [((3, 1, 1), "cyclic"), ((3, 2, 2), "dihedral"), ((5, 2, 4), "dihedral"), ((5, 4, 2), "semidirect")]
for (d, s, t), family in cases:
    seq = build_sequence(make_group(d, s, t, family))
    for n in (0, 1):
        variants = ("derived", "stated") if family == "semidirect" else ("derived",)
        for variant in variants:
            claim = verify_eta_closed(seq, n, samples=100, seed=0, variant=variant).claims[0]
            print(f"({d},{s},{t}) {family:10} n={n} {variant:8} {claim.status}: {claim.detail}")
