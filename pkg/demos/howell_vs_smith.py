"""Howell form, kernel and Smith invariants of a matrix over Z/12.

Run: python3 demos/howell_vs_smith.py
"""

import numpy as np

from cohomkern.znz_linalg import howell, kernel, smith, solve

m = 12
M = np.array([[2, 4, 6], [1, 3, 5], [0, 2, 4]])
H = howell(M, m)
print(f"Howell form mod {m}:\n{H.matrix}\nspan size {H.size}")
print(f"kernel rows (x with xM = 0):\n{kernel(M, m)}")
factors, _, _ = smith(M, m)
print(f"Smith diagonal: {factors}")
b = np.array([1, 5, 9])
print(f"solve xM = {b}: x = {solve(M, b, m)}")
