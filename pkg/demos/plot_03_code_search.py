"""
Shortest codes by exact search
==============================

N(M, d) for a few small cases, with the Plotkin bound doing most of the work.
"""

from fcc import plotkin_bound, repetition_code_4, search_N_uniform

for M, d in [(2, 4), (4, 2), (4, 3), (4, 4), (3, 4), (8, 4)]:
    cert = search_N_uniform(M, d)
    print(f"N({M},{d}) = {cert.found_length:2d}  {cert.infeasibility:9s} {' '.join(cert.witness.strings())}")

# Plotkin says at most 2 words of length 5 at distance 4
print("A(5,4) <=", plotkin_bound(5, 4))

# Four words at pairwise distance 2t, length 3t
print(repetition_code_4(2).strings())
