"""
Distance requirement matrices
=============================

The two-bit function that is 0 only on 00, its requirement matrix and the
shortest parity code that meets it.
"""

from fcc import build_drm, build_fdm, check_representative_condition, search_N_irregular, table_function

f = table_function(2, [0, 1], [0, 1, 1, 1])
msgs = ["00", "01", "10", "11"]

D = build_drm(f, 1, msgs)
print(D.to_text())

# Exact search: length 1 is refuted, length 2 has a witness
cert = search_N_irregular(D)
print("N(D) =", cert.found_length, "witness", cert.witness.strings(), "refuted by", cert.infeasibility)

# The function distance matrix lives on the image instead of the messages
F = build_fdm(f, 1)
print(F.tolist(), "representatives ok:", check_representative_condition(f, 1, ["00", "01"]))
