"""
FCC redundancy against an ECC on the function value
===================================================

Protecting only the function value needs fewer parity bits than protecting
the value itself with a code of distance 2t+1.
"""

from fcc import lexicographic_rearrangement, weight_distribution, weight_function
from fcc.analysis import check_optimality_triple
from fcc.cli import table_row

rows = [table_row(weight_function(3), 1), table_row(weight_function(4), 1),
        table_row(weight_distribution(6, 2), 1), table_row(lexicographic_rearrangement(3), 2)]
keys = ["function", "k", "t", "lambda", "fcc_r", "N_lambda_2t", "N_E_2t1", "ordering"]
print("  ".join(keys))
for r in rows:
    print("  ".join(str(r[k]) for k in keys))

# For the weight function on 3 bits, 3t is also a lower bound
rep = check_optimality_triple(weight_function(3), 2)
print(rep.verdict, rep.lower_bound, [str(u) for u in rep.witness_triple])
