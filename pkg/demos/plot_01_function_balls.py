"""
Function balls and local boundedness
====================================

How many different function values can a few bit flips reach?
"""

from fcc import check_contiguity, compute_lambda, function_ball, hwdf_lambda_bound, weight_distribution

# The weight distribution function floor(wt(u) / T) with k = 8, T = 3
f = weight_distribution(8, 3)
print(f.describe(), "image size", f.E)

# All values reachable from 01100000 with at most 2 flips
print(sorted(function_ball(f, "01100000", 2)))

# The largest such ball over all messages, next to the closed-form bound
t = 1
print("lambda", compute_lambda(f, 2 * t), "bound", hwdf_lambda_bound(3, t))

# Every ball is a run of consecutive values, so the cyclic colouring applies
print("contiguous:", bool(check_contiguity(f, 2 * t)))
