"""
Bounding a rank statistic when values are missing
==================================================

Two tiny samples, one value missing from each.  We compute the tight
range of the Ansari-Bradley statistic, then confirm it by listing every
possible placement of the missing values.
"""

import numpy as np

from rankbounds import PartialSample, ab_bounds, ab_p_interval, ab_statistic, wmw_bounds
from rankbounds.oracle import enumerate_configs, materialize

# X has 3 slots but only 2 recorded values; Y has 4 slots and 3 values
X = PartialSample([0.4, 2.1], total_size=3)
Y = PartialSample([-1.3, 0.9, 3.3], total_size=4)

b = ab_bounds(X, Y)
print("Ansari-Bradley range over all completions:", b.t_min, "to", b.t_max)
print("Wilcoxon-Mann-Whitney range:", wmw_bounds(X, Y))

# Both statistics only depend on ranks, so a completion is just a choice of
# rank positions for the missing values.  There are finitely many.
values = []
for cfg in enumerate_configs(X, Y):
    x, y = materialize(cfg, X, Y)
    values.append(ab_statistic(x, y))
print(f"{len(values)} placements, statistic ranges over", min(values), "to", max(values))
assert (min(values), max(values)) == (b.t_min, b.t_max)

# The p-value interval follows from the statistic range.  A rejection is
# only reported when even the largest p-value is below alpha.
iv = ab_p_interval(b, X.total_size, Y.total_size)
print(f"p-value interval: [{iv.p_min:.4f}, {iv.p_max:.4f}]")

# Revealing a missing value can only shrink the range
X_more = PartialSample(np.append(X.observed, 5.0), 3)
print("after observing x = 5.0:", ab_bounds(X_more, Y))
