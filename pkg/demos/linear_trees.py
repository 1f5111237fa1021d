"""Which trees have a linear resolution?  Compare three answers on all small trees."""

from facetres import (
    betti_table,
    classify_linear_tree,
    facet_ideal,
    find_linear_quotient_order,
    is_linear_resolution,
    linear_tree_total_betti,
)
from facetres.generate import enumerate_small_trees

trees = enumerate_small_trees(4, 7)
linear = []
for d in trees:
    I = facet_ideal(d)
    combinatorial = classify_linear_tree(d)
    homological = I.is_equigenerated() and is_linear_resolution(I, betti_table(I))
    quotients = find_linear_quotient_order(I) is not None
    assert combinatorial == homological == quotients, d
    if combinatorial:
        linear.append(d)

print(f"{len(trees)} trees up to isomorphism, {len(linear)} with linear resolution")
for d in [t for t in linear if len(t) > 1][:8]:
    print(f"  {d}  total Betti numbers {linear_tree_total_betti(d)}")
