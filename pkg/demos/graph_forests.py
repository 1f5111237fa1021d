"""Regularity and projective dimension of graph forests, and where the
bouquet conditions stop describing nonzero products."""

from facetres import (
    Bouquet,
    betti_table,
    bouquet_cycle,
    build_complex,
    class_product_nonzero,
    facet_ideal,
    pd_1dim,
    reg_1dim,
    reg_pd,
    valid_bouquet_family,
    valid_with_stems,
)
from facetres.forest import max_disconnected_edges_brute

tree = build_complex(["ab", "bc", "cd", "de", "cf", "fg"])
reg, pd = reg_pd(betti_table(facet_ideal(tree)))
print(f"{tree}: reg {reg_1dim(tree)} (Koszul {reg}), pd {pd_1dim(tree)} (Koszul {pd})")

# outside forests the matching bound is not attained
cycle = build_complex(["ab", "bc", "cd", "de", "ea"])
print(f"5-cycle: reg {reg_pd(betti_table(facet_ideal(cycle)))[0]}, "
      f"largest set of disconnected edges {len(max_disconnected_edges_brute(cycle))}")

# the path b-a-c-d with bouquets rooted at b and at d
path = build_complex(["ab", "ac", "cd"])
I = facet_ideal(path)
root = {name: path.mask(name).bit_length() - 1 for name in "bd"}
family = (Bouquet(root["b"], path.mask("a")), Bouquet(root["d"], path.mask("c")))
product = class_product_nonzero(I, [bouquet_cycle(I, b) for b in family])
print("\nbouquets (b; a) and (d; c) on the path b-a-c-d")
print("  conditions on roots and flowers hold:", valid_bouquet_family(path, family))
print("  product of the two classes is nonzero:", product)
print("  stems can be chosen pairwise disconnected:", valid_with_stems(path, family))
