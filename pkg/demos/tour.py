"""A short tour: build a forest, resolve it two ways, read off the invariants."""

from facetres import (
    betti_table,
    build_complex,
    facet_ideal,
    is_forest,
    leaves,
    recursive_betti,
    reg_pd,
)

delta = build_complex(["abc", "cde", "efg", "cdh"])
print("complex:", delta)
print("forest?", is_forest(delta))
print("leaves:", [delta.label(f) for f in leaves(delta)])

I = facet_ideal(delta)
oracle = betti_table(I)
print("\nBetti table from Koszul homology:")
print(oracle.render())

rec = recursive_betti(delta)
print("\nsame table from the leaf recursion:", rec.entries == oracle.entries)
reg, pd = reg_pd(oracle)
print(f"regularity {reg}, projective dimension {pd}")
