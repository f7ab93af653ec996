"""Projection onto nonnegative charge in the rank-1 lattice vertex algebra and its derived structure."""
from vertexrb.rota_baxter import Split, check_projection_star_formula, derived_structure, projection_rbo
from vertexrb.zoo.lattice import LatticeRank1Spec, lattice_rank1_build

V = lattice_rank1_build(LatticeRank1Spec(N=1, cutoff=4))
split = Split.by_index(lambda b: b.label.charge >= 0, "charge-nonnegative")
P, rep = projection_rbo(V, split)
print(rep.summary(depth=1))

_, ds = derived_structure(V, P, n_triples=6, n_pairs=8)
print(ds.summary(depth=1))
print(check_projection_star_formula(V, P, V.carrier.pairs()[::15]).summary(depth=0))
