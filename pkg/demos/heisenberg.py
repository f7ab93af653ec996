"""Weak Rota-Baxter operators on the rank-1 Heisenberg VOA."""
from vertexrb.kernel import check_voa_axioms
from vertexrb.rota_baxter import (RBOSpec, check_homogeneity, check_ordinary_rbo, check_weak_local_rbo,
                                  inverse_of_derivation)
from vertexrb.zoo.heisenberg import HeisenbergSpec, heisenberg_build, heisenberg_integration_operator

V = heisenberg_build(HeisenbergSpec(rank=1, level=1, cutoff=6))
print(check_voa_axioms(V).summary(depth=0))

P = RBOSpec(heisenberg_integration_operator(V), 0, kind="weak-global")
print(check_weak_local_rbo(V, P).summary(depth=0))
print("degree of P:", check_homogeneity(V, P).values["degree"])
closure = check_ordinary_rbo(V, P).find("image-closure")
print(closure.summary(depth=0))
print("  witness:", closure.counterexample)

Q = inverse_of_derivation(V, V.D)
print("L(-1)^-1 on U = L(-1)V:", check_weak_local_rbo(V, Q).summary(depth=0))
