"""Integration on divided powers: an ordinary Rota-Baxter operator of weight 0 and its dendriform splitting."""
from vertexrb.dendriform import check_dendriform_field, check_dendriform_vertex, dendriform_from_rbva, sum_collapse
from vertexrb.rota_baxter import RBOSpec, check_ordinary_rbo, check_translation_invariance
from vertexrb.zoo.commutative import divided_power_algebra, divided_power_integration, dp

V = divided_power_algebra(8)
P = RBOSpec(divided_power_integration(), 0)
print(check_ordinary_rbo(V, P, modes=(-10, 2)).summary(depth=1))

# the splitting a < b = Y(a, z)Pb, a > b = Y(Pa, z)b
Dn = dendriform_from_rbva(V, P)
t0 = dp(0)
print("t0 > t0 at z^0, z^1:", Dn.succ.mode(t0, -1, t0), Dn.succ.mode(t0, -2, t0))
print("t0 < t0 at z^0, z^1:", Dn.prec.mode(t0, -1, t0), Dn.prec.mode(t0, -2, t0))
print(check_dendriform_field(Dn, dp(1), dp(2), dp(0)).summary(depth=1))
print(sum_collapse(Dn)[1].summary(depth=1))

# P does not commute with d, so the D-compatibilities of the vertex variant fail
print(check_translation_invariance(V, P).summary(depth=0))
print(check_dendriform_vertex(Dn).summary(depth=1))
