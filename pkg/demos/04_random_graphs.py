"""Random graphs: two trees for 2 colorings above the threshold, and an
adversarial coloring that needs three just below it."""
from monotree import adversarial_tc_lower_bound, gnp_two_color_partition, random_coloring, sample_gnp, verify_partition
from monotree.random_lab import p_formula, planted_two_coloring

n = 1000
p = p_formula("thm16i", n, 2)
g = sample_gnp(n, p, seed=1)
for name, cg in (("random", random_coloring(g, 2, seed=2)), ("planted", planted_two_coloring(g, seed=2))):
    cert = gnp_two_color_partition(cg)
    print(f"G({n}, {p:.3f}) {name}: {len(cert.blocks)} trees, verified={verify_partition(cg, cert).ok}, {cert.info}")

n = 2000
p = p_formula("lem64i", n, 2)
res = adversarial_tc_lower_bound(sample_gnp(n, p, seed=3), 2, s=2, seed=4)
if res is None:
    print("no witness set found")
else:
    print(f"G({n}, {p:.4f}): witness {sorted(res.witness)} gives a coloring needing at least {res.bound} trees "
          f"(vertex {res.spare} is outside every witness component)")
