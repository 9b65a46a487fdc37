"""Exact values on tiny graphs: cover and partition numbers of a few colorings."""
from monotree import Graph, build_affine_coloring, tc_exact, tc_graph_exact, tm_graph_exact, tp_exact

for n in range(2, 7):
    value, worst = tc_graph_exact(Graph.complete(n), 2)
    print(f"K_{n}, 2 colors: every coloring is covered by {value} tree")

# Three colors on K_5 always leave a monochromatic component on 3 vertices.
print("largest guaranteed component, K_5 with 3 colors:", tm_graph_exact(Graph.complete(5), 3)[0])

cg, meta = build_affine_coloring(2)
value, cert = tp_exact(cg)
print(f"affine coloring of K_4 ({cg.r} colors): tp = {value}, tc = {tc_exact(cg)[0]}")
for block in cert.blocks:
    print(f"  color {block.color}: vertices {sorted(block.vertices)} via edges {list(block.edges)}")
