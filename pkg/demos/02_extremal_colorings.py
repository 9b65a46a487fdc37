"""Colorings that sit just below the minimum-degree thresholds."""
import math

from monotree import build_example35, build_example37, distinct_color_cover_exists, tc_exact, tp_exact, two_color_cover

for n in (8, 11, 14):
    cg, meta = build_example35(2, n)
    delta = cg.graph.min_degree()
    print(f"n={n}: min degree {delta}, threshold {math.ceil((2 * n - 5) / 3)}, "
          f"two-tree cover: {two_color_cover(cg)}, tc = {tc_exact(cg)[0]}")

cg, meta = build_example37(2, 8)
found, _ = distinct_color_cover_exists(cg)
value, cert = tp_exact(cg)
print(f"second example: min degree {cg.graph.min_degree()}, cover by trees of distinct colors: {found}")
print(f"  but {value} trees of color {cert.blocks[0].color} partition it")
