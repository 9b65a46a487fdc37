"""Partition a random r-coloring of a large complete graph into r trees of
distinct colors, then check the certificate independently."""
import numpy as np

from monotree import ColoredGraph, build_affine_coloring, hk_partition, verify_partition
from monotree.partitioners import hk_threshold

for r in (2, 3):
    n = hk_threshold(r)
    rng = np.random.default_rng(r)
    us, vs = np.triu_indices(n, 1)
    cg = ColoredGraph.from_arrays(n, r, us, vs, rng.integers(1, r + 1, us.size))
    cert = hk_partition(cg)
    print(f"K_{n}, r={r}: {len(cert.blocks)} trees, colors {[b.color for b in cert.blocks]}, "
          f"sizes {[len(b.vertices) for b in cert.blocks]}, verified={verify_partition(cg, cert).ok}")
    print("  trace:", cert.info)

# A blown-up affine coloring has no spanning color, so the construction has
# to grow several trees of distinct colors.
cg, meta = build_affine_coloring(2, blowup=45)
cert = hk_partition(cg)
print(f"affine blow-up K_{cg.n}, r={cg.r}: {len(cert.blocks)} trees, colors {[b.color for b in cert.blocks]}, "
      f"verified={verify_partition(cg, cert).ok}")
print("  trace:", cert.info)
