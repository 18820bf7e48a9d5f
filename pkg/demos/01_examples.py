"""
Two square-tiled cyclic covers
==============================

Build the 8-square and 12-square cyclic covers of the pillowcase and look at
their corner structure and cylinder decompositions.
"""

from rank1lab import eierlegende_wollmilchsau, genus, ornithorynque, singularities, stratum
from rank1lab.cylinders import configuration_check, direction_decomposition

for name, o in (("Eierlegende Wollmilchsau", eierlegende_wollmilchsau()),
                ("Ornithorynque", ornithorynque())):
    print(name)
    print("  squares:", o.n, " genus:", genus(o), " stratum:", stratum(o))
    print("  corner multiplicities:", singularities(o).multiplicities)
    print("  file form:", o.to_json())

    # a handful of rational directions, written as vectors (q, p)
    for q, p in [(1, 0), (0, 1), (1, 1), (2, 1), (-1, 3)]:
        d = direction_decomposition(o, q, p)
        rep = configuration_check(d)
        print(f"  direction ({q},{p}): cylinders (w,h) = {d.profile()}  config ok: {rep.passed}")
    print()
