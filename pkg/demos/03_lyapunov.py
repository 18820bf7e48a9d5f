"""
Lyapunov spectra of a few origamis
==================================

Estimate the normalised Lyapunov spectrum of the homology cocycle over the
SL(2,Z)-orbit.  Genus two surfaces have a non-zero second exponent; the two
cyclic covers have a completely degenerate spectrum.
"""

import time

from rank1lab import eierlegende_wollmilchsau, l_origami, ornithorynque
from rank1lab.lyapunov import random_walk_exponents
from rank1lab.origami import from_cycles

STEPS = 200_000

surfaces = {
    "L-origami, H(2)": l_origami(),
    "4 squares, H(1,1)": from_cycles("(1,2,3,4)", "(1,2)(3,4)", 4),
    "Eierlegende Wollmilchsau": eierlegende_wollmilchsau(),
    "Ornithorynque": ornithorynque(),
}

for name, o in surfaces.items():
    t0 = time.perf_counter()
    est = random_walk_exponents(o, STEPS, seed=0)
    pretty = ", ".join(f"{x:+.3f}" for x in est.exponents)
    print(f"{name:26s} [{pretty}]  stderr(l2)={est.stderr_top2:.1e}  {time.perf_counter() - t0:.1f}s")

# the first call includes compiling the walk kernels; later calls are cached
