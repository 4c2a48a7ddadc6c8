"""Exact knot-signature pipelines and hyperbolic cusp-slope invariants.

Submodules:
    exactlin  - exact inertia of symmetric integer matrices
    braid     - braid words, closures, and braid Seifert matrices
    diagram   - PD codes, Goeritz and Seifert signature pipelines
    torus     - torus-knot signature recursion and diagram oracle
    cusp      - cusp-torus arithmetic: natural slope, windows, bounds
    geodesic  - twisting parameters and corrected slope estimates
    twistfam  - twisted knot families and their predicted invariants
    census    - census CSV ingestion, derived statistics, emit
    cli       - command-line front end
"""

__version__ = "0.1.0"

from .cusp import CuspShape, KnotGeom, natural_slope, exceptional_window
from .diagram import DiagramCode, gl_signature, seifert_signature
from .geodesic import corrected_slope_estimate, twisting_parameter
from .torus import kappa, torus_signature
