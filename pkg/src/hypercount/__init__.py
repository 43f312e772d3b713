"""Exact point counts and Poincare polynomials of holomorphic symplectic quotients."""

from .adhm import adhm_count, adhm_poincare_series, feit_fine_product, phi_nil
from .partitions import Partition, centralizer_order, enumerate_partitions, pairing_n
from .quiver import Quiver, QuiverQuery, quiver_count, quiver_poincare
from .toric import ToricInstance, gale_dual, h_polynomial, toric_count_polynomial, toric_poincare

__version__ = "0.1.0"
