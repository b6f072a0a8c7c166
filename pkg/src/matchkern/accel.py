"""Selects the compiled hot loops when built, the pure-Python ones otherwise.

Set ``MATCHKERN_PURE=1`` to force the pure implementation.
"""
import os

IMPLEMENTATION = "pure"

if os.environ.get("MATCHKERN_PURE", "") not in ("", "0"):
    from matchkern import _speedups_py as impl
else:
    try:
        from matchkern import _speedups as impl

        IMPLEMENTATION = "compiled"
    except ImportError:
        from matchkern import _speedups_py as impl

distance_from_partners = impl.distance_from_partners
pairwise_distance_codes = impl.pairwise_distance_codes
cycle_type = impl.cycle_type
coset_cycle_type_counts = impl.coset_cycle_type_counts
signed_cover_count = impl.signed_cover_count

__all__ = [
    "IMPLEMENTATION",
    "distance_from_partners",
    "pairwise_distance_codes",
    "cycle_type",
    "coset_cycle_type_counts",
    "signed_cover_count",
]
