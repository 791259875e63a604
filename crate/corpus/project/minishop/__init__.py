"""A tiny shop domain: carts, catalogs, pricing and parcel math.

The package is deliberately free of I/O so test runs are deterministic.
"""

__version__ = "0.3.1"
