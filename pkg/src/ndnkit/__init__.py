"""ndnkit: named-data networking toolkit.

Hierarchical names, a TLV wire codec, a six-scheme signature suite with
acceleration helpers (batching, aggregation, online/offline, server-aided
verification), homomorphic network-coding signatures, a content-store /
PIT / FIB forwarding node, and a deterministic tick simulator.
"""

__version__ = "0.1.0"

from .naming import Name, MalformedName, parse_name, to_text  # noqa: F401
