"""Morgan-style circular fingerprints for unlabeled graphs, and Tanimoto.

Every vertex starts from an identifier hashed from its degree. At radius
``r`` the identifier is rehashed together with ``r`` and the sorted
identifiers of its neighbours at radius ``r - 1``. An environment is
recorded only if its bond set (edges with an endpoint within ``r - 1`` of
the centre) grew since radius ``r - 1`` and was not already produced by
another vertex at any radius; ties keep the smaller identifier. Each
recorded identifier sets bit ``id % n_bits``.

Hashing is BLAKE2b with an 8-byte digest over a fixed ASCII encoding, so
bit positions are stable across platforms and Python versions.
"""

import hashlib
from collections import Counter
from dataclasses import dataclass

import numpy as np

from .graph import all_pairs_distances, check_connected

HASH_ID = "blake2b-64"


def _hash(*parts):
    text = ",".join(str(p) for p in parts).encode("ascii")
    return int.from_bytes(hashlib.blake2b(text, digest_size=8).digest(), "little")


@dataclass(frozen=True)
class Fingerprint:
    bits: np.ndarray  # bool, read-only

    @property
    def n_bits(self):
        return self.bits.size

    @property
    def popcount(self):
        return int(self.bits.sum())

    def on_bits(self):
        return tuple(int(i) for i in np.flatnonzero(self.bits))

    def __eq__(self, other):
        return isinstance(other, Fingerprint) and np.array_equal(self.bits, other.bits)

    def __hash__(self):
        return hash(np.packbits(self.bits).tobytes())

    @classmethod
    def from_bitstring(cls, text):
        bits = np.array([c == "1" for c in text], dtype=bool)
        _check_width(bits.size)
        bits.setflags(write=False)
        return cls(bits)


def _check_width(n_bits):
    if n_bits < 1 or n_bits & (n_bits - 1):
        raise ValueError(f"fingerprint width must be a power of two, got {n_bits}")


def morgan_identifiers(g, radius=2):
    """Recorded environment identifiers of ``g`` (sorted, deduplicated)."""
    check_connected(g)
    if radius < 0:
        raise ValueError("radius must be >= 0")
    nbrs = g.neighbors
    dist = all_pairs_distances(g)
    edges = g.edges()
    ids = [_hash("atom", len(nbrs[v])) for v in range(g.n)]
    features = set(ids)
    seen_envs = set()
    prev_envs = [frozenset()] * g.n
    for r in range(1, radius + 1):
        new_ids = [_hash("r", r, ids[v], *sorted(ids[u] for u in nbrs[v])) for v in range(g.n)]
        envs = []
        for v in range(g.n):
            env = frozenset(e for e in edges if min(dist[v, e[0]], dist[v, e[1]]) <= r - 1)
            envs.append(env)
        # identifier order: equal environments keep the smallest identifier
        candidates = sorted(((envs[v], new_ids[v]) for v in range(g.n) if envs[v] != prev_envs[v]),
                            key=lambda t: t[1])
        for env, ident in candidates:
            if env in seen_envs:
                continue
            seen_envs.add(env)
            features.add(ident)
        prev_envs = envs
        ids = new_ids
    return sorted(features)


def morgan_fingerprint(g, radius=2, n_bits=2048):
    _check_width(n_bits)
    bits = np.zeros(n_bits, dtype=bool)
    for ident in morgan_identifiers(g, radius):
        bits[ident % n_bits] = True
    bits.setflags(write=False)
    return Fingerprint(bits)


def tanimoto(a, b):
    """``|a & b| / |a | b|`` for binary fingerprints of equal width."""
    if a.n_bits != b.n_bits:
        raise ValueError(f"fingerprint widths differ: {a.n_bits} vs {b.n_bits}")
    union = int(np.count_nonzero(a.bits | b.bits))
    if union == 0:
        raise ValueError("Tanimoto is undefined for two empty fingerprints")
    return int(np.count_nonzero(a.bits & b.bits)) / union


def degeneracy_profile(values, decimals=12):
    """``(distinct_count, max_multiplicity)`` after rounding to ``decimals``."""
    values = list(values)
    if not values:
        raise ValueError("degeneracy_profile needs at least one value")
    counts = Counter(round(float(v), decimals) for v in values)
    return len(counts), max(counts.values())
