"""Verification accelerators: batching, aggregation, online/offline signing,
and server-aided verification.

Batching and aggregation exploit the pairing's linearity; the small random
exponents (ell bits, default 80) bound a cheater's escape probability by
2^-ell.  Online/offline signing moves the expensive base-scheme signature
into a preparation phase by signing a chameleon hash, whose trapdoor later
bends to the real message with two modular multiplications.  Server-aided
verification ships both pairings of a BLS check to an untrusted helper and
validates the answers against a blinded local relation.
"""

from __future__ import annotations

import queue
import random
import threading
from dataclasses import dataclass, field
from typing import Callable, Protocol, Sequence

from .pairing import (
    CURVE_ORDER,
    G1Point,
    G2Point,
    GT_ONE,
    g1_generator,
    g2_generator,
    gt_deserialize,
    gt_exp,
    gt_generator,
    gt_inv,
    gt_mul,
    gt_serialize,
    hash_to_g1,
    pairing,
    pairing_product,
    prepare_g2,
)
from .pairing.curve import g1_mul_gen, g1_multi_exp
from .signatures import (
    SCHEME_BLS,
    SCHEME_NAMES,
    SCHEME_RSA,
    MixedScheme,
    ParameterError,
    Signature,
    TokenReused,
    sign as base_sign,
    verify as base_verify,
)
from .signatures.bls import BlsPublicKey
from .signatures.chameleon import (
    ChameleonKey,
    chameleon_collide,
    chameleon_hash,
    chameleon_keygen,
    message_scalar,
)
from .signatures.dlgroup import element_bytes
from .signatures.rsa import RsaPublicKey, domain_digest

DEFAULT_ELL = 80


class ServerUnavailable(RuntimeError):
    """The pairing server did not answer."""


def _sig_bytes(sig: Signature | bytes, scheme_id: int) -> bytes:
    if isinstance(sig, Signature):
        if sig.scheme_id != scheme_id:
            raise MixedScheme(
                f"{SCHEME_NAMES.get(sig.scheme_id, sig.scheme_id)} signature "
                f"in a {SCHEME_NAMES[scheme_id]} batch"
            )
        return sig.data
    return sig


# --- batch verification ------------------------------------------------------


@dataclass(frozen=True)
class BatchInstance:
    """One batch: a scheme, its (pk, msg, sig) triples, and the soundness knob."""

    scheme_id: int
    entries: Sequence[tuple[object, bytes, Signature | bytes]]
    ell: int = DEFAULT_ELL


def _batch_verify_bls(batch: BatchInstance) -> bool:
    rng = random.SystemRandom()
    sigmas = []
    per_key: dict[BlsPublicKey, object] = {}
    exps = []
    for pk, msg, sig in batch.entries:
        if getattr(pk, "scheme_id", None) != SCHEME_BLS:
            raise MixedScheme("non-BLS key in a BLS batch")
        raw = _sig_bytes(sig, SCHEME_BLS)
        try:
            sigma = G1Point.from_bytes(raw)
        except ValueError:
            return False
        t = rng.randrange(1, 1 << batch.ell)
        sigmas.append(sigma.point)
        exps.append(t)
        acc = per_key.get(pk)
        h = hash_to_g1(msg)
        contrib = G1Point(h).mul(t)
        per_key[pk] = contrib if acc is None else acc.add(contrib)
    combined = G1Point(g1_multi_exp(sigmas, exps))
    pairs = [(combined, prepare_g2(g2_generator()))]
    pairs += [(acc.neg(), prepare_g2(pk.point)) for pk, acc in per_key.items()]
    return pairing_product(pairs) == GT_ONE


def _batch_verify_rsa(batch: BatchInstance) -> bool:
    keys = {(pk.n, pk.e) for pk, _, _ in batch.entries}
    if len(keys) != 1:
        raise ParameterError("RSA batches must share a single signer key")
    pk: RsaPublicKey = batch.entries[0][0]
    rng = random.SystemRandom()
    lhs = rhs = 1
    for _, msg, sig in batch.entries:
        raw = _sig_bytes(sig, SCHEME_RSA)
        if len(raw) != pk.byte_length:
            return False
        s = int.from_bytes(raw, "big")
        if s >= pk.n:
            return False
        t = rng.randrange(1, 1 << batch.ell)
        lhs = lhs * pow(s, t, pk.n) % pk.n
        rhs = rhs * pow(domain_digest(msg, pk.n), t, pk.n) % pk.n
    return pow(lhs, pk.e, pk.n) == rhs


def batch_verify(batch: BatchInstance) -> bool:
    """Accept iff every entry is valid, up to 2^-ell soundness error.

    BLS batches collapse to 1 + #distinct-signers pairings; same-signer RSA
    uses exponent screening.  The remaining schemes have no known batching
    advantage and are checked entry by entry (no soundness loss).
    """
    if not batch.entries:
        raise ParameterError("empty batch")
    if batch.ell < 1:
        raise ParameterError("ell must be positive")
    for pk, _, _ in batch.entries:
        sid = getattr(pk, "scheme_id", None)
        if sid != batch.scheme_id:
            raise MixedScheme(
                f"{SCHEME_NAMES.get(sid, sid)} key in a "
                f"{SCHEME_NAMES.get(batch.scheme_id, batch.scheme_id)} batch"
            )
    if batch.scheme_id == SCHEME_BLS:
        return _batch_verify_bls(batch)
    if batch.scheme_id == SCHEME_RSA:
        return _batch_verify_rsa(batch)
    return all(
        base_verify(pk, msg, _sig_bytes(sig, batch.scheme_id))
        for pk, msg, sig in batch.entries
    )


# --- BLS aggregation ---------------------------------------------------------


@dataclass(frozen=True)
class AggregateSignature:
    """One group element standing in for any number of BLS signatures."""

    element: G1Point
    covers: tuple[tuple[BlsPublicKey, bytes], ...]

    scheme_id = SCHEME_BLS

    def to_bytes(self) -> bytes:
        return self.element.to_bytes()


def aggregate(
    sigs: Sequence[Signature | bytes],
    covers: Sequence[tuple[BlsPublicKey, bytes]],
) -> AggregateSignature:
    if len(sigs) != len(covers):
        raise ParameterError("one (pk, msg) pair per signature required")
    if not sigs:
        raise ParameterError("nothing to aggregate")
    total = None
    for sig in sigs:
        pt = G1Point.from_bytes(_sig_bytes(sig, SCHEME_BLS))
        total = pt if total is None else total.add(pt)
    return AggregateSignature(element=total, covers=tuple(covers))


def verify_aggregate(agg: AggregateSignature) -> bool:
    per_key: dict[BlsPublicKey, G1Point] = {}
    for pk, msg in agg.covers:
        h = G1Point(hash_to_g1(msg))
        acc = per_key.get(pk)
        per_key[pk] = h if acc is None else acc.add(h)
    pairs = [(agg.element, prepare_g2(g2_generator()))]
    pairs += [(acc.neg(), prepare_g2(pk.point)) for pk, acc in per_key.items()]
    return pairing_product(pairs) == GT_ONE


# --- online/offline signing --------------------------------------------------


@dataclass
class OfflineToken:
    """A precomputed signature on a chameleon digest, waiting for its message.

    Single-use: the trapdoor collision would leak the trapdoor if the same
    token signed two messages, so consumption is guarded by a lock.
    """

    chameleon_pub: int
    pre_scalar: int
    pre_randomizer: int
    base_signature: Signature
    _trapdoor: ChameleonKey
    _consumed: bool = False
    _lock: threading.Lock = field(default_factory=threading.Lock, repr=False)


@dataclass(frozen=True)
class OnlineSignature:
    """The finished product: the base signature plus the collision randomizer."""

    randomizer: int
    base: Signature
    chameleon_pub: int


def offline_prepare(
    base_key,
    trapdoor: ChameleonKey | None = None,
    rng: random.Random | None = None,
) -> OfflineToken:
    """Run the expensive half of signing before the message exists."""
    rng = rng or random.SystemRandom()
    trapdoor = trapdoor or chameleon_keygen(rng)
    pre_msg = rng.getrandbits(256).to_bytes(32, "big")
    m_prime = message_scalar(pre_msg)
    r_prime = rng.randrange(1, 1 << 159)
    digest = chameleon_hash(trapdoor.h, m_prime, r_prime)
    base_sig = base_sign(base_key, element_bytes(digest), rng)
    return OfflineToken(
        chameleon_pub=trapdoor.h,
        pre_scalar=m_prime,
        pre_randomizer=r_prime,
        base_signature=base_sig,
        _trapdoor=trapdoor,
    )


def online_sign(token: OfflineToken, msg: bytes) -> OnlineSignature:
    """Exponentiation-free completion: two multiplications and a hash."""
    with token._lock:
        if token._consumed:
            raise TokenReused("offline token already spent")
        token._consumed = True
    r = chameleon_collide(
        token._trapdoor, token.pre_scalar, token.pre_randomizer, message_scalar(msg)
    )
    return OnlineSignature(
        randomizer=r, base=token.base_signature, chameleon_pub=token.chameleon_pub
    )


def online_verify(base_pk, msg: bytes, sig: OnlineSignature) -> bool:
    """Check the transformed relation: base signature over CH(H(msg), r)."""
    digest = chameleon_hash(sig.chameleon_pub, message_scalar(msg), sig.randomizer)
    return base_verify(base_pk, element_bytes(digest), sig.base)


# --- server-aided verification ----------------------------------------------


class PairingServer(Protocol):
    """The delegation interface: one pairing per query, on serialized points."""

    def query(self, g1_blob: bytes, g2_blob: bytes) -> bytes: ...


class LocalPairingServer:
    """In-process honest server."""

    def query(self, g1_blob: bytes, g2_blob: bytes) -> bytes:
        p = G1Point.from_bytes(g1_blob)
        q = G2Point.from_bytes(g2_blob, check_subgroup=False)
        return gt_serialize(pairing(p, q))


class QueuePairingServer:
    """Message-passing server: requests and replies travel over queues, with
    a worker thread standing in for the remote helper."""

    def __init__(self, worker: Callable[[bytes, bytes], bytes] | None = None,
                 timeout: float = 5.0):
        self._requests: queue.Queue = queue.Queue()
        self._timeout = timeout
        self._worker = worker or LocalPairingServer().query
        self._thread = threading.Thread(target=self._serve, daemon=True)
        self._thread.start()

    def _serve(self):
        while True:
            item = self._requests.get()
            if item is None:
                return
            g1_blob, g2_blob, reply = item
            try:
                reply.put(self._worker(g1_blob, g2_blob))
            except Exception:
                reply.put(None)

    def query(self, g1_blob: bytes, g2_blob: bytes) -> bytes:
        reply: queue.Queue = queue.Queue()
        self._requests.put((g1_blob, g2_blob, reply))
        try:
            answer = reply.get(timeout=self._timeout)
        except queue.Empty:
            raise ServerUnavailable("pairing server timed out") from None
        if answer is None:
            raise ServerUnavailable("pairing server failed")
        return answer

    def close(self):
        self._requests.put(None)


def sav_verify(
    pk: BlsPublicKey,
    msg: bytes,
    sig: Signature | bytes,
    server: PairingServer,
    rng: random.Random | None = None,
    ell: int = DEFAULT_ELL,
) -> bool:
    """BLS verification with both pairings delegated to an untrusted server.

    The signature is blinded as sigma~ = delta*sigma + r*g1 before leaving
    the verifier, and the answers must satisfy A == B^delta * gt^r.  A server
    that cannot solve discrete logs learns nothing about (delta, r), so even
    one colluding with a forger hits the relation with probability 2^-ell.
    Locally this costs group arithmetic only - zero pairings.
    """
    rng = rng or random.SystemRandom()
    raw = _sig_bytes(sig, SCHEME_BLS)
    try:
        sigma = G1Point.from_bytes(raw)
    except ValueError:
        return False
    h = hash_to_g1(msg)
    delta = rng.randrange(1, 1 << ell)
    r = rng.randrange(1, 1 << ell)
    blinded = sigma.mul(delta).add(G1Point(g1_mul_gen(r)))
    a_blob = server.query(blinded.to_bytes(), g2_generator().to_bytes())
    b_blob = server.query(G1Point(h).to_bytes(), pk.point.to_bytes())
    try:
        a = gt_deserialize(a_blob)
        b = gt_deserialize(b_blob)
    except (ValueError, TypeError):
        return False
    want = gt_mul(gt_exp(b, delta), gt_exp(gt_generator(), r))
    return a == want
