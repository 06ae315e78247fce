"""Deterministic discrete-event simulation of NDN topologies.

A topology is consumers, routers, and producers joined by point-to-point
links with integer-tick latencies; every node runs the forwarding pipeline
from the node module, and packets cross links as encoded wire bytes. A
scenario schedules consumer requests and cache-poisoning injections against
that topology. run() replays the scenario event by event and returns a
trace: ordered per-node records, final counters, and the outcome of every
request.

Everything is derived from the config and its 64-bit seed: producer keys,
packet payloads, nonces, and forged attack keys all come from seeded
generators, so identical inputs replay to byte-identical traces. Consumers
retransmit an unanswered Interest with a fresh nonce after its lifetime, up
to three attempts in all; that retry policy is a simulation choice, not a
protocol requirement.

One tick equals one millisecond of pipeline time.
"""

from __future__ import annotations

import hashlib
import heapq
import json
import random
from dataclasses import dataclass, replace
from typing import Optional

from . import signatures as sigs
from .naming import Name, longest_prefix_match, parse_name
from .node import Node
from .wire import Data, Interest, decode, encode, signed_portion

APP_FACE = 0
MAX_ATTEMPTS = 3
DEFAULT_TICK_LIMIT = 100_000
DEFAULT_LIFETIME_MS = 4_000
PAYLOAD_BYTES = 64

_ROLES = ("consumer", "router", "producer")
_PRODUCER_SCHEMES = {
    "rsa": sigs.SCHEME_RSA,
    "dsa": sigs.SCHEME_DSA,
    "ecdsa": sigs.SCHEME_ECDSA,
    "bls": sigs.SCHEME_BLS,
}


class SimError(Exception):
    """Base class for simulation failures."""


class ConfigError(SimError):
    """The topology or scenario description is unusable."""


class UnknownNode(ConfigError):
    """An operation referenced a node id the topology does not declare."""


class TickLimitExceeded(SimError):
    """The event loop ran past the configured tick limit."""


@dataclass(frozen=True)
class NodeSpec:
    node_id: str
    role: str
    cs_capacity: int
    verify: bool
    freshness_ms: int


@dataclass(frozen=True)
class Binding:
    prefix: Name
    node: str
    scheme_id: int
    key_name: Name


@dataclass(frozen=True)
class Topology:
    specs: dict[str, NodeSpec]
    # node id -> face id -> (peer node id, peer face id, latency)
    faces: dict[str, dict[int, tuple[str, int, int]]]
    # node id -> prefix -> outgoing face (APP_FACE on the bound producer)
    routes: dict[str, dict[Name, int]]
    bindings: tuple[Binding, ...]


@dataclass(frozen=True)
class RequestSpec:
    tick: int
    consumer: str
    name: Name
    lifetime_ms: int = DEFAULT_LIFETIME_MS


@dataclass(frozen=True)
class AttackSpec:
    tick: int
    node: str
    name: Name


@dataclass(frozen=True)
class Scenario:
    schedule: tuple[RequestSpec, ...]
    attacks: tuple[AttackSpec, ...]
    seed: int
    tick_limit: int
    known_nodes: frozenset[str]


@dataclass
class RequestResult:
    consumer: str
    name: Name
    first_tick: int
    attempts: int = 0
    delivered: Optional[bytes] = None
    delivered_tick: Optional[int] = None
    hops: int = 0


@dataclass
class Trace:
    records: list[dict]
    counters: dict[str, dict[str, int]]
    requests: list[RequestResult]

    def to_jsonl(self) -> str:
        return "".join(json.dumps(r, sort_keys=True) + "\n" for r in self.records)


# --- config parsing ----------------------------------------------------------


def _as_dict(config) -> dict:
    if isinstance(config, dict):
        return config
    if isinstance(config, bytes):
        config = config.decode("utf-8", errors="replace")
    try:
        parsed = json.loads(config)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config is not valid JSON: {exc}") from exc
    if not isinstance(parsed, dict):
        raise ConfigError("config must be a JSON object")
    return parsed


def _parse_config_name(text, what: str) -> Name:
    if not isinstance(text, str):
        raise ConfigError(f"{what} must be a name string")
    try:
        return parse_name(text)
    except ValueError as exc:
        raise ConfigError(f"bad {what} {text!r}: {exc}") from exc


def _int_field(record: dict, key: str, default: int, what: str, minimum: int = 0) -> int:
    value = record.get(key, default)
    if not isinstance(value, int) or isinstance(value, bool) or value < minimum:
        raise ConfigError(f"{what}.{key} must be an integer >= {minimum}")
    return value


def build_topology(config) -> Topology:
    cfg = _as_dict(config)
    specs: dict[str, NodeSpec] = {}
    for entry in cfg.get("nodes", []):
        node_id = entry.get("id")
        if not isinstance(node_id, str) or not node_id:
            raise ConfigError("every node needs a non-empty string id")
        if node_id in specs:
            raise ConfigError(f"duplicate node id {node_id!r}")
        role = entry.get("role", "router")
        if role not in _ROLES:
            raise ConfigError(f"node {node_id!r} has unknown role {role!r}")
        specs[node_id] = NodeSpec(
            node_id=node_id,
            role=role,
            cs_capacity=_int_field(
                entry, "cs_capacity", 0 if role == "consumer" else 64, f"node {node_id!r}"
            ),
            verify=bool(entry.get("verify", role == "consumer")),
            freshness_ms=_int_field(
                entry, "freshness_ms", 10_000, f"node {node_id!r}", minimum=1
            ),
        )
    if not specs:
        raise ConfigError("config declares no nodes")

    faces: dict[str, dict[int, tuple[str, int, int]]] = {nid: {} for nid in specs}
    for link in cfg.get("links", []):
        a, b = link.get("a"), link.get("b")
        for end in (a, b):
            if end not in specs:
                raise ConfigError(f"link references undeclared node {end!r}")
        if a == b:
            raise ConfigError(f"link endpoints must differ (node {a!r})")
        a_face = _int_field(link, "a_face", -1, "link", minimum=1)
        b_face = _int_field(link, "b_face", -1, "link", minimum=1)
        latency = _int_field(link, "latency", 1, "link", minimum=1)
        for nid, face in ((a, a_face), (b, b_face)):
            if face in faces[nid]:
                raise ConfigError(f"duplicate face {face} on node {nid!r}")
        faces[a][a_face] = (b, b_face, latency)
        faces[b][b_face] = (a, a_face, latency)

    bindings: list[Binding] = []
    for entry in cfg.get("producers", []):
        node = entry.get("node")
        if node not in specs:
            raise ConfigError(f"producer binding references undeclared node {node!r}")
        if specs[node].role != "producer":
            raise ConfigError(f"node {node!r} is not a producer")
        prefix = _parse_config_name(entry.get("prefix"), "producer prefix")
        if any(b.prefix == prefix for b in bindings):
            raise ConfigError(f"duplicate producer prefix {entry.get('prefix')!r}")
        scheme = entry.get("scheme", "bls")
        if scheme not in _PRODUCER_SCHEMES:
            raise ConfigError(f"producers cannot sign with scheme {scheme!r}")
        key_name = (
            _parse_config_name(entry["key_name"], "producer key name")
            if "key_name" in entry
            else prefix.child(b"keys")
        )
        bindings.append(
            Binding(
                prefix=prefix,
                node=node,
                scheme_id=_PRODUCER_SCHEMES[scheme],
                key_name=key_name,
            )
        )

    routes = _compute_routes(specs, faces, bindings)
    return Topology(
        specs=specs, faces=faces, routes=routes, bindings=tuple(bindings)
    )


def _compute_routes(specs, faces, bindings) -> dict[str, dict[Name, int]]:
    routes: dict[str, dict[Name, int]] = {nid: {} for nid in specs}
    for binding in bindings:
        dist = _shortest_distances(faces, binding.node)
        for nid in specs:
            if nid == binding.node:
                routes[nid][binding.prefix] = APP_FACE
                continue
            if nid not in dist:
                continue
            # choose the face whose neighbor sits on a shortest path,
            # tie-broken by (neighbor distance, neighbor id, face id)
            best = min(
                (
                    (dist[peer], peer, face)
                    for face, (peer, _, latency) in faces[nid].items()
                    if peer in dist and dist[peer] + latency == dist[nid]
                ),
                default=None,
            )
            if best is not None:
                routes[nid][binding.prefix] = best[2]
        for nid, spec in specs.items():
            if spec.role == "consumer" and binding.prefix not in routes[nid]:
                raise ConfigError(
                    f"prefix {binding.prefix} is unroutable from consumer {nid!r}"
                )
    return routes


def _shortest_distances(faces, origin: str) -> dict[str, int]:
    dist = {origin: 0}
    heap = [(0, origin)]
    while heap:
        d, nid = heapq.heappop(heap)
        if d > dist.get(nid, d):
            continue
        for peer, _, latency in faces[nid].values():
            nd = d + latency
            if nd < dist.get(peer, nd + 1):
                dist[peer] = nd
                heapq.heappush(heap, (nd, peer))
    return dist


def build_scenario(config) -> Scenario:
    cfg = _as_dict(config)
    known = frozenset(
        entry.get("id") for entry in cfg.get("nodes", []) if isinstance(entry.get("id"), str)
    )
    consumers = frozenset(
        entry["id"]
        for entry in cfg.get("nodes", [])
        if entry.get("role") == "consumer" and isinstance(entry.get("id"), str)
    )
    schedule = []
    for entry in cfg.get("schedule", []):
        consumer = entry.get("consumer")
        if consumer not in consumers:
            raise ConfigError(f"schedule references non-consumer {consumer!r}")
        schedule.append(
            RequestSpec(
                tick=_int_field(entry, "tick", 0, "schedule entry"),
                consumer=consumer,
                name=_parse_config_name(entry.get("name"), "scheduled name"),
                lifetime_ms=_int_field(
                    entry, "lifetime_ms", DEFAULT_LIFETIME_MS, "schedule entry", minimum=1
                ),
            )
        )
    attacks = []
    for entry in cfg.get("attacks", []):
        node = entry.get("node")
        if node not in known:
            raise UnknownNode(f"attack references undeclared node {node!r}")
        attacks.append(
            AttackSpec(
                tick=_int_field(entry, "tick", 0, "attack entry"),
                node=node,
                name=_parse_config_name(entry.get("name"), "attack name"),
            )
        )
    seed = _int_field(cfg, "seed", 0, "config")
    if seed >= 2**64:
        raise ConfigError("seed must fit in 64 bits")
    return Scenario(
        schedule=tuple(schedule),
        attacks=tuple(attacks),
        seed=seed,
        tick_limit=_int_field(cfg, "tick_limit", DEFAULT_TICK_LIMIT, "config", minimum=0),
        known_nodes=known,
    )


def load_config(config) -> tuple[Topology, Scenario]:
    cfg = _as_dict(config)
    return build_topology(cfg), build_scenario(cfg)


def inject_poison(scenario: Scenario, tick: int, router: str, name: Name) -> Scenario:
    """Return a scenario that additionally plants a forged Data at the router."""
    if router not in scenario.known_nodes:
        raise UnknownNode(f"no node {router!r} in this topology")
    attack = AttackSpec(tick=tick, node=router, name=name)
    return replace(scenario, attacks=scenario.attacks + (attack,))


# --- deterministic content ---------------------------------------------------


def _stretch(tag: bytes, seed: int, name: Name) -> bytes:
    material = tag + seed.to_bytes(8, "big") + str(name).encode()
    out = b""
    counter = 0
    while len(out) < PAYLOAD_BYTES:
        out += hashlib.sha256(material + counter.to_bytes(4, "big")).digest()
        counter += 1
    return out[:PAYLOAD_BYTES]


def producer_payload(seed: int, name: Name) -> bytes:
    """The content bytes every producer publishes for a name under this seed."""
    return _stretch(b"ndnkit/sim-content/v1", seed, name)


def forged_payload(seed: int, name: Name) -> bytes:
    return _stretch(b"ndnkit/sim-poison/v1", seed, name)


def _rng_for(seed: int, *labels: str) -> random.Random:
    return random.Random("/".join((str(seed),) + labels))


# --- the event loop ----------------------------------------------------------


class _Runner:
    def __init__(self, topology: Topology, scenario: Scenario):
        self.topology = topology
        self.scenario = scenario
        self.records: list[dict] = []
        self.requests: list[RequestResult] = []
        self.heap: list[tuple] = []
        self.seq = 0
        self.nonce_rng = _rng_for(scenario.seed, "nonce")
        self.nodes = {
            nid: Node(
                nid,
                cs_capacity=spec.cs_capacity,
                verify_on_path=spec.verify,
                freshness_ms=spec.freshness_ms,
            )
            for nid, spec in topology.specs.items()
        }
        for nid, prefixes in topology.routes.items():
            for prefix, face in prefixes.items():
                self.nodes[nid].fib_add_route(prefix, face)
        self.keys = {
            b.prefix: sigs.keygen(
                b.scheme_id, rng=_rng_for(scenario.seed, "producer-key", str(b.prefix))
            )
            for b in topology.bindings
        }
        for node in self.nodes.values():
            for b in topology.bindings:
                node.trust.add(b.key_name, b.scheme_id, self.keys[b.prefix].public())
        self.published: dict[Name, Data] = {}

    # -- plumbing --

    def push(self, tick: int, node_id: str, kind: str, payload) -> None:
        heapq.heappush(self.heap, (tick, node_id, self.seq, kind, payload))
        self.seq += 1

    def log(self, tick: int, node_id: str, event: str, name: Name,
            face: Optional[int], nonce: Optional[int] = None) -> None:
        record = {"tick": tick, "node": node_id, "event": event,
                  "name": str(name), "face": face}
        if nonce is not None:
            record["nonce"] = nonce
        self.records.append(record)

    def route_emissions(self, node_id: str, emissions, tick: int) -> None:
        for face, packet in emissions:
            if face == APP_FACE:
                if isinstance(packet, Data):
                    self.deliver(node_id, packet, tick)
                else:
                    self.answer(node_id, packet, tick)
                continue
            is_interest = isinstance(packet, Interest)
            self.log(tick, node_id, "emit_interest" if is_interest else "emit_data",
                     packet.name, face, packet.nonce if is_interest else None)
            peer, peer_face, latency = self.topology.faces[node_id][face]
            self.push(tick + latency, peer, "arrive", (peer_face, encode(packet)))

    # -- applications --

    def issue(self, spec: RequestSpec, result: RequestResult, tick: int) -> None:
        result.attempts += 1
        interest = Interest(
            name=spec.name,
            nonce=self.nonce_rng.randrange(1, 2**32),
            lifetime_ms=spec.lifetime_ms,
        )
        self.log(tick, spec.consumer, "request", spec.name, APP_FACE, interest.nonce)
        node = self.nodes[spec.consumer]
        self.route_emissions(
            spec.consumer, node.process_interest(APP_FACE, interest, tick), tick
        )
        self.push(tick + spec.lifetime_ms + 1, spec.consumer, "timeout", (spec, result))

    def deliver(self, node_id: str, data: Data, tick: int) -> None:
        self.log(tick, node_id, "deliver", data.name, APP_FACE)
        for result in self.requests:
            if (result.consumer == node_id and result.name == data.name
                    and result.delivered is None):
                result.delivered = data.content
                result.delivered_tick = tick
                break

    def answer(self, node_id: str, interest: Interest, tick: int) -> None:
        mine = [b for b in self.topology.bindings if b.node == node_id]
        prefix = longest_prefix_match((b.prefix for b in mine), interest.name)
        if prefix is None:
            self.log(tick, node_id, "no_binding", interest.name, APP_FACE, interest.nonce)
            return
        binding = next(b for b in mine if b.prefix == prefix)
        data = self.published.get(interest.name)
        if data is None:
            data = self.sign_data(
                binding,
                interest.name,
                producer_payload(self.scenario.seed, interest.name),
                self.keys[binding.prefix],
            )
            self.published[interest.name] = data
        self.log(tick, node_id, "publish", data.name, APP_FACE)
        node = self.nodes[node_id]
        self.route_emissions(node_id, node.process_data(APP_FACE, data, tick), tick)

    def sign_data(self, binding: Binding, name: Name, content: bytes, key) -> Data:
        blank = Data(
            name=name,
            content=content,
            key_locator=binding.key_name,
            scheme_id=binding.scheme_id,
            signature=b"",
        )
        rng = _rng_for(self.scenario.seed, "sig", str(name))
        return blank.with_signature(sigs.sign(key, signed_portion(blank), rng).data)

    def plant_poison(self, spec: AttackSpec, tick: int) -> None:
        mine = longest_prefix_match(
            (b.prefix for b in self.topology.bindings), spec.name
        )
        if mine is not None:
            binding = next(b for b in self.topology.bindings if b.prefix == mine)
        else:
            binding = Binding(
                prefix=spec.name,
                node=spec.node,
                scheme_id=sigs.SCHEME_BLS,
                key_name=spec.name.child(b"keys"),
            )
        forged_key = sigs.keygen(
            binding.scheme_id,
            rng=_rng_for(self.scenario.seed, "forged-key", str(spec.name)),
        )
        data = self.sign_data(
            binding, spec.name, forged_payload(self.scenario.seed, spec.name), forged_key
        )
        self.log(tick, spec.node, "poison", spec.name, None)
        self.nodes[spec.node].cs.put(data, tick)

    # -- the loop --

    def run(self) -> Trace:
        for spec in self.scenario.schedule:
            result = RequestResult(
                consumer=spec.consumer, name=spec.name, first_tick=spec.tick
            )
            self.requests.append(result)
            self.push(spec.tick, spec.consumer, "request", (spec, result))
        for attack in self.scenario.attacks:
            self.push(attack.tick, attack.node, "attack", attack)

        while self.heap:
            tick, node_id, _, kind, payload = heapq.heappop(self.heap)
            if tick > self.scenario.tick_limit:
                raise TickLimitExceeded(f"event at tick {tick} passed the limit")
            if kind == "arrive":
                face, blob = payload
                packet = decode(blob)
                node = self.nodes[node_id]
                if isinstance(packet, Interest):
                    self.log(tick, node_id, "recv_interest", packet.name, face, packet.nonce)
                    emissions = node.process_interest(face, packet, tick)
                else:
                    self.log(tick, node_id, "recv_data", packet.name, face)
                    emissions = node.process_data(face, packet, tick)
                self.route_emissions(node_id, emissions, tick)
            elif kind == "request":
                spec, result = payload
                self.issue(spec, result, tick)
            elif kind == "timeout":
                spec, result = payload
                if result.delivered is not None:
                    continue
                if result.attempts >= MAX_ATTEMPTS:
                    self.log(tick, spec.consumer, "give_up", spec.name, APP_FACE)
                    continue
                self.log(tick, spec.consumer, "timeout", spec.name, APP_FACE)
                self.issue(spec, result, tick)
            else:
                self.plant_poison(payload, tick)

        for result in self.requests:
            last = result.delivered_tick
            result.hops = sum(
                1
                for r in self.records
                if r["event"] in ("emit_interest", "emit_data")
                and r["name"] == str(result.name)
                and r["tick"] >= result.first_tick
                and (last is None or r["tick"] <= last)
            )
        counters = {nid: dict(node.counters) for nid, node in self.nodes.items()}
        return Trace(records=self.records, counters=counters, requests=self.requests)


def run(topology: Topology, scenario: Scenario) -> Trace:
    """Execute the scenario against a fresh instantiation of the topology."""
    return _Runner(topology, scenario).run()
