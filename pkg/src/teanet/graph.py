"""Tripartite Agent/Event/Target network: construction, filtering, export."""

from __future__ import annotations

import io
import itertools
import json
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

import networkx as nx

from .extract import NONE, SvoRecord
from .lexicons import SynonymTable, ValenceLexicon, are_synonymous, classify_polarity

ROLES = ("AGENT", "EVENT", "TARGET")
SYNTACTIC = "SYNTACTIC"
SYNONYM = "SYNONYM"

NodeKey = tuple[str, str]  # (label, role)


@dataclass(frozen=True)
class TeaNode:
    label: str
    role: str
    polarity: str = "neutral"

    @property
    def key(self) -> NodeKey:
        return (self.label, self.role)


@dataclass(frozen=True)
class TeaEdge:
    u: NodeKey
    v: NodeKey
    kind: str = SYNTACTIC
    weight: int = 1
    active: int = 0
    passive_agent: int = 0
    passive_approx: int = 0

    @property
    def key(self) -> tuple[NodeKey, NodeKey, str]:
        return (self.u, self.v, self.kind)

    @property
    def relation(self) -> str | None:
        if self.kind != SYNTACTIC:
            return None
        return "AGENT_EVENT" if self.u[1] == "AGENT" else "EVENT_TARGET"


@dataclass(frozen=True)
class TeaGraph:
    nodes: Mapping[NodeKey, TeaNode] = field(default_factory=dict)
    edges: Mapping[tuple, TeaEdge] = field(default_factory=dict)
    provenance: tuple[str, ...] = field(default=(), compare=False)

    def syntactic_edges(self) -> list[TeaEdge]:
        return [e for e in self.edges.values() if e.kind == SYNTACTIC]

    def neighbors(self, key: NodeKey, kind: str = SYNTACTIC) -> set[NodeKey]:
        out = set()
        for e in self.edges.values():
            if e.kind != kind:
                continue
            if e.u == key:
                out.add(e.v)
            elif e.v == key:
                out.add(e.u)
        return out


def event_of(record: SvoRecord, event_key: str = "head") -> str:
    if event_key == "phrase":
        return record.event.phrase
    if event_key == "head":
        return record.event.head_lemma
    raise ValueError(f"event_key must be 'head' or 'phrase', got {event_key!r}")


def _voice_slot(r: SvoRecord) -> int:
    if r.passive_approx:
        return 2
    return 1 if r.is_passive else 0


def syntactic_pairs(r: SvoRecord, event_key: str = "head") -> list[tuple[NodeKey, NodeKey]]:
    ev = event_of(r, event_key)
    if ev == NONE:
        return []
    pairs = []
    if r.agent != NONE:
        pairs.append(((r.agent, "AGENT"), (ev, "EVENT")))
    if r.target != NONE:
        pairs.append(((ev, "EVENT"), (r.target, "TARGET")))
    return pairs


def build_graph(
    records: Iterable[SvoRecord],
    valence: ValenceLexicon | None = None,
    synonyms: SynonymTable | None = None,
    event_key: str = "head",
    provenance: Sequence[str] = (),
) -> TeaGraph:
    counts: dict[tuple[NodeKey, NodeKey], list[int]] = defaultdict(lambda: [0, 0, 0])
    labels: set[NodeKey] = set()
    for r in records:
        slot = _voice_slot(r)
        for u, v in syntactic_pairs(r, event_key):
            counts[(u, v)][slot] += 1
            labels.update((u, v))

    def polarity(label):
        return classify_polarity(valence, label) if valence is not None else "neutral"

    nodes = {k: TeaNode(k[0], k[1], polarity(k[0])) for k in sorted(labels)}
    edges: dict[tuple, TeaEdge] = {}
    for (u, v), c in sorted(counts.items()):
        e = TeaEdge(u, v, SYNTACTIC, sum(c), *c)
        edges[e.key] = e
    if synonyms is not None:
        by_role: dict[str, list[str]] = defaultdict(list)
        for label, role in nodes:
            by_role[role].append(label)
        for role in ROLES:
            for a, b in itertools.combinations(sorted(by_role[role]), 2):
                if are_synonymous(synonyms, a, b):
                    e = TeaEdge((a, role), (b, role), SYNONYM, 1)
                    edges[e.key] = e
    return TeaGraph(nodes, edges, tuple(provenance))


def _matches(value: str, wanted: str | None) -> bool:
    return wanted is None or value.lower() == wanted.lower()


def filter_records(
    records: Iterable[SvoRecord],
    agent: str | None = None,
    event: str | None = None,
    target: str | None = None,
    voice: str = "any",
    exclude_approx: bool = False,
) -> list[SvoRecord]:
    """Keep whole triples satisfying every supplied constraint.

    ``event`` matches either the head lemma or the full phrase.
    """
    if voice not in ("any", "active", "passive"):
        raise ValueError(f"voice must be any/active/passive, got {voice!r}")
    out = []
    for r in records:
        if not (_matches(r.agent, agent) and _matches(r.target, target)):
            continue
        if event is not None and not (_matches(r.event.head_lemma, event) or _matches(r.event.phrase, event)):
            continue
        if voice == "active" and r.is_passive:
            continue
        if voice == "passive" and not r.is_passive:
            continue
        if exclude_approx and r.passive_approx:
            continue
        out.append(r)
    return out


# ---------------------------------------------------------------- export


def _node_id(key: NodeKey) -> str:
    return f"{key[1]}:{key[0]}"


def to_networkx(graph: TeaGraph) -> nx.Graph:
    g = nx.Graph()
    for key, n in graph.nodes.items():
        g.add_node(_node_id(key), label=n.label, role=n.role, polarity=n.polarity)
    for e in graph.edges.values():
        g.add_edge(
            _node_id(e.u),
            _node_id(e.v),
            kind=e.kind,
            weight=e.weight,
            active=e.active,
            passive_agent=e.passive_agent,
            passive_approx=e.passive_approx,
        )
    return g


def _edge_sort_key(e: TeaEdge):
    return (e.kind, e.u, e.v)


def to_json_dict(graph: TeaGraph) -> dict:
    return {
        "nodes": [
            {"id": _node_id(k), "label": n.label, "role": n.role, "polarity": n.polarity}
            for k, n in sorted(graph.nodes.items())
        ],
        "edges": [
            {
                "source": _node_id(e.u),
                "target": _node_id(e.v),
                "kind": e.kind,
                "weight": e.weight,
                "active": e.active,
                "passive_agent": e.passive_agent,
                "passive_approx": e.passive_approx,
            }
            for e in sorted(graph.edges.values(), key=_edge_sort_key)
        ],
    }


def export_graph(graph: TeaGraph, fmt: str) -> bytes:
    if fmt == "json":
        return (json.dumps(to_json_dict(graph), indent=2, ensure_ascii=False) + "\n").encode("utf-8")
    if fmt == "graphml":
        buf = io.BytesIO()
        nx.write_graphml(to_networkx(graph), buf, encoding="utf-8")
        return buf.getvalue()
    if fmt == "edgelist":
        lines = ["source_label\tsource_role\ttarget_label\ttarget_role\tkind\tweight"]
        for e in sorted(graph.edges.values(), key=_edge_sort_key):
            lines.append(f"{e.u[0]}\t{e.u[1]}\t{e.v[0]}\t{e.v[1]}\t{e.kind}\t{e.weight}")
        return ("\n".join(lines) + "\n").encode("utf-8")
    raise ValueError(f"unknown export format {fmt!r}; expected graphml, json or edgelist")


def _from_parts(nodes: Iterable[dict], edges: Iterable[dict]) -> TeaGraph:
    by_id = {}
    node_map = {}
    for n in nodes:
        node = TeaNode(n["label"], n["role"], n.get("polarity", "neutral"))
        by_id[n["id"]] = node.key
        node_map[node.key] = node
    edge_map = {}
    for d in edges:
        u, v = by_id[d["source"]], by_id[d["target"]]
        if d["kind"] == SYNTACTIC and ROLES.index(u[1]) > ROLES.index(v[1]):
            u, v = v, u
        elif d["kind"] == SYNONYM and u > v:
            u, v = v, u
        e = TeaEdge(
            u,
            v,
            d["kind"],
            int(d["weight"]),
            int(d.get("active", 0)),
            int(d.get("passive_agent", 0)),
            int(d.get("passive_approx", 0)),
        )
        edge_map[e.key] = e
    return TeaGraph(node_map, edge_map)


def import_json(data: bytes | str) -> TeaGraph:
    doc = json.loads(data)
    return _from_parts(doc["nodes"], doc["edges"])


def import_graphml(data: bytes) -> TeaGraph:
    g = nx.read_graphml(io.BytesIO(data))
    nodes = [dict(id=i, **attrs) for i, attrs in g.nodes(data=True)]
    edges = [dict(source=u, target=v, **attrs) for u, v, attrs in g.edges(data=True)]
    return _from_parts(nodes, edges)


def export_hypergraph(records: Iterable[SvoRecord], event_key: str = "head") -> bytes:
    """One JSON line per triple listing its non-empty members."""
    lines = []
    for r in records:
        members = []
        if r.agent != NONE:
            members.append({"label": r.agent, "role": "AGENT"})
        ev = event_of(r, event_key)
        if ev != NONE:
            members.append({"label": ev, "role": "EVENT"})
        if r.target != NONE:
            members.append({"label": r.target, "role": "TARGET"})
        lines.append(json.dumps({"triple_id": r.triple_id, "members": members}, ensure_ascii=False))
    return ("\n".join(lines) + ("\n" if lines else "")).encode("utf-8")
