"""Network metrics, cross-corpus comparison, emotion profiles and norm joins."""

from __future__ import annotations

from collections import Counter, defaultdict
from dataclasses import dataclass, replace
from typing import Iterable, Sequence

import numpy as np

from .extract import NONE, SvoRecord
from .graph import SYNTACTIC, TeaGraph, build_graph, event_of
from .lexicons import EMOTIONS, EmotionLexicon, ScalarNorms
from .stats import KendallResult, kendall_tau_b

RELATIONS = ("AGENT_EVENT", "EVENT_TARGET")
Z_CRITICAL = 1.96


# ---------------------------------------------------------------- node metrics


@dataclass(frozen=True)
class NodeMetrics:
    label: str
    role: str
    K: int
    F: int
    RI: float
    K_star: float | None = None


def repetitiveness_index(F: float, K: float) -> float:
    """RI = F / K."""
    if K <= 0:
        raise ValueError("K must be positive")
    return F / K


def node_metrics(data: TeaGraph | Iterable[SvoRecord], role: str, event_key: str = "head") -> list[NodeMetrics]:
    """Degree, lemma frequency and repetitiveness for every node of ``role``.

    K counts distinct cross-role neighbours; F sums the weights of those
    syntactic edges. Rows come sorted by K (then F) descending.
    """
    role = role.upper()
    graph = data if isinstance(data, TeaGraph) else build_graph(data, event_key=event_key)
    K: Counter = Counter()
    F: Counter = Counter()
    for e in graph.edges.values():
        if e.kind != SYNTACTIC:
            continue
        for end in (e.u, e.v):
            if end[1] == role:
                K[end[0]] += 1
                F[end[0]] += e.weight
    rows = [NodeMetrics(lab, role, K[lab], F[lab], repetitiveness_index(F[lab], K[lab])) for lab in K]
    rows.sort(key=lambda r: (-r.K, -r.F, r.label))
    return rows


def relative_degree(table: Sequence[NodeMetrics]) -> list[NodeMetrics]:
    """K*_i = K_i / sum of K over the other nodes; None where that sum is zero."""
    total = sum(r.K for r in table)
    out = []
    for r in table:
        rest = total - r.K
        out.append(replace(r, K_star=r.K / rest if rest > 0 else None))
    return out


# ---------------------------------------------------------------- edge weights


@dataclass(frozen=True)
class EdgeWeight:
    source: str
    target: str
    relation: str
    subcorpus: str
    F: int
    NW: float


def edge_frequencies(records: Iterable[SvoRecord], relation: str, event_key: str = "head") -> Counter:
    if relation not in RELATIONS:
        raise ValueError(f"relation must be one of {RELATIONS}, got {relation!r}")
    freq: Counter = Counter()
    for r in records:
        ev = event_of(r, event_key)
        if ev == NONE:
            continue
        if relation == "AGENT_EVENT" and r.agent != NONE:
            freq[(r.agent, ev)] += 1
        elif relation == "EVENT_TARGET" and r.target != NONE:
            freq[(ev, r.target)] += 1
    return freq


def normalized_edge_weights(
    records: Iterable[SvoRecord], relation: str, subcorpus_id: str = "", event_key: str = "head"
) -> list[EdgeWeight]:
    freq = edge_frequencies(records, relation, event_key)
    total = sum(freq.values())
    rows = [EdgeWeight(s, t, relation, subcorpus_id, f, f / total) for (s, t), f in freq.items()]
    rows.sort(key=lambda e: (-e.F, e.source, e.target))
    return rows


@dataclass(frozen=True)
class Prominence:
    source: str
    target: str
    relation: str
    P: float
    NW_a: float
    NW_b: float


def prominence(nw_a: Sequence[EdgeWeight], nw_b: Sequence[EdgeWeight]) -> list[Prominence]:
    """P_e = NW_a - NW_b over the union of edges, sorted by P descending."""
    rels = {e.relation for e in nw_a} | {e.relation for e in nw_b}
    if len(rels) > 1:
        raise ValueError(f"tables mix relation types: {sorted(rels)}")
    a = {(e.source, e.target): e.NW for e in nw_a}
    b = {(e.source, e.target): e.NW for e in nw_b}
    rel = rels.pop() if rels else ""
    out = [
        Prominence(s, t, rel, a.get((s, t), 0.0) - b.get((s, t), 0.0), a.get((s, t), 0.0), b.get((s, t), 0.0))
        for s, t in set(a) | set(b)
    ]
    out.sort(key=lambda p: (-p.P, p.source, p.target))
    return out


@dataclass(frozen=True)
class SharedEdgeCorrelation:
    tau: float
    p: float
    n_shared: int
    defined: bool
    edges: tuple[tuple[str, str, float, float], ...] = ()


def kendall_tau_shared(
    records_a: Iterable[SvoRecord],
    records_b: Iterable[SvoRecord],
    anchor: tuple[str, str],
    event_key: str = "head",
) -> SharedEdgeCorrelation:
    """Tau-b between NW values of the anchor's AGENT_EVENT edges found in both corpora."""
    role, lemma = anchor[0].upper(), anchor[1].lower()
    if role not in ("AGENT", "EVENT"):
        raise ValueError("anchor role must be AGENT or EVENT for AGENT_EVENT edges")
    pos = 0 if role == "AGENT" else 1

    def weights(records):
        return {
            (e.source, e.target): e.NW
            for e in normalized_edge_weights(records, "AGENT_EVENT", event_key=event_key)
            if (e.source, e.target)[pos] == lemma
        }

    wa, wb = weights(records_a), weights(records_b)
    shared = sorted(set(wa) & set(wb))
    x = [wa[k] for k in shared]
    y = [wb[k] for k in shared]
    res: KendallResult = kendall_tau_b(x, y)
    return SharedEdgeCorrelation(
        res.tau, res.p, len(shared), res.defined, tuple((s, t, wa[(s, t)], wb[(s, t)]) for s, t in shared)
    )


# ---------------------------------------------------------------- emotions


@dataclass(frozen=True)
class EmotionScore:
    emotion: str
    observed: int
    mu: float
    sigma: float
    z: float | None

    @property
    def significant(self) -> bool:
        return self.z is not None and abs(self.z) > Z_CRITICAL


@dataclass(frozen=True)
class EmotionProfile:
    scores: tuple[EmotionScore, ...]
    samples: int
    seed: int
    n_words: int

    def __getitem__(self, emotion: str) -> EmotionScore:
        return next(s for s in self.scores if s.emotion == emotion)

    def to_dict(self) -> dict:
        return {
            "samples": self.samples,
            "seed": self.seed,
            "n_words": self.n_words,
            "emotions": [
                {
                    "emotion": s.emotion,
                    "observed": s.observed,
                    "mu": s.mu,
                    "sigma": s.sigma,
                    "z": s.z,
                    "significant@1.96": s.significant,
                }
                for s in self.scores
            ],
        }


def emotion_zscores(words: Sequence[str], lex: EmotionLexicon, samples: int = 1000, seed: int = 0) -> EmotionProfile:
    """Emotion counts of ``words`` against random same-size draws from the lexicon vocabulary."""
    if samples < 100:
        raise ValueError("at least 100 baseline samples are required")
    n = len(words)
    observed = Counter()
    for w in words:
        for emo in lex.emotions(w):
            observed[emo] += 1

    vocab = lex.vocabulary
    indicator = np.array([[emo in lex.emotions(v) for emo in EMOTIONS] for v in vocab], dtype=np.int64)
    rng = np.random.default_rng(seed)
    baseline = np.zeros((samples, len(EMOTIONS)), dtype=np.int64)
    if n and len(vocab):
        chunk = max(1, 250_000 // n)
        for start in range(0, samples, chunk):
            stop = min(samples, start + chunk)
            draws = rng.integers(0, len(vocab), size=(stop - start, n))
            baseline[start:stop] = indicator[draws].sum(axis=1)
    mu = baseline.mean(axis=0)
    sigma = baseline.std(axis=0, ddof=1)
    scores = []
    for j, emo in enumerate(EMOTIONS):
        z = (observed[emo] - mu[j]) / sigma[j] if sigma[j] > 0 else None
        scores.append(EmotionScore(emo, observed[emo], float(mu[j]), float(sigma[j]), None if z is None else float(z)))
    return EmotionProfile(tuple(scores), samples, seed, n)


# ---------------------------------------------------------------- norms


@dataclass(frozen=True)
class NormJoin:
    items: tuple[tuple[str, float], ...]
    omitted: int

    @property
    def scores(self) -> list[float]:
        return [s for _, s in self.items]


def join_norms(labels: Iterable[str], norms: ScalarNorms, mode: str = "split") -> NormJoin:
    """Attach norm scores to labels.

    ``split`` breaks multiword labels into their words and scores the set of
    distinct words; ``mean`` keeps one entry per label, averaging its found
    words. Entries without any score are dropped and counted in ``omitted``.
    """
    if mode == "split":
        words = sorted({w for lab in labels for w in lab.lower().split()})
        items, omitted = [], 0
        for w in words:
            s = norms.lookup(w)
            if s is None:
                omitted += 1
            else:
                items.append((w, s))
        return NormJoin(tuple(items), omitted)
    if mode == "mean":
        items, omitted = [], 0
        for lab in labels:
            found = [s for s in (norms.lookup(w) for w in lab.split()) if s is not None]
            if found:
                items.append((lab, sum(found) / len(found)))
            else:
                omitted += 1
        return NormJoin(tuple(items), omitted)
    raise ValueError(f"norm mode must be 'split' or 'mean', got {mode!r}")


def role_labels(records: Iterable[SvoRecord], role: str, event_key: str = "head") -> list[str]:
    """Distinct non-empty labels filling ``role``, in first-seen order."""
    role = role.upper()
    seen: dict[str, None] = {}
    for r in records:
        lab = {"AGENT": r.agent, "TARGET": r.target}.get(role)
        if role == "EVENT":
            lab = event_of(r, event_key)
        if lab is None:
            raise ValueError(f"unknown role {role!r}")
        if lab != NONE:
            seen.setdefault(lab)
    return list(seen)


# ---------------------------------------------------------------- tables


def merge_svo_tables(tables: Iterable[Sequence[SvoRecord]]) -> list[SvoRecord]:
    """Concatenate tables, shifting ids so each table starts after the previous maximum."""
    out: list[SvoRecord] = []
    offset = 0
    for table in tables:
        if not table:
            continue
        shifted = [replace(r, triple_id=r.triple_id + offset) for r in table]
        out.extend(shifted)
        offset = max(r.triple_id for r in shifted) + 1
    return out


def group_by_doc(records: Iterable[SvoRecord]) -> dict[str, list[SvoRecord]]:
    out: dict[str, list[SvoRecord]] = defaultdict(list)
    for r in records:
        out[r.doc_id].append(r)
    return dict(out)
