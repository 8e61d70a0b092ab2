"""Random small dependency trees: active verbs coordinated with passive participles."""

import random
from dataclasses import dataclass, field


@dataclass
class SynthTree:
    tokens: str
    active_verbs: list[int]
    passive_verbs: list[int]
    # verb index -> indices of its own SUBJ/SUBJ_PASS children
    subjects: dict[int, list[int]] = field(default_factory=dict)
    # verb index -> head verb index (None for the root)
    conj_head: dict[int, int | None] = field(default_factory=dict)


def synth_tree(rng: random.Random) -> SynthTree:
    specs: list[dict] = []
    words = iter(f"w{i}" for i in range(1000))

    def add(**kw):
        specs.append(kw)
        return len(specs) - 1

    def noun(dep, head=None):
        w = next(words)
        return add(form=w, lemma=w, upos=rng.choice(["NOUN", "PRON", "PROPN"]), xpos="NN", dep=dep, head=head)

    actives, passives = [], []
    subj_of: dict[int, list[int]] = {}
    conj_head: dict[int, int | None] = {}

    for k in range(rng.randint(1, 3)):
        cc = add(form="and", lemma="and", upos="CCONJ", xpos="CC", dep="cc", head=None) if k else None
        subj = noun("nsubj") if k == 0 or rng.random() < 0.4 else None
        w = next(words)
        head = None if k == 0 else rng.choice(actives)
        v = add(form=w, lemma=w, upos="VERB", xpos=rng.choice(["VBD", "VBZ", "VB"]), dep="ROOT" if k == 0 else "conj", head=head)
        for t in (cc, subj):
            if t is not None:
                specs[t]["head"] = v
        if rng.random() < 0.5:
            noun("dobj", v)
        actives.append(v)
        subj_of[v] = [subj] if subj is not None else []
        conj_head[v] = head

    for k in range(rng.randint(1, 2)):
        cc = add(form="and", lemma="and", upos="CCONJ", xpos="CC", dep="cc", head=None)
        head = rng.choice(actives) if k == 0 else rng.choice(actives + passives)
        subj = noun("nsubjpass") if rng.random() < 0.3 else None
        head_is_passive = head in passives
        signals = set()
        while not signals and not head_is_passive:
            for s in ("auxpass", "feel", "agent"):
                if rng.random() < 0.4:
                    signals.add(s)
        if head_is_passive and rng.random() < 0.3:
            signals.add(rng.choice(["auxpass", "feel", "agent"]))
        auxes = []
        if "feel" in signals:
            lem = rng.choice(["feel", "seem", "look"])
            auxes.append(add(form=lem, lemma=lem, upos="AUX", xpos="VBD", dep="aux", head=None))
        if "auxpass" in signals:
            lem = rng.choice(["be", "get"])
            auxes.append(add(form=lem, lemma=lem, upos="AUX", xpos="VBD", dep="auxpass", head=None))
        w = next(words)
        v = add(form=w, lemma=w, upos="VERB", xpos="VBN", dep="conj", head=head)
        for t in (cc, subj, *auxes):
            if t is not None:
                specs[t]["head"] = v
        if "agent" in signals:
            by = add(form="by", lemma="by", upos="ADP", xpos="IN", dep="agent", head=v)
            noun("pobj", by)
        if rng.random() < 0.3:
            noun("dobj", v)
        passives.append(v)
        subj_of[v] = [subj] if subj is not None else []
        conj_head[v] = head

    parts = []
    for i, s in enumerate(specs):
        head = 0 if s["head"] is None else s["head"] + 1
        parts.append(f"{s['form']}/{s['lemma']}/{s['upos']}/{s['xpos']}/{head}/{s['dep']}")
    shift = lambda xs: [x + 1 for x in xs]  # noqa: E731
    return SynthTree(
        " ".join(parts),
        shift(actives),
        shift(passives),
        {v + 1: shift(s) for v, s in subj_of.items()},
        {v + 1: (None if h is None else h + 1) for v, h in conj_head.items()},
    )


def ancestor_subjects(tree: SynthTree, verb: int) -> set[int]:
    """Every subject owned by an active verb on the conj path above ``verb``."""
    out: set[int] = set()
    node = tree.conj_head[verb]
    while node is not None:
        if node in tree.active_verbs:
            out.update(tree.subjects[node])
        node = tree.conj_head[node]
    return out


def expected_active_subjects(tree: SynthTree, verb: int) -> list[int]:
    """Own subjects, else those of the nearest conj ancestor that has some."""
    node = verb
    while node is not None:
        if tree.subjects[node]:
            return tree.subjects[node]
        node = tree.conj_head[node]
    return []
