"""Agent-Event-Target extraction from canonical-labelled dependency trees."""

from __future__ import annotations

import csv
import enum
import io
import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from typing import Iterable, Sequence

from .conllu import Corpus, DeprelSchema, Label, Sentence, Token

NONE = "__none__"

VERB_UPOS = frozenset({"VERB", "AUX"})
NON_CANDIDATE = frozenset({Label.AUX, Label.AUX_PASS, Label.ACOMP, Label.PREP, Label.ATTR, Label.OPRD})
SUBJECT_LABELS = frozenset({Label.SUBJ, Label.SUBJ_PASS})
PHRASE_LABELS = frozenset({Label.AUX, Label.AUX_PASS, Label.NEG, Label.ADVMOD})
COMP_LABELS = frozenset({Label.COMP_OPEN, Label.COMP_CLAUSAL})

# auxiliaries that never mark a passive in front of a past participle
NON_PASSIVE_AUX = frozenset(
    {"be", "have", "do", "will", "shall", "would", "should", "could", "might", "may", "must", "can"}
)

is_past_participle = DeprelSchema.is_past_participle


class Signal(str, enum.Enum):
    NONE = "NONE"
    CANONICAL = "CANONICAL"
    FEEL = "FEEL"
    AGENT_PHRASE = "AGENT_PHRASE"
    CONJUNCT = "CONJUNCT"


@dataclass(frozen=True)
class PassiveInfo:
    is_passive: bool = False
    signal: Signal = Signal.NONE
    agent_token: int | None = None


ACTIVE = PassiveInfo()


@dataclass(frozen=True)
class EventLabel:
    phrase: str
    head_lemma: str
    surface: str = field(default="", compare=False)


@dataclass(frozen=True)
class SvoRecord:
    triple_id: int
    doc_id: str
    sent_id: str
    agent: str
    event: EventLabel
    target: str
    is_passive: int = 0
    passive_approx: int = 0
    verb_index: int = field(default=0, compare=False)


# ---------------------------------------------------------------- tree helpers


def _children(sentence: Sentence, index: int, labels: frozenset[Label] | Label) -> list[Token]:
    if isinstance(labels, Label):
        labels = frozenset({labels})
    return [t for t in sentence.tokens if t.head == index and t.deprel in labels]


def _expand_conj(sentence: Sentence, indices: Iterable[int]) -> list[int]:
    """Add coordinated conjuncts (recursively) of every index, keeping token order."""
    found: set[int] = set()
    stack = list(indices)
    while stack:
        i = stack.pop()
        if i in found:
            continue
        found.add(i)
        stack.extend(t.index for t in _children(sentence, i, Label.CONJ))
    return sorted(found)


def _prep_object(sentence: Sentence, prep: Token) -> list[int]:
    return [t.index for t in _children(sentence, prep.index, Label.OBJ_PREP)]


def _agent_phrase_object(sentence: Sentence, verb: int) -> int | None:
    for agent in _children(sentence, verb, Label.AGENT):
        pobj = _prep_object(sentence, agent)
        if pobj:
            return pobj[0]
        # UD attaches obl:agent to the nominal itself
        if agent.upos not in ("ADP",):
            return agent.index
    return None


# ---------------------------------------------------------------- operations


def find_verb_candidates(sentence: Sentence) -> list[int]:
    return [t.index for t in sentence.tokens if t.upos in VERB_UPOS and t.deprel not in NON_CANDIDATE]


def passive_info(verb: int, sentence: Sentence, _depth: int = 0) -> PassiveInfo:
    tok = sentence.token(verb)
    agent = _agent_phrase_object(sentence, verb)

    if _children(sentence, verb, frozenset({Label.AUX_PASS, Label.SUBJ_PASS})):
        return PassiveInfo(True, Signal.CANONICAL, agent)

    if not is_past_participle(tok):
        return ACTIVE

    if any(a.lemma not in NON_PASSIVE_AUX for a in _children(sentence, verb, Label.AUX)):
        return PassiveInfo(True, Signal.FEEL, agent)

    if agent is not None or _children(sentence, verb, Label.AGENT):
        return PassiveInfo(True, Signal.AGENT_PHRASE, agent)

    if tok.deprel is Label.CONJ and tok.head and _depth < len(sentence.tokens):
        head = sentence.token(tok.head)
        if head.upos in VERB_UPOS:
            head_info = passive_info(head.index, sentence, _depth + 1)
            if head_info.is_passive:
                return PassiveInfo(True, Signal.CONJUNCT, agent if agent is not None else head_info.agent_token)
    return ACTIVE


def extract_subjects(verb: int, sentence: Sentence, _info: PassiveInfo | None = None) -> list[int]:
    direct = [t.index for t in _children(sentence, verb, SUBJECT_LABELS)]
    if direct:
        return _expand_conj(sentence, direct)
    info = _info if _info is not None else passive_info(verb, sentence)
    if info.is_passive:
        # never climb to an active ancestor's subject
        return []
    tok = sentence.token(verb)
    seen = {verb}
    while tok.deprel is Label.CONJ and tok.head and tok.head not in seen:
        seen.add(tok.head)
        tok = sentence.token(tok.head)
        subjects = [t.index for t in _children(sentence, tok.index, SUBJECT_LABELS)]
        if subjects:
            return _expand_conj(sentence, subjects)
    return []


def _own_objects(verb: int, sentence: Sentence, seen: set[int]) -> list[int]:
    seen.add(verb)
    objs: list[int] = []
    for child in sentence.children(verb):
        label = child.deprel
        if label in (Label.OBJ_DIRECT, Label.OBJ_DATIVE, Label.OBJ_PREP, Label.ATTR, Label.ACOMP):
            objs.append(child.index)
        elif label is Label.PREP:
            objs.extend(_prep_object(sentence, child))
        elif label in COMP_LABELS:
            if child.upos not in VERB_UPOS:
                objs.append(child.index)
            elif child.index not in seen:
                objs.extend(_own_objects(child.index, sentence, seen))
    return objs


def extract_objects(verb: int, sentence: Sentence) -> list[int]:
    objs = _own_objects(verb, sentence, set())
    if not objs:
        tok = sentence.token(verb)
        seen = {verb}
        while not objs and tok.deprel is Label.CONJ and tok.head and tok.head not in seen:
            seen.add(tok.head)
            tok = sentence.token(tok.head)
            objs = _own_objects(tok.index, sentence, set(seen))
    return _expand_conj(sentence, objs)


def _comp_chain(verb: int, sentence: Sentence, seen: set[int]) -> list[Token]:
    chain = []
    for child in _children(sentence, verb, COMP_LABELS):
        if child.upos in VERB_UPOS and child.index not in seen:
            seen.add(child.index)
            chain.append(child)
            chain.extend(_comp_chain(child.index, sentence, seen))
    return chain


def build_event_label(verb: int, sentence: Sentence) -> EventLabel:
    head = sentence.token(verb)
    members = [head, *_children(sentence, verb, PHRASE_LABELS), *_comp_chain(verb, sentence, {verb})]
    members.sort(key=lambda t: t.index)
    return EventLabel(
        phrase=" ".join(t.lemma.lower() for t in members),
        head_lemma=head.lemma.lower(),
        surface=" ".join(t.surface for t in members),
    )


def _lemma(sentence: Sentence, index: int) -> str:
    return sentence.token(index).lemma.lower()


def _records_for_verb(sentence: Sentence, verb: int) -> list[tuple[str, str, int, int]]:
    info = passive_info(verb, sentence)
    subjects = [_lemma(sentence, i) for i in extract_subjects(verb, sentence, info)]
    objects = [_lemma(sentence, i) for i in extract_objects(verb, sentence)]

    if info.is_passive and info.agent_token is not None:
        agents = [_lemma(sentence, i) for i in _expand_conj(sentence, [info.agent_token])]
        targets = subjects or objects
        pairs = itertools.product(agents, targets or [NONE])
        return [(a, t, 1, 0) for a, t in pairs]

    flags = (1, 1) if info.is_passive else (0, 0)
    if subjects and objects:
        pairs = itertools.product(subjects, objects)
    elif subjects:
        pairs = ((s, NONE) for s in subjects)
    elif objects:
        pairs = ((NONE, o) for o in objects)
    else:
        return []
    return [(a, t, *flags) for a, t in pairs]


def extract_sentence(sentence: Sentence) -> list[SvoRecord]:
    """Records for one sentence; triple ids are placeholders (0)."""
    out = []
    for verb in find_verb_candidates(sentence):
        event = build_event_label(verb, sentence)
        for agent, target, passive, approx in _records_for_verb(sentence, verb):
            out.append(SvoRecord(0, sentence.doc_id, sentence.sent_id, agent, event, target, passive, approx, verb))
    return out


def baseline_sentence(sentence: Sentence) -> list[SvoRecord]:
    """Root-verb-only extraction: first subject, first object, no heuristics."""
    root = sentence.root
    is_verb = root.upos in VERB_UPOS
    subj = next(iter(_children(sentence, root.index, SUBJECT_LABELS)), None)

    obj = None
    for label in (Label.OBJ_DIRECT, Label.OBJ_PREP, Label.ATTR, Label.ACOMP, Label.COMP_CLAUSAL):
        found = _children(sentence, root.index, label)
        if found:
            obj = found[0].index
            break
    if obj is None:
        for child in _children(sentence, root.index, frozenset({Label.PREP, Label.COMP_OPEN})):
            if child.deprel is Label.PREP:
                found = _prep_object(sentence, child)
            else:
                found = [t.index for t in _children(sentence, child.index, Label.OBJ_DIRECT)]
            if found:
                obj = found[0]
                break

    agent_obj = _agent_phrase_object(sentence, root.index)
    passive = (subj is not None and subj.deprel is Label.SUBJ_PASS) or bool(
        _children(sentence, root.index, Label.AGENT)
    )
    subj_lemma = _lemma(sentence, subj.index) if subj else NONE
    obj_lemma = _lemma(sentence, obj) if obj else NONE
    if passive and agent_obj is not None:
        agent, target, flags = _lemma(sentence, agent_obj), subj_lemma, (1, 0)
    elif passive:
        agent, target, flags = subj_lemma, obj_lemma, (1, 1)
    else:
        agent, target, flags = subj_lemma, obj_lemma, (0, 0)
    lemma = root.lemma.lower() if is_verb else NONE
    event = EventLabel(lemma, lemma, root.surface if is_verb else "")
    return [SvoRecord(0, sentence.doc_id, sentence.sent_id, agent, event, target, *flags, root.index)]


def _number(records: Iterable[SvoRecord], start: int = 0) -> list[SvoRecord]:
    return [replace(r, triple_id=i) for i, r in enumerate(records, start)]


def _extract_doc(args):
    sents, baseline = args
    fn = baseline_sentence if baseline else extract_sentence
    return [r for s in sents for r in fn(s)]


def _run(corpus: Corpus, baseline: bool, jobs: int) -> list[SvoRecord]:
    work = [(sents, baseline) for _, sents in corpus.documents]
    if jobs > 1 and len(work) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            parts = list(pool.map(_extract_doc, work))
    else:
        parts = [_extract_doc(w) for w in work]
    return _number(itertools.chain.from_iterable(parts))


def extract_svos(corpus: Corpus, jobs: int = 1) -> list[SvoRecord]:
    """Full extraction over a schema-normalized corpus.

    Documents may be processed in parallel; ids are assigned afterwards in
    input order so the result does not depend on ``jobs``.
    """
    return _run(corpus, False, jobs)


def extract_baseline(corpus: Corpus, jobs: int = 1) -> list[SvoRecord]:
    return _run(corpus, True, jobs)


def sentence_is_passive(sentence: Sentence) -> bool:
    return any(passive_info(v, sentence).is_passive for v in find_verb_candidates(sentence))


# ---------------------------------------------------------------- CSV table

CSV_HEADER = (
    "triple_id",
    "doc_id",
    "sent_id",
    "relation",
    "source",
    "source_role",
    "target",
    "target_role",
    "event_phrase",
    "is_passive",
    "passive_approx",
)


def write_svo_csv(records: Sequence[SvoRecord]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for r in records:
        common = (r.event.phrase, r.is_passive, r.passive_approx)
        w.writerow((r.triple_id, r.doc_id, r.sent_id, "AGENT_EVENT", r.agent, "AGENT", r.event.head_lemma, "EVENT", *common))
        w.writerow((r.triple_id, r.doc_id, r.sent_id, "EVENT_TARGET", r.event.head_lemma, "EVENT", r.target, "TARGET", *common))
    return buf.getvalue()


class TableError(ValueError):
    pass


def read_svo_csv(text: str) -> list[SvoRecord]:
    reader = csv.DictReader(io.StringIO(text))
    if tuple(reader.fieldnames or ()) != CSV_HEADER:
        raise TableError(f"unexpected SVO header {reader.fieldnames}")
    partial: dict[int, dict] = {}
    order: list[int] = []
    for lineno, row in enumerate(reader, 2):
        try:
            tid = int(row["triple_id"])
            passive, approx = int(row["is_passive"]), int(row["passive_approx"])
        except (TypeError, ValueError):
            raise TableError(f"line {lineno}: non-integer id or flag") from None
        slot = partial.get(tid)
        if slot is None:
            slot = partial[tid] = {
                "doc_id": row["doc_id"],
                "sent_id": row["sent_id"],
                "phrase": row["event_phrase"],
                "flags": (passive, approx),
            }
            order.append(tid)
        if row["relation"] == "AGENT_EVENT":
            slot["agent"], slot["head"] = row["source"], row["target"]
        elif row["relation"] == "EVENT_TARGET":
            slot["head"], slot["target"] = row["source"], row["target"]
        else:
            raise TableError(f"line {lineno}: unknown relation {row['relation']!r}")
    out = []
    for tid in order:
        s = partial[tid]
        out.append(
            SvoRecord(
                tid,
                s["doc_id"],
                s["sent_id"],
                s.get("agent", NONE),
                EventLabel(s["phrase"], s["head"]),
                s.get("target", NONE),
                *s["flags"],
            )
        )
    return out
