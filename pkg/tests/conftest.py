import random
from pathlib import Path

import pytest

from teanet.conllu import apply_schema, parse_conllu
from teanet.extract import NONE, EventLabel, SvoRecord

DATA = Path(__file__).parent / "data"

# filled by test_acceptance; printed once at the end of the run
ACCEPTANCE_LINES: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[n])


def conllu_text(sentences, doc_id="d1"):
    """Build CoNLL-U from ``(sent_id, "form/lemma/UPOS/XPOS/head/deprel ...")`` pairs."""
    lines = [f"# newdoc id = {doc_id}"]
    for sid, toks in sentences:
        lines.append(f"# sent_id = {sid}")
        for i, t in enumerate(toks.split(), 1):
            form, lemma, upos, xpos, head, dep = t.split("/")
            lines.append("\t".join([str(i), form, lemma, upos, xpos, "_", head, dep, "_", "_"]))
        lines.append("")
    return "\n".join(lines) + "\n"


def parse_one(toks, schema="clear"):
    corpus = apply_schema(parse_conllu(conllu_text([("s1", toks)])), schema)
    return next(corpus.sentences())


def parse_many(sentences, schema="clear", doc_id="d1"):
    return apply_schema(parse_conllu(conllu_text(sentences, doc_id)), schema)


def record(agent, event, target, passive=0, approx=0, tid=0, doc="d", sent="s", phrase=None):
    return SvoRecord(tid, doc, sent, agent, EventLabel(phrase or event, event), target, passive, approx)


POOL = ["i", "you", "we", "cat", "dog", "mouse", "people", "it"]
EVENTS = ["be", "have", "say", "chase", "think", "know"]


def random_records(rng: random.Random, n: int, docs=("d1",)):
    out = []
    for i in range(n):
        agent = rng.choice(POOL + [NONE])
        target = rng.choice(POOL + [NONE])
        passive = rng.random() < 0.3
        approx = passive and rng.random() < 0.5
        out.append(
            SvoRecord(i, rng.choice(docs), f"s{i}", agent, EventLabel(rng.choice(EVENTS), rng.choice(EVENTS)),
                      target, int(passive), int(approx))
        )
    # keep event phrase and head consistent
    return [
        SvoRecord(r.triple_id, r.doc_id, r.sent_id, r.agent, EventLabel(r.event.head_lemma, r.event.head_lemma),
                  r.target, r.is_passive, r.passive_approx)
        for r in out
    ]


@pytest.fixture
def rng():
    return random.Random(12345)
