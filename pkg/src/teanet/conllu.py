"""CoNLL-U reading/writing and dependency-label normalization."""

from __future__ import annotations

import enum
import io
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import IO, Iterable, Mapping


class ParseError(ValueError):
    """Malformed CoNLL-U input."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class ConfigError(ValueError):
    pass


class Label(str, enum.Enum):
    SUBJ = "SUBJ"
    SUBJ_PASS = "SUBJ_PASS"
    OBJ_DIRECT = "OBJ_DIRECT"
    OBJ_PREP = "OBJ_PREP"
    OBJ_DATIVE = "OBJ_DATIVE"
    COMP_CLAUSAL = "COMP_CLAUSAL"
    COMP_OPEN = "COMP_OPEN"
    AUX = "AUX"
    AUX_PASS = "AUX_PASS"
    NEG = "NEG"
    CONJ = "CONJ"
    AGENT = "AGENT"
    PREP = "PREP"
    ATTR = "ATTR"
    ACOMP = "ACOMP"
    OPRD = "OPRD"
    ADVMOD = "ADVMOD"
    OTHER = "OTHER"


@dataclass(frozen=True)
class Token:
    index: int
    surface: str
    lemma: str
    upos: str
    xpos: str
    deprel_raw: str
    head: int
    feats: Mapping[str, str] = field(default_factory=dict)
    deprel: Label = Label.OTHER


@dataclass(frozen=True)
class Sentence:
    doc_id: str
    sent_id: str
    tokens: tuple[Token, ...]
    raw_text: str = ""

    def token(self, index: int) -> Token:
        return self.tokens[index - 1]

    @property
    def root(self) -> Token:
        return next(t for t in self.tokens if t.head == 0)

    def children(self, index: int) -> list[Token]:
        return [t for t in self.tokens if t.head == index]


@dataclass(frozen=True)
class Corpus:
    documents: tuple[tuple[str, tuple[Sentence, ...]], ...] = ()

    def sentences(self) -> Iterable[Sentence]:
        for _, sents in self.documents:
            yield from sents

    def __len__(self) -> int:
        return sum(len(s) for _, s in self.documents)


_WHITELIST_NEG = frozenset({"not", "n't"})


@dataclass(frozen=True)
class DeprelSchema:
    name: str
    mapping: Mapping[str, Label]
    # advmod tokens with these lemmas are negation markers (UD has no `neg`)
    neg_advmod_lemmas: frozenset[str] = frozenset()
    # UD subtypes (obl:tmod, nsubj:outer) fall back to their base label
    subtype_fallback: bool = False

    def label_for(self, token: Token) -> Label:
        raw = token.deprel_raw
        label = self.mapping.get(raw)
        if label is None and self.subtype_fallback and ":" in raw:
            label = self.mapping.get(raw.split(":", 1)[0])
        if label is None:
            return Label.OTHER
        if label is Label.ADVMOD and token.lemma in self.neg_advmod_lemmas:
            return Label.NEG
        return label

    @staticmethod
    def is_past_participle(token: Token) -> bool:
        if token.xpos:
            return token.xpos == "VBN"
        return token.feats.get("VerbForm") == "Part" and token.feats.get("Tense") == "Past"


CLEAR = DeprelSchema(
    "clear",
    {
        "nsubj": Label.SUBJ,
        "nsubjpass": Label.SUBJ_PASS,
        "dobj": Label.OBJ_DIRECT,
        "pobj": Label.OBJ_PREP,
        "dative": Label.OBJ_DATIVE,
        "agent": Label.AGENT,
        "auxpass": Label.AUX_PASS,
        "aux": Label.AUX,
        "neg": Label.NEG,
        "conj": Label.CONJ,
        "ccomp": Label.COMP_CLAUSAL,
        "xcomp": Label.COMP_OPEN,
        "prep": Label.PREP,
        "attr": Label.ATTR,
        "acomp": Label.ACOMP,
        "oprd": Label.OPRD,
        "advmod": Label.ADVMOD,
    },
)

UD = DeprelSchema(
    "ud",
    {
        "nsubj": Label.SUBJ,
        "nsubj:pass": Label.SUBJ_PASS,
        "obj": Label.OBJ_DIRECT,
        "obl": Label.OBJ_PREP,
        "iobj": Label.OBJ_DATIVE,
        "obl:agent": Label.AGENT,
        "aux:pass": Label.AUX_PASS,
        "aux": Label.AUX,
        "cop": Label.AUX,
        "conj": Label.CONJ,
        "ccomp": Label.COMP_CLAUSAL,
        "xcomp": Label.COMP_OPEN,
        "advmod": Label.ADVMOD,
    },
    neg_advmod_lemmas=_WHITELIST_NEG,
    subtype_fallback=True,
)

SCHEMAS = {"clear": CLEAR, "ud": UD}


def get_schema(name: str) -> DeprelSchema:
    try:
        return SCHEMAS[name]
    except KeyError:
        raise ConfigError(f"unknown schema {name!r}; expected one of {sorted(SCHEMAS)}") from None


def load_schema_mapping(path: str | Path, base: str = "clear") -> DeprelSchema:
    """Extend a shipped schema with a two-column ``raw<TAB>canonical`` file."""
    schema = get_schema(base)
    mapping = dict(schema.mapping)
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.rstrip("\r\n")
            if not line.strip() or line.startswith("#"):
                continue
            cols = line.split("\t")
            if len(cols) != 2:
                raise ConfigError(f"{path}:{lineno}: expected 2 columns, got {len(cols)}")
            try:
                mapping[cols[0]] = Label(cols[1].strip())
            except ValueError:
                raise ConfigError(f"{path}:{lineno}: unknown canonical label {cols[1]!r}") from None
    return replace(schema, mapping=mapping)


def apply_schema(corpus: Corpus, schema: DeprelSchema | str) -> Corpus:
    if isinstance(schema, str):
        schema = get_schema(schema)
    docs = []
    for doc_id, sents in corpus.documents:
        new_sents = tuple(
            replace(s, tokens=tuple(replace(t, deprel=schema.label_for(t)) for t in s.tokens))
            for s in sents
        )
        docs.append((doc_id, new_sents))
    return Corpus(tuple(docs))


def _parse_feats(value: str) -> dict[str, str]:
    if value in ("_", ""):
        return {}
    feats = {}
    for pair in value.split("|"):
        k, _, v = pair.partition("=")
        feats[k] = v
    return feats


def _format_feats(feats: Mapping[str, str]) -> str:
    if not feats:
        return "_"
    return "|".join(f"{k}={feats[k]}" for k in sorted(feats))


def _check_tree(tokens: list[Token], first_line: int) -> None:
    n = len(tokens)
    roots = 0
    for i, t in enumerate(tokens, 1):
        if t.index != i:
            raise ParseError(f"token ids are not sequential at id {t.index}", first_line)
        if t.head > n:
            raise ParseError(f"head {t.head} of token {t.index} out of range", first_line)
        if t.head == t.index:
            raise ParseError(f"token {t.index} is its own head", first_line)
        roots += t.head == 0
    if roots != 1:
        raise ParseError(f"sentence has {roots} root tokens, expected 1", first_line)
    heads = {t.index: t.head for t in tokens}
    for start in heads:
        seen = set()
        node = start
        while node != 0:
            if node in seen:
                raise ParseError(f"cyclic head links through token {node}", first_line)
            seen.add(node)
            node = heads[node]


def _lines(stream: IO) -> Iterable[str]:
    for raw in stream:
        if isinstance(raw, bytes):
            raw = raw.decode("utf-8")
        yield raw.rstrip("\r\n")


def parse_conllu(stream: IO | bytes | str, default_doc_id: str = "doc") -> Corpus:
    """Read a CoNLL-U stream (bytes or text) into a :class:`Corpus`.

    Labels are left as ``OTHER`` until :func:`apply_schema` is run.
    """
    if isinstance(stream, bytes):
        stream = io.BytesIO(stream)
    elif isinstance(stream, str):
        stream = io.StringIO(stream)

    docs: dict[str, list[Sentence]] = {}
    order: list[str] = []
    doc_id = default_doc_id
    sent_id: str | None = None
    text = ""
    tokens: list[Token] = []
    block_start = 0
    counter = 0

    def flush():
        nonlocal tokens, sent_id, text, counter
        if not tokens:
            sent_id, text = None, ""
            return
        _check_tree(tokens, block_start)
        counter += 1
        if doc_id not in docs:
            docs[doc_id] = []
            order.append(doc_id)
        docs[doc_id].append(Sentence(doc_id, sent_id or f"s{counter}", tuple(tokens), text))
        tokens, sent_id, text = [], None, ""

    for lineno, line in enumerate(_lines(stream), 1):
        if not line.strip():
            flush()
            continue
        if not tokens and sent_id is None and not text:
            block_start = lineno
        if line.startswith("#"):
            key, sep, value = line[1:].partition("=")
            key, value = key.strip(), value.strip()
            if not sep:
                continue
            if key in ("newdoc id", "newdoc"):
                flush()
                if value in docs:
                    raise ParseError(f"duplicate document id {value!r}", lineno)
                doc_id = value
                block_start = lineno
            elif key == "sent_id":
                sent_id = value
            elif key == "text":
                text = value
            continue
        cols = line.split("\t")
        if len(cols) != 10:
            raise ParseError(f"expected 10 tab-separated columns, got {len(cols)}", lineno)
        if "-" in cols[0] or "." in cols[0]:
            continue
        try:
            index = int(cols[0])
            head = int(cols[6])
        except ValueError:
            raise ParseError(f"non-integer ID or HEAD ({cols[0]!r}, {cols[6]!r})", lineno) from None
        if index < 1 or head < 0:
            raise ParseError(f"invalid ID {index} or HEAD {head}", lineno)
        surface = cols[1]
        lemma = cols[2] if cols[2] != "_" else surface
        tokens.append(
            Token(
                index=index,
                surface=surface,
                lemma=lemma.lower(),
                upos=cols[3],
                xpos="" if cols[4] == "_" else cols[4],
                deprel_raw=cols[7],
                head=head,
                feats=_parse_feats(cols[5]),
            )
        )
    flush()
    return Corpus(tuple((d, tuple(docs[d])) for d in order))


def read_conllu(path: str | Path, default_doc_id: str | None = None) -> Corpus:
    path = Path(path)
    with open(path, "rb") as fh:
        return parse_conllu(fh, default_doc_id or path.stem)


def write_conllu(corpus: Corpus) -> str:
    out = []
    for doc_id, sents in corpus.documents:
        out.append(f"# newdoc id = {doc_id}")
        for s in sents:
            out.append(f"# sent_id = {s.sent_id}")
            if s.raw_text:
                out.append(f"# text = {s.raw_text}")
            for t in s.tokens:
                out.append(
                    "\t".join(
                        [
                            str(t.index),
                            t.surface,
                            t.lemma,
                            t.upos,
                            t.xpos or "_",
                            _format_feats(t.feats),
                            str(t.head),
                            t.deprel_raw,
                            "_",
                            "_",
                        ]
                    )
                )
            out.append("")
    return "\n".join(out) + ("\n" if out else "")
