"""Word-level lexical resources: valence, synonyms, emotions, scalar norms."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Iterable, Mapping

log = logging.getLogger(__name__)

EMOTIONS = ("anger", "anticipation", "disgust", "fear", "joy", "sadness", "surprise", "trust")
# NRC files also carry sentiment columns; they are not emotions
_NRC_SENTIMENT = frozenset({"positive", "negative"})


class LoadError(ValueError):
    pass


def _rows(path: str | Path, min_cols: int, max_cols: int | None = None):
    try:
        fh = open(path, encoding="utf-8")
    except OSError as exc:
        raise LoadError(f"cannot read {path}: {exc}") from exc
    with fh:
        for lineno, line in enumerate(fh, 1):
            line = line.rstrip("\r\n")
            if not line.strip():
                continue
            cols = line.split("\t")
            if len(cols) < min_cols or (max_cols is not None and len(cols) > max_cols):
                raise LoadError(f"{path}:{lineno}: unexpected column count {len(cols)}")
            yield lineno, cols


def _score(path, lineno, value: str) -> float:
    try:
        x = float(value)
    except ValueError:
        raise LoadError(f"{path}:{lineno}: non-numeric score {value!r}") from None
    if not math.isfinite(x):
        raise LoadError(f"{path}:{lineno}: non-finite score {value!r}")
    return x


def _scored_table(path, max_cols, warn: bool = True) -> tuple[dict[str, float], int]:
    entries: dict[str, float] = {}
    dups = 0
    for lineno, cols in _rows(path, 2, max_cols):
        key = cols[0].strip().lower()
        if key in entries:
            dups += 1
        entries[key] = _score(path, lineno, cols[1])
    if dups and warn:
        log.warning("%s: %d duplicate lemma rows (last one kept)", path, dups)
    return entries, dups


# ---------------------------------------------------------------- valence


@dataclass(frozen=True)
class ValenceLexicon:
    entries: Mapping[str, float]
    neg_max: float = -0.05
    pos_min: float = 0.05
    duplicates: int = field(default=0, compare=False)

    def __post_init__(self):
        if self.neg_max > self.pos_min:
            raise ValueError("neg_max must not exceed pos_min")

    def score(self, label: str) -> float | None:
        """Score of a lemma; multiword labels take the mean over found words."""
        found = [self.entries[w] for w in label.lower().split() if w in self.entries]
        if not found:
            return None
        return sum(found) / len(found)


def load_valence(path: str | Path, neg_max: float = -0.05, pos_min: float = 0.05) -> ValenceLexicon:
    entries, dups = _scored_table(path, None)
    return ValenceLexicon(entries, neg_max, pos_min, dups)


def default_valence() -> ValenceLexicon:
    """The bundled VADER lexicon."""
    ref = resources.files("teanet") / "data" / "vader_lexicon.txt"
    with resources.as_file(ref) as p:
        # the shipped file repeats a few emoticons that differ only in case
        entries, dups = _scored_table(p, None, warn=False)
    return ValenceLexicon(entries, duplicates=dups)


def classify_polarity(lex: ValenceLexicon, lemma: str) -> str:
    s = lex.score(lemma)
    if s is None:
        return "neutral"
    if s < lex.neg_max:
        return "negative"
    if s > lex.pos_min:
        return "positive"
    return "neutral"


def dump_valence(lex: ValenceLexicon) -> str:
    return "".join(f"{k}\t{v!r}\n" for k, v in sorted(lex.entries.items()))


# ---------------------------------------------------------------- synonyms


@dataclass(frozen=True)
class SynonymTable:
    groups: tuple[frozenset[str], ...] = ()
    index: Mapping[str, frozenset[int]] = field(default_factory=dict)

    @classmethod
    def from_groups(cls, groups: Iterable[Iterable[str]]) -> "SynonymTable":
        frozen = tuple(frozenset(w.lower() for w in g if w.strip()) for g in groups)
        frozen = tuple(g for g in frozen if g)
        index: dict[str, set[int]] = {}
        for gid, g in enumerate(frozen):
            for w in g:
                index.setdefault(w, set()).add(gid)
        return cls(frozen, {k: frozenset(v) for k, v in index.items()})


def load_synonyms(path: str | Path) -> SynonymTable:
    return SynonymTable.from_groups([c.strip() for c in cols] for _, cols in _rows(path, 1))


def are_synonymous(tab: SynonymTable, a: str, b: str) -> bool:
    a, b = a.lower(), b.lower()
    if a == b:
        return False
    return bool(tab.index.get(a, frozenset()) & tab.index.get(b, frozenset()))


def dump_synonyms(tab: SynonymTable) -> str:
    return "".join("\t".join(sorted(g)) + "\n" for g in tab.groups)


# ---------------------------------------------------------------- emotions


@dataclass(frozen=True)
class EmotionLexicon:
    entries: Mapping[str, frozenset[str]]
    vocabulary: tuple[str, ...]
    duplicates: int = field(default=0, compare=False)

    def emotions(self, lemma: str) -> frozenset[str]:
        return self.entries.get(lemma.lower(), frozenset())


def load_emotions(path: str | Path) -> EmotionLexicon:
    assoc: dict[tuple[str, str], bool] = {}
    vocab: set[str] = set()
    dups = 0
    for lineno, cols in _rows(path, 3, 3):
        word, emotion, flag = cols[0].strip().lower(), cols[1].strip().lower(), cols[2].strip()
        if flag not in ("0", "1"):
            raise LoadError(f"{path}:{lineno}: association flag must be 0 or 1, got {flag!r}")
        vocab.add(word)
        if emotion in _NRC_SENTIMENT:
            continue
        if emotion not in EMOTIONS:
            raise LoadError(f"{path}:{lineno}: unknown emotion {emotion!r}")
        if (word, emotion) in assoc:
            dups += 1
        assoc[(word, emotion)] = flag == "1"
    if dups:
        log.warning("%s: %d duplicate association rows (last one kept)", path, dups)
    entries: dict[str, set[str]] = {}
    for (word, emotion), on in assoc.items():
        if on:
            entries.setdefault(word, set()).add(emotion)
    return EmotionLexicon({k: frozenset(v) for k, v in entries.items()}, tuple(sorted(vocab)), dups)


def dump_emotions(lex: EmotionLexicon) -> str:
    lines = []
    for word in lex.vocabulary:
        for emo in EMOTIONS:
            lines.append(f"{word}\t{emo}\t{int(emo in lex.emotions(word))}\n")
    return "".join(lines)


# ---------------------------------------------------------------- norms


@dataclass(frozen=True)
class ScalarNorms:
    name: str
    entries: Mapping[str, float]
    duplicates: int = field(default=0, compare=False)

    def lookup(self, lemma: str) -> float | None:
        return self.entries.get(lemma.lower())


def load_norms(path: str | Path, name: str | None = None) -> ScalarNorms:
    entries, dups = _scored_table(path, 2)
    return ScalarNorms(name or Path(path).stem, entries, dups)


def dump_norms(norms: ScalarNorms) -> str:
    return "".join(f"{k}\t{v!r}\n" for k, v in sorted(norms.entries.items()))
