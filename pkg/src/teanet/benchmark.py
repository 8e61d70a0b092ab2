"""Scoring extractors against gold triples and gold voice labels."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Iterable, Mapping, Sequence

from .conllu import Corpus
from .extract import NONE, SvoRecord, sentence_is_passive
from .lexicons import LoadError

ROLES = ("agent", "event", "target")
GOLD_HEADER = ("sent_id", "agent", "event", "target", "is_passive", "passive_approx")


@dataclass(frozen=True)
class GoldTriple:
    sent_id: str
    agent: str
    event: str
    target: str
    is_passive: int = 0
    passive_approx: int = 0


def _norm(value: str | None) -> str:
    if value is None:
        return NONE
    value = value.strip().lower()
    return value or NONE


def load_gold(path: str | Path) -> list[GoldTriple]:
    """Read the gold TSV; a header row is optional, ``#`` lines are comments."""
    out, seen = [], set()
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.rstrip("\r\n")
            if not line.strip() or line.startswith("#"):
                continue
            cols = line.split("\t")
            if tuple(cols) == GOLD_HEADER:
                continue
            if len(cols) != 6:
                raise LoadError(f"{path}:{lineno}: expected 6 columns, got {len(cols)}")
            sid = cols[0].strip()
            if sid in seen:
                raise LoadError(f"{path}:{lineno}: duplicate sent_id {sid!r}")
            seen.add(sid)
            try:
                passive, approx = int(cols[4]), int(cols[5])
            except ValueError:
                raise LoadError(f"{path}:{lineno}: voice flags must be 0/1") from None
            if approx and not passive:
                raise LoadError(f"{path}:{lineno}: passive_approx=1 requires is_passive=1")
            event = _norm(cols[2])
            out.append(GoldTriple(sid, _norm(cols[1]), event, _norm(cols[3]), passive, approx))
    return out


def bundled(name: str) -> Path:
    """Path to a file shipped in the package's data directory."""
    return Path(str(resources.files("teanet") / "data" / name))


def predicted_triple(records: Sequence[SvoRecord], event_key: str = "phrase") -> tuple[str, str, str]:
    """First Agent->Event edge and first Event->Target edge of one sentence."""
    ae = next((r for r in records if r.agent != NONE), None)
    et = next((r for r in records if r.target != NONE), None)
    first = ae or et

    def ev(r):
        return r.event.phrase if event_key == "phrase" else r.event.head_lemma

    return (
        ae.agent if ae else NONE,
        _norm(ev(first)) if first else NONE,
        et.target if et else NONE,
    )


@dataclass(frozen=True)
class RoleScore:
    role: str
    correct: int
    total: int
    true_positive: int
    true_negative: int

    @property
    def accuracy(self) -> float:
        return self.correct / self.total if self.total else 0.0


@dataclass(frozen=True)
class RoleReport:
    roles: tuple[RoleScore, ...]
    mismatches: tuple[tuple[str, str, str, str], ...] = field(default=(), compare=False)

    def __getitem__(self, role: str) -> RoleScore:
        return next(r for r in self.roles if r.role == role)

    def to_dict(self) -> dict:
        return {
            "roles": [
                {
                    "role": r.role,
                    "correct": r.correct,
                    "true_negative": r.true_negative,
                    "total": r.total,
                    "accuracy": r.accuracy,
                }
                for r in self.roles
            ],
            "mismatches": [list(m) for m in self.mismatches],
        }


def evaluate_roles(predicted: Iterable[SvoRecord], gold: Sequence[GoldTriple], event_key: str = "phrase") -> RoleReport:
    """Per-role accuracy of the first predicted triple of each gold sentence.

    Slots are compared after lowercasing with empty values read as
    ``__none__``. Only a match of two non-empty values is correct; a match of
    two empty values is tallied as a true negative but still counts against
    the total.
    """
    by_sent: dict[str, list[SvoRecord]] = {}
    for r in predicted:
        by_sent.setdefault(r.sent_id, []).append(r)
    tallies = {role: [0, 0] for role in ROLES}  # tp, tn
    mismatches = []
    for g in gold:
        pred = predicted_triple(by_sent.get(g.sent_id, []), event_key)
        for role, p, want in zip(ROLES, pred, (g.agent, g.event, g.target)):
            p = _norm(p)
            if p == want:
                tallies[role][0 if want != NONE else 1] += 1
            else:
                mismatches.append((g.sent_id, role, want, p))
    n = len(gold)
    scores = tuple(RoleScore(role, tp, n, tp, tn) for role, (tp, tn) in tallies.items())
    return RoleReport(scores, tuple(mismatches))


@dataclass(frozen=True)
class ClassScore:
    label: str
    correct: int
    total: int

    @property
    def accuracy(self) -> float:
        return self.correct / self.total if self.total else 0.0


@dataclass(frozen=True)
class PassiveReport:
    passive: ClassScore
    active: ClassScore

    @property
    def macro(self) -> float:
        return (self.passive.accuracy + self.active.accuracy) / 2

    @property
    def overall(self) -> float:
        total = self.passive.total + self.active.total
        return (self.passive.correct + self.active.correct) / total if total else 0.0

    def to_dict(self) -> dict:
        return {
            "classes": [
                {"class": c.label, "correct": c.correct, "total": c.total, "accuracy": c.accuracy}
                for c in (self.passive, self.active)
            ],
            "macro_accuracy": self.macro,
            "overall_accuracy": self.overall,
        }


def sentence_voice(corpus: Corpus) -> dict[str, int]:
    """1 for every sentence with at least one passive verb candidate."""
    return {s.sent_id: int(sentence_is_passive(s)) for s in corpus.sentences()}


def evaluate_passive(predicted: Mapping[str, int], gold: Mapping[str, int]) -> PassiveReport:
    if set(predicted) != set(gold):
        missing = sorted(set(gold) ^ set(predicted))
        raise ValueError(f"predicted and gold sentence ids differ: {missing[:5]}")
    tally = {1: [0, 0], 0: [0, 0]}
    for sid, want in gold.items():
        tally[want][1] += 1
        tally[want][0] += int(predicted[sid] == want)
    return PassiveReport(ClassScore("passive", *tally[1]), ClassScore("active", *tally[0]))


def format_role_table(report: RoleReport, extractor: str) -> str:
    lines = [f"{'Extractor':<10} {'Role':<7} {'Correct':>7} {'Total':>6} {'Accuracy':>9}"]
    for r in report.roles:
        lines.append(f"{extractor:<10} {r.role.capitalize():<7} {r.correct:>7} {r.total:>6} {r.accuracy:>9.3f}")
    return "\n".join(lines) + "\n"


def format_passive_table(report: PassiveReport) -> str:
    lines = [f"{'Class':<10} {'Correct':>7} {'Total':>6} {'Accuracy':>9}"]
    for c in (report.passive, report.active):
        lines.append(f"{c.label.capitalize():<10} {c.correct:>7} {c.total:>6} {c.accuracy:>9.3f}")
    correct = report.passive.correct + report.active.correct
    total = report.passive.total + report.active.total
    lines.append(f"{'Macro Avg':<10} {'':>7} {'':>6} {report.macro:>9.3f}")
    lines.append(f"{'Overall':<10} {correct:>7} {total:>6} {report.overall:>9.3f}")
    return "\n".join(lines) + "\n"


def report_json(roles: RoleReport, passive: PassiveReport, extractor: str) -> str:
    doc = {"extractor": extractor, **roles.to_dict(), "passive": passive.to_dict()}
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"
