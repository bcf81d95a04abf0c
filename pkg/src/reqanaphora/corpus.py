"""Requirement documents in, CSV reports out."""

from __future__ import annotations

import csv
import io
import re
from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Iterable

from .errors import DuplicateId, EmptySpecification

if TYPE_CHECKING:
    from .nlpcore.analyzer import TokenAnnotations

DEFAULT_ID_PATTERN = r"^([A-Za-z][A-Za-z0-9_.-]*)\s*[:.]\s+"

REPORT_HEADER = (
    "doc_id",
    "req_id",
    "pronoun",
    "pronoun_token_index",
    "context_req_ids",
    "detection_label",
    "detection_confidence",
    "resolved_antecedent",
    "resolution_probability",
    "resolution_flag",
)

DETECTION_LABELS = ("ambiguous", "unambiguous")
RESOLUTION_FLAGS = ("accepted", "low_confidence", "none")


@dataclass(frozen=True)
class Requirement:
    id: str
    ordinal: int
    text: str
    annotations: TokenAnnotations | None = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class Document:
    doc_id: str
    requirements: tuple[Requirement, ...]

    def __len__(self) -> int:
        return len(self.requirements)

    def __getitem__(self, ordinal: int) -> Requirement:
        return self.requirements[ordinal]

    def by_id(self, req_id: str) -> Requirement:
        for req in self.requirements:
            if req.id == req_id:
                return req
        raise KeyError(req_id)


@dataclass(frozen=True)
class ReportRow:
    doc_id: str
    req_id: str
    pronoun: str
    pronoun_token_index: int
    context_req_ids: tuple[str, ...]
    detection_label: str
    detection_confidence: float
    resolved_antecedent: str
    resolution_probability: float
    resolution_flag: str

    @property
    def key(self) -> tuple[str, str, int]:
        return (self.doc_id, self.req_id, self.pronoun_token_index)


def parse_spec(raw_text: str, doc_id: str, id_pattern: str | None = DEFAULT_ID_PATTERN) -> Document:
    """Split a plain-text specification into requirements, one per non-blank line.

    A leading id such as ``R1:`` or ``REQ-7.`` is taken as the requirement id
    and stripped from the text; lines without one are numbered ``R<n>`` by
    position.
    """
    id_re = re.compile(id_pattern) if id_pattern else None
    lines = [ln.strip() for ln in raw_text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise EmptySpecification(f"document {doc_id!r} contains no requirements")

    reqs: list[Requirement] = []
    seen: set[str] = set()
    for ordinal, line in enumerate(lines):
        req_id, text = None, line
        if id_re is not None:
            m = id_re.match(line)
            if m and line[m.end():].strip():
                req_id, text = m.group(1), line[m.end():].strip()
        if req_id is None:
            req_id = f"R{ordinal + 1}"
        if req_id in seen:
            raise DuplicateId(req_id)
        seen.add(req_id)
        reqs.append(Requirement(id=req_id, ordinal=ordinal, text=text))
    return Document(doc_id=doc_id, requirements=tuple(reqs))


def _fmt_prob(x: float) -> str:
    return f"{x:.4f}"


def write_report(rows: Iterable[ReportRow]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(REPORT_HEADER)
    for r in rows:
        writer.writerow(
            [
                r.doc_id,
                r.req_id,
                r.pronoun,
                r.pronoun_token_index,
                ";".join(r.context_req_ids),
                r.detection_label,
                _fmt_prob(r.detection_confidence),
                r.resolved_antecedent,
                _fmt_prob(r.resolution_probability),
                r.resolution_flag,
            ]
        )
    return buf.getvalue()


def read_report(csv_text: str) -> list[ReportRow]:
    reader = csv.DictReader(io.StringIO(csv_text))
    if tuple(reader.fieldnames or ()) != REPORT_HEADER:
        raise ValueError(f"unexpected report header: {reader.fieldnames}")
    rows = []
    for rec in reader:
        ctx = rec["context_req_ids"]
        rows.append(
            ReportRow(
                doc_id=rec["doc_id"],
                req_id=rec["req_id"],
                pronoun=rec["pronoun"],
                pronoun_token_index=int(rec["pronoun_token_index"]),
                context_req_ids=tuple(ctx.split(";")) if ctx else (),
                detection_label=rec["detection_label"],
                detection_confidence=float(rec["detection_confidence"]),
                resolved_antecedent=rec["resolved_antecedent"],
                resolution_probability=float(rec["resolution_probability"]),
                resolution_flag=rec["resolution_flag"],
            )
        )
    return rows
