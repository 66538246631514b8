"""CoNLL-U ingestion.

Annotations are produced externally (tokenization, lemmas, UPOS, dependency
heads, morphology, NER in MISC as ``NER=B-PER``); this parser only validates
and structures them. Multiword-token ranges (ids like ``1-2``) and empty
nodes (ids like ``1.1``) are skipped in favor of their word lines.
"""

from __future__ import annotations

import io
from dataclasses import dataclass, field
from pathlib import Path

from ..errors import ConlluSyntaxError, CycleError, MultiRootError

_RANGE_SEP = "-"
_EMPTY_SEP = "."


@dataclass
class AnnotatedToken:
    index: int                      # 1-based within the sentence
    form: str
    lemma: str
    upos: str
    head: int                       # 0 = root
    deprel: str
    morph: dict = field(default_factory=dict)
    ner: str | None = None


@dataclass
class AnnotatedDocument:
    doc_id: str
    lang: str
    sentences: list = field(default_factory=list)

    @property
    def tokens(self):
        for sentence in self.sentences:
            yield from sentence


def _parse_kv(column: str) -> dict:
    out = {}
    if column == "_" or not column:
        return out
    for item in column.split("|"):
        if "=" in item:
            key, value = item.split("=", 1)
            out[key] = value
    return out


def _validate_sentence(tokens: list[AnnotatedToken], line_nos: list[int]) -> None:
    n = len(tokens)
    for token, line_no in zip(tokens, line_nos):
        if token.head < 0 or token.head > n:
            raise ConlluSyntaxError(line_no, f"head {token.head} out of range 1..{n}")
        if token.head == token.index:
            raise CycleError(
                f"line {line_no}: token {token.index} is its own head")
    roots = [t for t in tokens if t.head == 0]
    if len(roots) != 1:
        raise MultiRootError(
            f"sentence ending at line {line_nos[-1]} has {len(roots)} roots")
    # every head chain must reach the root without revisiting a token
    for token, line_no in zip(tokens, line_nos):
        seen = set()
        current = token.index
        while current != 0:
            if current in seen:
                raise CycleError(
                    f"line {line_no}: head chain from token {token.index} cycles")
            seen.add(current)
            current = tokens[current - 1].head


def parse_conllu(source, default_lang: str = "en",
                 default_doc_id: str = "doc") -> list[AnnotatedDocument]:
    """Parse CoNLL-U text, a path, or a text stream into documents.

    ``# newdoc id = X`` starts a new document, ``# lang = xx`` sets its
    language (falling back to ``default_lang``); a file without newdoc
    markers becomes a single document.
    """
    if hasattr(source, "read"):
        text = source.read()
    else:
        candidate = Path(str(source))
        if "\n" not in str(source) and candidate.is_file():
            text = candidate.read_text(encoding="utf-8")
        else:
            text = str(source)

    documents: list[AnnotatedDocument] = []
    current_doc: AnnotatedDocument | None = None
    tokens: list[AnnotatedToken] = []
    line_nos: list[int] = []
    pending_lang: str | None = None

    def ensure_doc() -> AnnotatedDocument:
        nonlocal current_doc
        if current_doc is None:
            current_doc = AnnotatedDocument(
                doc_id=default_doc_id, lang=pending_lang or default_lang)
            documents.append(current_doc)
        return current_doc

    def flush_sentence():
        nonlocal tokens, line_nos
        if tokens:
            _validate_sentence(tokens, line_nos)
            ensure_doc().sentences.append(tokens)
        tokens = []
        line_nos = []

    for line_no, raw in enumerate(io.StringIO(text), start=1):
        line = raw.rstrip("\n")
        if not line.strip():
            flush_sentence()
            continue
        if line.startswith("#"):
            comment = line[1:].strip()
            if comment.startswith("newdoc"):
                flush_sentence()
                doc_id = default_doc_id
                if "=" in comment:
                    doc_id = comment.split("=", 1)[1].strip() or default_doc_id
                current_doc = AnnotatedDocument(
                    doc_id=doc_id, lang=pending_lang or default_lang)
                documents.append(current_doc)
            elif comment.startswith("lang"):
                lang = comment.split("=", 1)[1].strip() if "=" in comment else ""
                if current_doc is not None:
                    current_doc.lang = lang or current_doc.lang
                else:
                    pending_lang = lang or None
            continue
        cols = line.split("\t")
        if len(cols) != 10:
            raise ConlluSyntaxError(line_no, f"expected 10 columns, got {len(cols)}")
        token_id = cols[0]
        if _RANGE_SEP in token_id or _EMPTY_SEP in token_id:
            continue  # surface range or empty node; the word lines carry the data
        try:
            index = int(token_id)
        except ValueError:
            raise ConlluSyntaxError(line_no, f"invalid token id {token_id!r}")
        if index != len(tokens) + 1:
            raise ConlluSyntaxError(
                line_no, f"token id {index} out of sequence (expected {len(tokens) + 1})")
        if cols[6] == "_":
            raise ConlluSyntaxError(line_no, "missing head")
        try:
            head = int(cols[6])
        except ValueError:
            raise ConlluSyntaxError(line_no, f"invalid head {cols[6]!r}")
        misc = _parse_kv(cols[9])
        tokens.append(AnnotatedToken(
            index=index,
            form=cols[1],
            lemma=cols[2] if cols[2] != "_" else cols[1],
            upos=cols[3],
            head=head,
            deprel=cols[7],
            morph=_parse_kv(cols[5]),
            ner=misc.get("NER"),
        ))
        line_nos.append(line_no)
    flush_sentence()
    return [doc for doc in documents if doc.sentences]
