import json

import pytest

from cltseval.corpus import SentencePair


@pytest.fixture
def pair_en_fr():
    return SentencePair(
        id="p1",
        source="A few animals change color with the seasons.",
        references=["Certains animaux changent de couleur selon les saisons."],
        source_lang="en",
        target_lang="fr",
        corpus_id="demo",
    )


@pytest.fixture
def make_pairs():
    def factory(n, source_lang="en", target_lang="fr", corpus_id="demo"):
        return [
            SentencePair(
                id=f"p{i}",
                source=f"Complex sentence number {i} about animals.",
                references=[f"Simple sentence {i}."],
                source_lang=source_lang,
                target_lang=target_lang,
                corpus_id=corpus_id,
            )
            for i in range(n)
        ]
    return factory


class ScriptedEmbedder:
    """Returns preset vectors per text, in call order for unknown texts."""

    def __init__(self, mapping):
        self.mapping = mapping

    def embed(self, texts):
        return [list(self.mapping[t]) for t in texts]


class UppercaseTranslator:
    def translate(self, texts, source_lang, target_lang):
        return [t.upper() for t in texts]


class CountingBackend:
    """Deterministic echo backend that counts calls; can fail the first
    `fail_first` calls."""

    def __init__(self, model_id="counting", fail_first=0, response=None):
        self.model_id = model_id
        self.calls = 0
        self.fail_first = fail_first
        self.response = response

    def complete(self, system_prompt, user_prompt, temperature, top_p):
        self.calls += 1
        if self.calls <= self.fail_first:
            raise RuntimeError(f"scripted failure {self.calls}")
        return self.response if self.response is not None else user_prompt


@pytest.fixture
def write_jsonl(tmp_path):
    def writer(name, rows):
        path = tmp_path / name
        with path.open("w", encoding="utf-8") as fh:
            for row in rows:
                fh.write(json.dumps(row, ensure_ascii=False) + "\n")
        return path
    return writer


def fabricate_annotations(run_dir, conllu_dir, lang_by_corpus):
    """Deterministic stand-in for an external annotation toolkit.

    Turns every generated hypothesis into a single-sentence dependency chain
    (first token is the root verb) so the feature stage has valid CoNLL-U to
    consume. Purely a test fixture; the package never annotates text itself.
    """
    from pathlib import Path

    run_dir = Path(run_dir)
    conllu_dir = Path(conllu_dir)
    conllu_dir.mkdir(parents=True, exist_ok=True)
    by_corpus = {}
    for path in sorted((run_dir / "outputs").glob("*.jsonl")):
        if path.name == "errors.jsonl":
            continue
        corpus, model, strategy = path.stem.split("__")
        for line in path.read_text(encoding="utf-8").splitlines():
            if not line.strip():
                continue
            row = json.loads(line)
            doc_id = f"{corpus}/{model}/{strategy}/{row['pair_id']}"
            forms = row["hypothesis"].split() or ["empty"]
            by_corpus.setdefault(corpus, []).append((doc_id, forms))
    for corpus, docs in sorted(by_corpus.items()):
        lines = []
        for doc_id, forms in sorted(docs):
            lines.append(f"# newdoc id = {doc_id}")
            lines.append(f"# lang = {lang_by_corpus[corpus]}")
            for i, form in enumerate(forms, start=1):
                upos = "VERB" if i == 1 else "NOUN"
                head = i - 1
                deprel = "root" if head == 0 else "dep"
                lines.append(f"{i}\t{form}\t{form.lower()}\t{upos}\t_\t_"
                             f"\t{head}\t{deprel}\t_\t_")
            lines.append("")
        (conllu_dir / f"{corpus}.conllu").write_text(
            "\n".join(lines) + "\n", encoding="utf-8")
