"""Exception types shared across the toolkit.

Everything derives from CltsEvalError so callers can catch broadly; the CLI
maps subfamilies onto exit codes (config=1, data=2, backend=3).
"""


class CltsEvalError(Exception):
    """Base class for all toolkit errors."""


class ConfigError(CltsEvalError):
    """Invalid or missing run configuration."""


# --- corpus ---------------------------------------------------------------

class CorpusIoError(CltsEvalError):
    """Corpus file missing or unreadable."""


class FormatError(CltsEvalError):
    """A row failed validation. Carries the 1-based row number."""

    def __init__(self, row: int, reason: str):
        super().__init__(f"row {row}: {reason}")
        self.row = row
        self.reason = reason


class EmptyCorpus(CltsEvalError):
    """No valid pairs were loaded."""


class ScaleViolation(FormatError):
    """A rating value fell outside its scale."""


# --- remote services -------------------------------------------------------

class BackendError(CltsEvalError):
    """Generation backend failed after exhausting retries."""


class EmptyResponse(BackendError):
    """Backend returned whitespace only."""


class TranslationBackendError(CltsEvalError):
    """Translation service failed after exhausting retries."""


class EmbeddingBackendError(CltsEvalError):
    """Embedding service failed or returned a malformed payload."""


class DimensionMismatch(CltsEvalError):
    """Vectors of unequal length where a shared dimension is required."""


class DegenerateVector(CltsEvalError):
    """Zero-norm vector: cosine similarity is undefined, not zero."""


# --- prompting --------------------------------------------------------------

class UnsupportedLanguage(CltsEvalError):
    """Language code outside the supported set."""


class EmptySource(CltsEvalError):
    """Prompt construction requires a non-empty source text."""


# --- metrics ----------------------------------------------------------------

class LengthMismatch(CltsEvalError):
    """Aligned sequences have different lengths."""


class EmptyReference(CltsEvalError):
    """A reference set is empty."""


class EmptySequence(CltsEvalError):
    """An operand sequence is empty where content is required."""


class MissingPair(CltsEvalError):
    """A system output references an unknown pair id."""


# --- features ---------------------------------------------------------------

class ConlluSyntaxError(CltsEvalError):
    """Malformed CoNLL-U input. Carries the 1-based line number."""

    def __init__(self, line: int, reason: str):
        super().__init__(f"line {line}: {reason}")
        self.line = line
        self.reason = reason


class CycleError(CltsEvalError):
    """A dependency head chain never reaches the root."""


class MultiRootError(CltsEvalError):
    """A sentence has zero or several root tokens."""


class MissingPatternFile(CltsEvalError):
    """Hyphenation pattern file not found for the requested language."""


class MissingResource(CltsEvalError):
    """A required language resource (frequency list, patterns) is absent."""


class EmptyDocument(CltsEvalError):
    """An operation requires a document with at least one word."""


# --- stats ------------------------------------------------------------------

class InsufficientData(CltsEvalError):
    """A statistical test needs more observations."""


class OutOfRangeCategory(CltsEvalError):
    """A rating outside the declared category scale."""


class SingleCategoryDegenerate(CltsEvalError):
    """Kappa is undefined: one category only and the raters disagree."""


class InsufficientRatings(CltsEvalError):
    """An item lacks the two ratings the simulation requires."""

    def __init__(self, item_id: str):
        super().__init__(f"item {item_id!r} has fewer than 2 ratings")
        self.item_id = item_id


# --- pipeline ---------------------------------------------------------------

class MissingArtifact(CltsEvalError):
    """A pipeline stage's artifact is absent. Carries the stage name."""

    def __init__(self, stage: str):
        super().__init__(f"missing artifact for stage {stage!r}")
        self.stage = stage
