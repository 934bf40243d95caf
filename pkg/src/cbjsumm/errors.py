"""Exception types raised across the package.

Every error carries a human-readable message naming the offending file,
case, line, or matrix location where one exists.
"""


class CbjsummError(Exception):
    """Base class for all cbjsumm errors."""


# --- dataset loading -----------------------------------------------------

class MissingJudgment(CbjsummError):
    """A case directory has no judgment.txt."""


class MissingReference(CbjsummError):
    """A case directory has no reference summary under references/."""


class DecodeError(CbjsummError):
    """A dataset file is not valid UTF-8."""


class EmptyDataset(CbjsummError):
    """Statistics requested over zero dataset entries."""


# --- citance extraction --------------------------------------------------

class NoMatch(CbjsummError):
    """No paragraph of a citing judgment matches any target pattern."""


class NoCitations(CbjsummError):
    """The citance corpus is empty; the target cannot be summarized."""


# --- embeddings ----------------------------------------------------------

class BackendUnavailable(CbjsummError):
    """The embedding service could not be reached or kept failing."""


class MissingEmbedding(CbjsummError):
    """A file-backed store has no vector for the requested text."""


class DimensionMismatch(CbjsummError):
    """Embedding vectors of inconsistent dimensionality were mixed."""


class ParseError(CbjsummError):
    """An embedding file (or citance cache) line could not be parsed."""


# --- similarity ----------------------------------------------------------

class ZeroVector(CbjsummError):
    """A vector with (near-)zero norm reached cosine similarity."""


# --- summary assembly ----------------------------------------------------

class EmptyRanking(CbjsummError):
    """Summary assembly received a ranking with no candidates."""


class InvalidRatio(CbjsummError):
    """A budget ratio outside (0, 1] was supplied."""


# --- evaluation ----------------------------------------------------------

class EmptyText(CbjsummError):
    """A text to be embedded tokenizes to zero sentences."""


class EmptyInput(CbjsummError):
    """Macro aggregation received zero cases."""
