"""Message cleaning: delimiter split, lowercase, drop non-alphabetic tokens.

Tokens that contain any digit, punctuation, or other non-letter character are
discarded entirely (they usually carry run-specific parameters, not meaning).
Underscore is deliberately NOT a delimiter, so identifiers like
"blk_-4980916519894289629" survive splitting as one token and then die as a
single non-alphabetic token.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

_DELIMITERS = re.compile(r"[\s:,.;()\[\]{}=\"']+")
_ALPHA = re.compile(r"[a-z]+\Z")

# The default filter list for high-frequency function words that carry no
# event semantics. Configurable; disable with stopwords=None at the API level
# or --keep-stopwords on the CLI.
DEFAULT_STOPWORDS = frozenset(
    "for to the a an of on in at is are was were by with from".split()
)


@dataclass(frozen=True)
class MessageTokens:
    """Cleaned lowercase word tokens of one message, in appearance order."""

    tokens: tuple[str, ...]
    source_line_no: int = -1


def preprocess_message(content: str, stopwords=DEFAULT_STOPWORDS, source_line_no: int = -1) -> MessageTokens:
    """Split on the delimiter set, lowercase, keep purely alphabetic tokens.

    Duplicates and order are preserved. An empty result is valid.
    """
    kept = []
    for piece in _DELIMITERS.split(content):
        if not piece:
            continue
        lowered = piece.lower()
        if not _ALPHA.match(lowered):
            continue
        if stopwords and lowered in stopwords:
            continue
        kept.append(lowered)
    return MessageTokens(tokens=tuple(kept), source_line_no=source_line_no)


def load_stopwords(path) -> frozenset[str]:
    """One stopword per line; blank lines ignored."""
    with open(path, encoding="utf-8") as fh:
        return frozenset(word.strip().lower() for word in fh if word.strip())
