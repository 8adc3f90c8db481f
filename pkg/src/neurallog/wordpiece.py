"""Subword vocabulary training and greedy subword encoding.

Training starts from a base vocabulary of every observed character (both as a
word-initial piece and as a continuation piece) plus the unknown token, then
repeatedly merges the adjacent piece pair (a, b) that maximizes

    count(ab) / (count(a) * count(b))

over the current segmentation of the corpus. Merging stops at the target
vocabulary size or when no adjacent pair occurs at least twice. Unseen words
decompose into known pieces at encode time; a word with no valid decomposition
encodes to the unknown token as a whole.
"""

from __future__ import annotations

from collections import Counter

from .core import DataError

DEFAULT_MARKER = "##"
DEFAULT_UNK = "[UNK]"
DEFAULT_MAX_WORD_LEN = 100


class SubwordVocab:
    """Ordered subword vocabulary. Piece index = position in `pieces` (and
    line number in the serialized file); the unknown token is always first.
    """

    def __init__(self, pieces, marker: str = DEFAULT_MARKER, unk: str = DEFAULT_UNK,
                 max_word_len: int = DEFAULT_MAX_WORD_LEN):
        pieces = list(pieces)
        if not pieces or pieces[0] != unk:
            pieces = [unk] + [p for p in pieces if p != unk]
        if any(not p for p in pieces):
            raise ValueError("empty vocabulary entry")
        self.pieces: tuple[str, ...] = tuple(pieces)
        self.marker = marker
        self.unk = unk
        self.max_word_len = max_word_len
        self._index = {piece: i for i, piece in enumerate(self.pieces)}
        if len(self._index) != len(self.pieces):
            raise ValueError("duplicate vocabulary entry")
        # longest piece bounds the greedy scan at each position
        self._max_piece_chars = max(len(p) - (len(marker) if p.startswith(marker) else 0)
                                    for p in self.pieces)

    def __len__(self) -> int:
        return len(self.pieces)

    def __contains__(self, piece: str) -> bool:
        return piece in self._index

    def index_of(self, piece: str) -> int:
        return self._index[piece]

    @property
    def entries(self) -> frozenset[str]:
        return frozenset(self.pieces)


def _segment_chars(word: str, marker: str) -> list[str]:
    return [word[0]] + [marker + ch for ch in word[1:]]


def train_vocab(corpus, target_size: int, marker: str = DEFAULT_MARKER, unk: str = DEFAULT_UNK,
                max_word_len: int = DEFAULT_MAX_WORD_LEN) -> SubwordVocab:
    """Train a subword vocabulary of at most target_size pieces.

    corpus is an iterable of MessageTokens (or plain token lists).
    """
    word_freq: Counter[str] = Counter()
    for message in corpus:
        tokens = getattr(message, "tokens", message)
        word_freq.update(tokens)
    if not word_freq:
        raise DataError("empty training corpus")

    alphabet = sorted({ch for word in word_freq for ch in word})
    base = alphabet + [marker + ch for ch in alphabet]
    if target_size < len(base) + 1:
        raise ValueError(
            f"target_size {target_size} below base vocabulary size {len(base) + 1}"
        )

    pieces = [unk] + base
    segmentations = {word: _segment_chars(word, marker) for word in word_freq}

    while len(pieces) < target_size:
        piece_count: Counter[str] = Counter()
        pair_count: Counter[tuple[str, str]] = Counter()
        for word, segments in segmentations.items():
            freq = word_freq[word]
            for piece in segments:
                piece_count[piece] += freq
            for a, b in zip(segments, segments[1:]):
                pair_count[(a, b)] += freq

        candidates = [pair for pair, n in pair_count.items() if n >= 2]
        if not candidates:
            break

        def merged(pair: tuple[str, str]) -> str:
            a, b = pair
            return a + b[len(marker):]

        best_pair = None
        best_score = -1.0
        # iterate in merged-string order so ties resolve to the smallest string
        for pair in sorted(candidates, key=merged):
            score = pair_count[pair] / (piece_count[pair[0]] * piece_count[pair[1]])
            if score > best_score:
                best_pair, best_score = pair, score

        new_piece = merged(best_pair)
        pieces.append(new_piece)
        a, b = best_pair
        for word, segments in segmentations.items():
            out = []
            i = 0
            while i < len(segments):
                if i + 1 < len(segments) and segments[i] == a and segments[i + 1] == b:
                    out.append(new_piece)
                    i += 2
                else:
                    out.append(segments[i])
                    i += 1
            segmentations[word] = out

    return SubwordVocab(pieces, marker=marker, unk=unk, max_word_len=max_word_len)


def encode_token(word: str, vocab: SubwordVocab) -> list[str]:
    """Greedy longest-match-first, left to right.

    Pieces after the first carry the continuation marker. If no piece matches
    at any position, or the word exceeds max_word_len, the whole word encodes
    to the unknown token.
    """
    if not word:
        raise ValueError("cannot encode an empty word")
    if len(word) > vocab.max_word_len:
        return [vocab.unk]
    pieces = []
    pos = 0
    n = len(word)
    while pos < n:
        prefix = "" if pos == 0 else vocab.marker
        end = min(n, pos + vocab._max_piece_chars)
        match = None
        while end > pos:
            candidate = prefix + word[pos:end]
            if candidate in vocab:
                match = candidate
                break
            end -= 1
        if match is None:
            return [vocab.unk]
        pieces.append(match)
        pos = end
    return pieces


def encode_message(tokens, vocab: SubwordVocab) -> list[str]:
    """Concatenated encode_token output for each preprocessed token, in order."""
    token_list = getattr(tokens, "tokens", tokens)
    out = []
    for word in token_list:
        out.extend(encode_token(word, vocab))
    return out


def save_vocab(vocab: SubwordVocab, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for piece in vocab.pieces:
            fh.write(piece + "\n")


def load_vocab(path, marker: str = DEFAULT_MARKER,
               max_word_len: int = DEFAULT_MAX_WORD_LEN) -> SubwordVocab:
    """Plain text, one piece per line; the first line is the unknown token."""
    with open(path, encoding="utf-8") as fh:
        pieces = [line.rstrip("\n") for line in fh if line.rstrip("\n")]
    if not pieces:
        raise DataError(f"empty vocabulary file: {path}")
    return SubwordVocab(pieces, marker=marker, unk=pieces[0], max_word_len=max_word_len)
