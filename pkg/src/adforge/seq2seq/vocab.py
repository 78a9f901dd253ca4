"""Token vocabularies with the four reserved control tokens."""

from __future__ import annotations

from collections import Counter

PAD, SOS, EOS, UNK = 0, 1, 2, 3
RESERVED = ["<pad>", "<sos>", "<eos>", "<unk>"]


class Vocab:
    def __init__(self, tokens: list[str], min_freq: int = 1):
        """``tokens`` are the non-reserved entries in index order."""
        self.min_freq = min_freq
        self.itos = RESERVED + list(tokens)
        self.stoi = {tok: i for i, tok in enumerate(self.itos)}
        if len(self.stoi) != len(self.itos):
            raise ValueError("duplicate tokens in vocabulary")

    def __len__(self) -> int:
        return len(self.itos)

    @classmethod
    def build(cls, sequences: list[list[str]], min_freq: int = 1) -> "Vocab":
        """Count tokens over ``sequences`` and keep those seen >= min_freq
        times, ordered by descending count then token for determinism."""
        counts = Counter(tok for seq in sequences for tok in seq)
        kept = sorted(
            (tok for tok, n in counts.items() if n >= min_freq and tok not in RESERVED),
            key=lambda tok: (-counts[tok], tok),
        )
        return cls(kept, min_freq=min_freq)

    def encode(self, tokens: list[str], max_len: int) -> list[int]:
        """Wrap in <sos>/<eos>, mapping unknown tokens to <unk>."""
        body = [self.stoi.get(tok, UNK) for tok in tokens[: max_len - 2]]
        return [SOS] + body + [EOS]

    def decode(self, indices: list[int]) -> list[str]:
        """Tokens for ``indices``, dropping control tokens."""
        return [self.itos[i] for i in indices if i not in (PAD, SOS, EOS)]

    def to_json(self) -> dict:
        return {"tokens": self.itos[len(RESERVED):], "min_freq": self.min_freq}

    @classmethod
    def from_json(cls, data: dict) -> "Vocab":
        return cls(data["tokens"], min_freq=data.get("min_freq", 1))
