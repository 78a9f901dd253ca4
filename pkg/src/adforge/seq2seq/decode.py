"""Greedy decoding: the single candidate the pipeline consumes."""

from __future__ import annotations

import numpy as np

from .. import textproc
from . import model
from .data import tokens_of
from .vocab import EOS, SOS, Vocab


def translate(
    params: model.ModelParams,
    src_vocab: Vocab,
    tgt_vocab: Vocab,
    normalized_text: str,
    max_len: int = 40,
) -> str:
    """Decode the argmax continuation of ``normalized_text``.

    Unknown source tokens map to <unk>; decoding stops at <eos> or after
    ``max_len`` tokens. Output never contains control tokens.
    """
    params.validate()
    cfg = params.config
    P = params.tensors
    source = src_vocab.encode(tokens_of(normalized_text), max_len=max(2, max_len))

    h = [np.zeros(cfg.d_hid) for _ in range(model.N_LAYERS)]
    c = [np.zeros(cfg.d_hid) for _ in range(model.N_LAYERS)]
    for idx in source:
        x = P["src_embed"][idx]
        for layer in range(model.N_LAYERS):
            h[layer], c[layer], _ = model._lstm_step(
                P[f"enc_W{layer}"], P[f"enc_U{layer}"], P[f"enc_b{layer}"], x, h[layer], c[layer]
            )
            x = h[layer]

    out: list[int] = []
    token = SOS
    for _ in range(max_len):
        x = P["tgt_embed"][token]
        for layer in range(model.N_LAYERS):
            h[layer], c[layer], _ = model._lstm_step(
                P[f"dec_W{layer}"], P[f"dec_U{layer}"], P[f"dec_b{layer}"], x, h[layer], c[layer]
            )
            x = h[layer]
        logits = P["out_W"] @ x + P["out_b"]
        token = int(np.argmax(logits))
        if token == EOS:
            break
        out.append(token)
    return textproc.detokenize(tgt_vocab.decode(out))
