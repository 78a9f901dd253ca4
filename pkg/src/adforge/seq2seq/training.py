"""Adam optimization with global-norm clipping, and the training loop."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..errors import NoPairs, NonFinite
from . import model
from .data import TextPair, TrainingPair, tokens_of
from .vocab import Vocab


@dataclass(frozen=True)
class TrainConfig:
    d_emb: int = 64
    d_hid: int = 128
    epochs: int = 30
    lr: float = 1e-3
    beta1: float = 0.9
    beta2: float = 0.999
    eps: float = 1e-8
    clip_norm: float = 5.0
    teacher_forcing: float = 1.0
    max_len: int = 40
    min_freq: int = 2
    seed: int = 0
    loss_target: float | None = None  # stop early once mean loss dips below

    def __post_init__(self):
        if min(self.d_emb, self.d_hid, self.max_len, self.min_freq) <= 0:
            raise ValueError("model dimensions must be positive")
        if self.epochs < 0 or self.lr <= 0 or self.clip_norm <= 0:
            raise ValueError("bad optimizer settings")
        if not 0.0 <= self.teacher_forcing <= 1.0:
            raise ValueError("teacher_forcing must lie in [0, 1]")


class AdamState:
    def __init__(self, params: model.ModelParams):
        self.m = {k: np.zeros_like(v) for k, v in params.tensors.items()}
        self.v = {k: np.zeros_like(v) for k, v in params.tensors.items()}
        self.t = 0


def clip_global_norm(grads: dict[str, np.ndarray], max_norm: float) -> float:
    """Scale all gradients jointly so their global L2 norm is <= max_norm."""
    total = math.sqrt(sum(float(np.sum(g * g)) for g in grads.values()))
    if total > max_norm and total > 0.0:
        scale = max_norm / total
        for g in grads.values():
            g *= scale
        return max_norm
    return total


def adam_step(
    params: model.ModelParams,
    grads: dict[str, np.ndarray],
    state: AdamState,
    config: TrainConfig,
) -> model.ModelParams:
    """One bias-corrected Adam update, in place, after norm clipping."""
    clip_global_norm(grads, config.clip_norm)
    for g in grads.values():
        if not np.all(np.isfinite(g)):
            raise NonFinite("gradient is NaN/Inf after clipping")
    state.t += 1
    bias1 = 1.0 - config.beta1**state.t
    bias2 = 1.0 - config.beta2**state.t
    for name, g in grads.items():
        m = state.m[name]
        v = state.v[name]
        m *= config.beta1
        m += (1.0 - config.beta1) * g
        v *= config.beta2
        v += (1.0 - config.beta2) * g * g
        params.tensors[name] -= config.lr * (m / bias1) / (np.sqrt(v / bias2) + config.eps)
    return params


@dataclass
class TrainedModel:
    params: model.ModelParams
    src_vocab: Vocab
    tgt_vocab: Vocab
    loss_trace: list[float]


def index_pairs(
    pairs: list[TextPair], src_vocab: Vocab, tgt_vocab: Vocab, max_len: int
) -> list[TrainingPair]:
    return [
        TrainingPair(
            source=src_vocab.encode(tokens_of(p.source), max_len),
            target=tgt_vocab.encode(tokens_of(p.target), max_len),
            query_id=p.query_id,
        )
        for p in pairs
    ]


def train(pairs: list[TextPair], config: TrainConfig = TrainConfig()) -> TrainedModel:
    """Fit the network on normalized text pairs.

    Fully determined by (pairs, config): the seed drives initialization,
    epoch shuffling and teacher-forcing draws.
    """
    if not pairs:
        raise NoPairs("cannot train on an empty pair list")
    src_vocab = Vocab.build([tokens_of(p.source) for p in pairs], config.min_freq)
    tgt_vocab = Vocab.build([tokens_of(p.target) for p in pairs], config.min_freq)
    indexed = index_pairs(pairs, src_vocab, tgt_vocab, config.max_len)

    rng = np.random.default_rng(config.seed)
    cfg = model.ModelConfig(
        d_emb=config.d_emb,
        d_hid=config.d_hid,
        src_vocab=len(src_vocab),
        tgt_vocab=len(tgt_vocab),
    )
    params = model.init_params(cfg, rng)
    state = AdamState(params)
    trace: list[float] = []
    order = np.arange(len(indexed))
    for _ in range(config.epochs):
        rng.shuffle(order)
        losses = []
        for pair_idx in order:
            pair = indexed[pair_idx]
            forced = bool(rng.random() < config.teacher_forcing)
            log_probs, cache = model.forward(
                params, pair.source, pair.target, teacher_forcing=forced
            )
            losses.append(model.nll_loss(log_probs, pair.target))
            grads = model.backward(params, cache, pair.target)
            adam_step(params, grads, state, config)
        trace.append(float(np.mean(losses)))
        if config.loss_target is not None and trace[-1] <= config.loss_target:
            break
    return TrainedModel(
        params=params, src_vocab=src_vocab, tgt_vocab=tgt_vocab, loss_trace=trace
    )
