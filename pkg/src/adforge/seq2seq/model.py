"""Encoder-decoder network: embeddings, two LSTM layers per side, and a
vocabulary projection, with hand-derived backpropagation.

Everything runs in float64 on single sequences; the final hidden and cell
states of both encoder layers seed the decoder.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import EmptyTarget, ShapeMismatch
from .vocab import PAD

N_LAYERS = 2
GATES = 4  # input, forget, cell, output — stacked in that order


@dataclass(frozen=True)
class ModelConfig:
    d_emb: int
    d_hid: int
    src_vocab: int
    tgt_vocab: int


def tensor_shapes(cfg: ModelConfig) -> list[tuple[str, tuple[int, ...]]]:
    """Declared tensor order; also the checkpoint serialization order."""
    shapes: list[tuple[str, tuple[int, ...]]] = [
        ("src_embed", (cfg.src_vocab, cfg.d_emb)),
        ("tgt_embed", (cfg.tgt_vocab, cfg.d_emb)),
    ]
    for side in ("enc", "dec"):
        for layer in range(N_LAYERS):
            d_in = cfg.d_emb if layer == 0 else cfg.d_hid
            shapes.append((f"{side}_W{layer}", (GATES * cfg.d_hid, d_in)))
            shapes.append((f"{side}_U{layer}", (GATES * cfg.d_hid, cfg.d_hid)))
            shapes.append((f"{side}_b{layer}", (GATES * cfg.d_hid,)))
    shapes.append(("out_W", (cfg.tgt_vocab, cfg.d_hid)))
    shapes.append(("out_b", (cfg.tgt_vocab,)))
    return shapes


@dataclass
class ModelParams:
    config: ModelConfig
    tensors: dict[str, np.ndarray]

    def __getitem__(self, name: str) -> np.ndarray:
        return self.tensors[name]

    def validate(self) -> None:
        expected = dict(tensor_shapes(self.config))
        if set(expected) != set(self.tensors):
            raise ShapeMismatch("parameter tensor set does not match config")
        for name, shape in expected.items():
            if self.tensors[name].shape != shape:
                raise ShapeMismatch(
                    f"{name}: expected {shape}, got {self.tensors[name].shape}"
                )
        for name, tensor in self.tensors.items():
            if not np.all(np.isfinite(tensor)):
                raise ShapeMismatch(f"{name} contains non-finite values")

    def copy(self) -> "ModelParams":
        return ModelParams(self.config, {k: v.copy() for k, v in self.tensors.items()})


def init_params(cfg: ModelConfig, rng: np.random.Generator, scale: float = 0.08) -> ModelParams:
    tensors = {
        name: rng.uniform(-scale, scale, size=shape)
        for name, shape in tensor_shapes(cfg)
    }
    return ModelParams(config=cfg, tensors=tensors)


def zero_grads(params: ModelParams) -> dict[str, np.ndarray]:
    return {name: np.zeros_like(t) for name, t in params.tensors.items()}


def _sigmoid(x: np.ndarray) -> np.ndarray:
    out = np.empty_like(x)
    pos = x >= 0
    out[pos] = 1.0 / (1.0 + np.exp(-x[pos]))
    ex = np.exp(x[~pos])
    out[~pos] = ex / (1.0 + ex)
    return out


def _lstm_step(W, U, b, x, h, c):
    d_hid = h.shape[0]
    z = W @ x + U @ h + b
    i = _sigmoid(z[:d_hid])
    f = _sigmoid(z[d_hid : 2 * d_hid])
    g = np.tanh(z[2 * d_hid : 3 * d_hid])
    o = _sigmoid(z[3 * d_hid :])
    c_new = f * c + i * g
    tc = np.tanh(c_new)
    h_new = o * tc
    return h_new, c_new, (x, h, c, i, f, g, o, tc)


def _lstm_step_backward(W, U, cache, dh, dc):
    x, h_prev, c_prev, i, f, g, o, tc = cache
    do = dh * tc
    dc_total = dc + dh * o * (1.0 - tc * tc)
    di = dc_total * g
    df = dc_total * c_prev
    dg = dc_total * i
    dc_prev = dc_total * f
    dz = np.concatenate(
        [di * i * (1.0 - i), df * f * (1.0 - f), dg * (1.0 - g * g), do * o * (1.0 - o)]
    )
    dW = np.outer(dz, x)
    dU = np.outer(dz, h_prev)
    dx = W.T @ dz
    dh_prev = U.T @ dz
    return dx, dh_prev, dc_prev, dW, dU, dz


def _log_softmax(logits: np.ndarray) -> np.ndarray:
    shifted = logits - logits.max()
    return shifted - np.log(np.exp(shifted).sum())


@dataclass
class ForwardCache:
    source: list[int]
    dec_inputs: list[int]
    enc_caches: list[list[tuple]]
    dec_caches: list[list[tuple]]
    dec_hidden: np.ndarray  # (T, d_hid) top-layer decoder states
    log_probs: np.ndarray  # (T, tgt_vocab)


def forward(
    params: ModelParams,
    source: list[int],
    target: list[int],
    teacher_forcing: bool = True,
) -> tuple[np.ndarray, ForwardCache]:
    """Run the network over one pair.

    Returns per-step log-softmax rows predicting target positions 1..n,
    plus the activation cache for :func:`backward`.
    """
    params.validate()
    cfg = params.config
    if max(source, default=0) >= cfg.src_vocab or max(target, default=0) >= cfg.tgt_vocab:
        raise ShapeMismatch("token index outside vocabulary")
    if len(target) < 2:
        raise EmptyTarget("target must hold <sos> plus at least one token")
    P = params.tensors

    h = [np.zeros(cfg.d_hid) for _ in range(N_LAYERS)]
    c = [np.zeros(cfg.d_hid) for _ in range(N_LAYERS)]
    enc_caches: list[list[tuple]] = []
    for idx in source:
        x = P["src_embed"][idx]
        step = []
        for layer in range(N_LAYERS):
            h[layer], c[layer], cache = _lstm_step(
                P[f"enc_W{layer}"], P[f"enc_U{layer}"], P[f"enc_b{layer}"], x, h[layer], c[layer]
            )
            step.append(cache)
            x = h[layer]
        enc_caches.append(step)

    n_steps = len(target) - 1
    dec_caches: list[list[tuple]] = []
    dec_inputs: list[int] = []
    dec_hidden = np.empty((n_steps, cfg.d_hid))
    log_probs = np.empty((n_steps, cfg.tgt_vocab))
    token = target[0]
    for t in range(n_steps):
        dec_inputs.append(token)
        x = P["tgt_embed"][token]
        step = []
        for layer in range(N_LAYERS):
            h[layer], c[layer], cache = _lstm_step(
                P[f"dec_W{layer}"], P[f"dec_U{layer}"], P[f"dec_b{layer}"], x, h[layer], c[layer]
            )
            step.append(cache)
            x = h[layer]
        dec_caches.append(step)
        dec_hidden[t] = x
        log_probs[t] = _log_softmax(P["out_W"] @ x + P["out_b"])
        token = target[t + 1] if teacher_forcing else int(np.argmax(log_probs[t]))

    cache = ForwardCache(
        source=list(source),
        dec_inputs=dec_inputs,
        enc_caches=enc_caches,
        dec_caches=dec_caches,
        dec_hidden=dec_hidden,
        log_probs=log_probs,
    )
    return log_probs, cache


def nll_loss(log_probs: np.ndarray, target: list[int]) -> float:
    """Mean negative log-likelihood over non-<pad> target positions."""
    if len(target) < 2:
        raise EmptyTarget("target must hold <sos> plus at least one token")
    if log_probs.shape[0] != len(target) - 1:
        raise ShapeMismatch("log_probs rows must align with target positions 1..n")
    picked = [
        log_probs[t, target[t + 1]]
        for t in range(len(target) - 1)
        if target[t + 1] != PAD
    ]
    if not picked:
        raise EmptyTarget("every target position is padding")
    return -float(np.mean(picked))


def backward(
    params: ModelParams, cache: ForwardCache, target: list[int]
) -> dict[str, np.ndarray]:
    """Gradients of :func:`nll_loss` w.r.t. every parameter tensor."""
    cfg = params.config
    P = params.tensors
    grads = zero_grads(params)
    n_steps = len(target) - 1
    mask = np.array([target[t + 1] != PAD for t in range(n_steps)])
    n_scored = int(mask.sum())
    if n_scored == 0:
        raise EmptyTarget("every target position is padding")

    # Projection layer, vectorized across steps.
    probs = np.exp(cache.log_probs)
    dlogits = probs / n_scored
    rows = np.arange(n_steps)
    dlogits[rows, [target[t + 1] for t in range(n_steps)]] -= 1.0 / n_scored
    dlogits[~mask] = 0.0
    grads["out_W"] += dlogits.T @ cache.dec_hidden
    grads["out_b"] += dlogits.sum(axis=0)
    dh_proj = dlogits @ P["out_W"]  # (T, d_hid)

    dh = [np.zeros(cfg.d_hid) for _ in range(N_LAYERS)]
    dc = [np.zeros(cfg.d_hid) for _ in range(N_LAYERS)]
    for t in reversed(range(n_steps)):
        dh[N_LAYERS - 1] += dh_proj[t]
        dx_below = None
        for layer in reversed(range(N_LAYERS)):
            if dx_below is not None:
                dh[layer] += dx_below
            dx, dh_prev, dc_prev, dW, dU, db = _lstm_step_backward(
                P[f"dec_W{layer}"], P[f"dec_U{layer}"], cache.dec_caches[t][layer],
                dh[layer], dc[layer],
            )
            grads[f"dec_W{layer}"] += dW
            grads[f"dec_U{layer}"] += dU
            grads[f"dec_b{layer}"] += db
            dh[layer] = dh_prev
            dc[layer] = dc_prev
            dx_below = dx
        grads["tgt_embed"][cache.dec_inputs[t]] += dx_below

    # Decoder initial state grads flow into the encoder's final states.
    for t in reversed(range(len(cache.source))):
        dx_below = None
        for layer in reversed(range(N_LAYERS)):
            if dx_below is not None:
                dh[layer] += dx_below
            dx, dh_prev, dc_prev, dW, dU, db = _lstm_step_backward(
                P[f"enc_W{layer}"], P[f"enc_U{layer}"], cache.enc_caches[t][layer],
                dh[layer], dc[layer],
            )
            grads[f"enc_W{layer}"] += dW
            grads[f"enc_U{layer}"] += dU
            grads[f"enc_b{layer}"] += db
            dh[layer] = dh_prev
            dc[layer] = dc_prev
            dx_below = dx
        grads["src_embed"][cache.source[t]] += dx_below

    return grads
