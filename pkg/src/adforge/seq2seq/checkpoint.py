"""Model checkpoint file format.

Layout: 4-byte magic ``ADF1``, little-endian uint32 format version,
uint32 length of a JSON config block, the config bytes, then every
parameter tensor as raw little-endian float64 in declared order. The
vocabularies live in a ``<path>.vocab.json`` sidecar.
"""

from __future__ import annotations

import json
import struct
from pathlib import Path

import numpy as np

from ..errors import ConfigError
from . import model
from .training import TrainedModel
from .vocab import Vocab

MAGIC = b"ADF1"
VERSION = 1


def save_model(trained: TrainedModel, path) -> None:
    path = Path(path)
    cfg = trained.params.config
    header = {
        "d_emb": cfg.d_emb,
        "d_hid": cfg.d_hid,
        "src_vocab": cfg.src_vocab,
        "tgt_vocab": cfg.tgt_vocab,
        "tensors": [[name, list(shape)] for name, shape in model.tensor_shapes(cfg)],
    }
    blob = json.dumps(header, sort_keys=True).encode("utf-8")
    with open(path, "wb") as fh:
        fh.write(MAGIC)
        fh.write(struct.pack("<I", VERSION))
        fh.write(struct.pack("<I", len(blob)))
        fh.write(blob)
        for name, _ in model.tensor_shapes(cfg):
            tensor = np.ascontiguousarray(trained.params.tensors[name], dtype="<f8")
            fh.write(tensor.tobytes())
    sidecar = {
        "src": trained.src_vocab.to_json(),
        "tgt": trained.tgt_vocab.to_json(),
    }
    vocab_path = path.with_name(path.name + ".vocab.json")
    vocab_path.write_text(json.dumps(sidecar, sort_keys=True), encoding="utf-8")


def load_model(path) -> TrainedModel:
    path = Path(path)
    with open(path, "rb") as fh:
        if fh.read(4) != MAGIC:
            raise ConfigError(f"{path}: not an ADF1 checkpoint")
        (version,) = struct.unpack("<I", fh.read(4))
        if version != VERSION:
            raise ConfigError(f"{path}: unsupported checkpoint version {version}")
        (blob_len,) = struct.unpack("<I", fh.read(4))
        header = json.loads(fh.read(blob_len).decode("utf-8"))
        cfg = model.ModelConfig(
            d_emb=header["d_emb"],
            d_hid=header["d_hid"],
            src_vocab=header["src_vocab"],
            tgt_vocab=header["tgt_vocab"],
        )
        tensors = {}
        for name, shape in header["tensors"]:
            count = int(np.prod(shape))
            raw = fh.read(count * 8)
            if len(raw) != count * 8:
                raise ConfigError(f"{path}: truncated tensor {name}")
            tensors[name] = np.frombuffer(raw, dtype="<f8").reshape(shape).copy()
    params = model.ModelParams(config=cfg, tensors=tensors)
    params.validate()

    vocab_path = path.with_name(path.name + ".vocab.json")
    sidecar = json.loads(vocab_path.read_text(encoding="utf-8"))
    return TrainedModel(
        params=params,
        src_vocab=Vocab.from_json(sidecar["src"]),
        tgt_vocab=Vocab.from_json(sidecar["tgt"]),
        loss_trace=[],
    )
