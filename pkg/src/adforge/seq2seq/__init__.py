"""From-scratch LSTM sequence-to-sequence machinery for both the
translator and generator roles."""

from .checkpoint import load_model, save_model
from .data import TextPair, TrainingPair, make_generator_pairs, make_translation_pairs, tokens_of
from .decode import translate
from .model import ForwardCache, ModelConfig, ModelParams, backward, forward, init_params, nll_loss
from .training import AdamState, TrainConfig, TrainedModel, adam_step, clip_global_norm, index_pairs, train
from .vocab import EOS, PAD, SOS, UNK, Vocab

__all__ = [
    "AdamState", "EOS", "ForwardCache", "ModelConfig", "ModelParams", "PAD",
    "SOS", "TextPair", "TrainConfig", "TrainedModel", "TrainingPair", "UNK",
    "Vocab", "adam_step", "backward", "clip_global_norm", "forward",
    "index_pairs", "init_params", "load_model", "make_generator_pairs",
    "make_translation_pairs", "nll_loss", "save_model", "tokens_of",
    "train", "translate",
]
