"""Pretrained multilingual encoder behind the model mode.

Weights load once and serve read-only.  The hidden-state layer is
configurable; the default is the final encoder layer.
"""

from __future__ import annotations

import numpy as np

from .alignment import pool_pieces, token_spans

DEFAULT_MODEL = "google/mt5-base"


class ContextualEncoder:
    def __init__(self, model_name: str = DEFAULT_MODEL, layer: int = -1):
        import torch  # deferred: model mode only
        from transformers import AutoModel, AutoTokenizer

        self._torch = torch
        self.tokenizer = AutoTokenizer.from_pretrained(model_name)
        self.model = AutoModel.from_pretrained(model_name)
        self.model.eval()
        self.layer = layer

    def embed(self, tokens: list[str]) -> np.ndarray:
        text, spans = token_spans(tokens)
        encoded = self.tokenizer(
            text, return_offsets_mapping=True, return_tensors="pt", truncation=True
        )
        offsets = [tuple(pair) for pair in encoded.pop("offset_mapping")[0].tolist()]
        with self._torch.no_grad():
            if hasattr(self.model, "encoder"):
                output = self.model.encoder(
                    input_ids=encoded["input_ids"],
                    attention_mask=encoded["attention_mask"],
                    output_hidden_states=True,
                )
            else:
                output = self.model(**encoded, output_hidden_states=True)
        pieces = output.hidden_states[self.layer][0].numpy().astype(np.float64)
        return pool_pieces(spans, offsets, pieces)
