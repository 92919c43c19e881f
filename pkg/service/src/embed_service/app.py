"""FastAPI application serving per-token embeddings.

Wire protocol: ``POST /embed`` with ``{"tokens": [...]}`` answers
``{"dimension": d, "vectors": [[...], ...]}``, one row per requested token.
Errors: 413 when the request exceeds ``max_tokens_per_request``, 400 on a
malformed body, 500 with a message on encoder failure.  ``GET /health``
reports the running mode.
"""

from __future__ import annotations

import argparse
from dataclasses import dataclass

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse
from pydantic import BaseModel

from .hashing import hash_embeddings


@dataclass(frozen=True)
class ServiceConfig:
    """Runtime mode: ``det:SEED,DIM`` or ``model:NAME[@LAYER]``."""

    port: int = 8016
    mode: str = "det:0,64"
    max_tokens_per_request: int = 8192

    def __post_init__(self) -> None:
        if not 0 < self.port < 65536:
            raise ValueError(f"port {self.port} out of range")
        if self.max_tokens_per_request < 1:
            raise ValueError("max_tokens_per_request must be >= 1")
        if not self.mode.startswith(("det:", "model:")):
            raise ValueError(f"unknown mode {self.mode!r}")

    @property
    def deterministic(self) -> bool:
        return self.mode.startswith("det:")

    def det_params(self) -> tuple[int, int]:
        seed_s, dim_s = self.mode[len("det:") :].split(",")
        return int(seed_s), int(dim_s)

    def model_params(self) -> tuple[str, int]:
        spec = self.mode[len("model:") :]
        if "@" in spec:
            name, layer = spec.rsplit("@", 1)
            return name, int(layer)
        return spec, -1


class EmbedRequest(BaseModel):
    tokens: list[str]


def create_app(config: ServiceConfig) -> FastAPI:
    app = FastAPI(title="embed-service")

    if config.deterministic:
        seed, dimension = config.det_params()
        embed_fn = lambda tokens: hash_embeddings(seed, dimension, tokens)
        mode_label = f"deterministic(seed={seed}, dim={dimension})"
    else:
        from .encoder import ContextualEncoder

        name, layer = config.model_params()
        encoder = ContextualEncoder(name, layer)
        embed_fn = encoder.embed
        mode_label = f"model({name}, layer={layer})"

    @app.exception_handler(RequestValidationError)
    async def malformed_body(request: Request, exc: RequestValidationError):
        return JSONResponse(status_code=400, content={"error": str(exc)})

    @app.get("/health")
    async def health():
        return {"status": "ok", "mode": mode_label}

    @app.post("/embed")
    async def embed(request: EmbedRequest):
        if len(request.tokens) > config.max_tokens_per_request:
            return JSONResponse(
                status_code=413,
                content={
                    "error": f"{len(request.tokens)} tokens exceed the limit of "
                    f"{config.max_tokens_per_request}"
                },
            )
        if not request.tokens:
            return JSONResponse(
                status_code=400, content={"error": "token list is empty"}
            )
        try:
            vectors = embed_fn(request.tokens)
        except Exception as exc:  # encoder failure -> protocol 500
            return JSONResponse(status_code=500, content={"error": str(exc)})
        return {"dimension": int(vectors.shape[1]), "vectors": vectors.tolist()}

    return app


def main(argv: list[str] | None = None) -> int:
    import uvicorn

    parser = argparse.ArgumentParser(description="per-token embedding service")
    parser.add_argument("--port", type=int, default=8016)
    parser.add_argument(
        "--mode",
        default="det:0,64",
        help="det:SEED,DIM or model:NAME[@LAYER] (default det:0,64)",
    )
    parser.add_argument("--max-tokens", type=int, default=8192)
    args = parser.parse_args(argv)
    config = ServiceConfig(
        port=args.port, mode=args.mode, max_tokens_per_request=args.max_tokens
    )
    uvicorn.run(create_app(config), host="127.0.0.1", port=config.port)
    return 0


if __name__ == "__main__":
    main()
