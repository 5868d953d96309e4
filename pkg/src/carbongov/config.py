"""Engine configuration: one JSON file, credentials via environment only.

Relative paths in the file resolve against the file's own directory, so a
config can travel with its data directory.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Mapping

from .errors import InvalidConfig
from .index import DEFAULT_DIM, RetrievalConfig

EMBEDDER_KINDS = ("reference", "remote")
GENERATOR_KINDS = ("template", "remote")


@dataclass(frozen=True)
class EmbedderConfig:
    kind: str = "reference"
    dim: int = DEFAULT_DIM
    endpoint: str | None = None
    model: str | None = None

    def __post_init__(self):
        if self.kind not in EMBEDDER_KINDS:
            raise InvalidConfig(f"embedder.kind must be one of {EMBEDDER_KINDS}, got {self.kind!r}")
        if self.dim < 1:
            raise InvalidConfig(f"embedder.dim must be positive, got {self.dim}")
        if self.kind == "remote" and not self.endpoint:
            raise InvalidConfig("embedder.kind 'remote' requires embedder.endpoint")


@dataclass(frozen=True)
class GeneratorConfig:
    kind: str = "template"
    endpoint: str | None = None
    model: str | None = None
    temperature: float = 0.0
    key_env: str | None = None
    retries: int = 2

    def __post_init__(self):
        if self.kind not in GENERATOR_KINDS:
            raise InvalidConfig(f"generator.kind must be one of {GENERATOR_KINDS}, got {self.kind!r}")
        if self.kind == "remote" and not (self.endpoint and self.model):
            raise InvalidConfig("generator.kind 'remote' requires endpoint and model")
        if self.retries < 0:
            raise InvalidConfig("generator.retries must be >= 0")


@dataclass(frozen=True)
class ConflictConfig:
    rel_tol: float = 0.01

    def __post_init__(self):
        if self.rel_tol <= 0:
            raise InvalidConfig(f"conflict.rel_tol must be positive, got {self.rel_tol}")


@dataclass(frozen=True)
class ServerConfig:
    bind_addr: str = "127.0.0.1:8787"

    @property
    def host(self) -> str:
        return self.bind_addr.rsplit(":", 1)[0]

    @property
    def port(self) -> int:
        try:
            return int(self.bind_addr.rsplit(":", 1)[1])
        except (IndexError, ValueError) as exc:
            raise InvalidConfig(f"server.bind_addr needs host:port, got {self.bind_addr!r}") from exc


@dataclass(frozen=True)
class EngineConfig:
    corpus_dir: Path | None = None
    index_path: Path | None = None
    cache_path: Path | None = None
    artifacts_dir: Path | None = None
    embedder: EmbedderConfig = field(default_factory=EmbedderConfig)
    generator: GeneratorConfig = field(default_factory=GeneratorConfig)
    retrieval: RetrievalConfig = field(default_factory=RetrievalConfig)
    conflict: ConflictConfig = field(default_factory=ConflictConfig)
    server: ServerConfig = field(default_factory=ServerConfig)

    @classmethod
    def from_dict(cls, d: Mapping[str, Any], base_dir: Path | None = None) -> "EngineConfig":
        known = {"corpus_dir", "index_path", "cache_path", "artifacts_dir",
                 "embedder", "generator", "retrieval", "conflict", "server"}
        unknown = set(d) - known
        if unknown:
            raise InvalidConfig(f"unknown config keys: {sorted(unknown)}")

        def path_of(key: str) -> Path | None:
            raw = d.get(key)
            if raw is None:
                return None
            p = Path(raw)
            if base_dir is not None and not p.is_absolute():
                p = base_dir / p
            return p

        def section(key: str, ctor, **defaults):
            raw = d.get(key) or {}
            if not isinstance(raw, Mapping):
                raise InvalidConfig(f"config section {key!r} must be an object")
            try:
                return ctor(**{**defaults, **raw})
            except TypeError as exc:
                raise InvalidConfig(f"bad {key} section: {exc}") from exc

        return cls(
            corpus_dir=path_of("corpus_dir"),
            index_path=path_of("index_path"),
            cache_path=path_of("cache_path"),
            artifacts_dir=path_of("artifacts_dir"),
            embedder=section("embedder", EmbedderConfig),
            generator=section("generator", GeneratorConfig),
            retrieval=section("retrieval", RetrievalConfig),
            conflict=section("conflict", ConflictConfig),
            server=section("server", ServerConfig),
        )

    def to_dict(self) -> dict[str, Any]:
        return {
            "corpus_dir": str(self.corpus_dir) if self.corpus_dir else None,
            "index_path": str(self.index_path) if self.index_path else None,
            "cache_path": str(self.cache_path) if self.cache_path else None,
            "artifacts_dir": str(self.artifacts_dir) if self.artifacts_dir else None,
            "embedder": {"kind": self.embedder.kind, "dim": self.embedder.dim,
                         "endpoint": self.embedder.endpoint, "model": self.embedder.model},
            "generator": {"kind": self.generator.kind, "endpoint": self.generator.endpoint,
                          "model": self.generator.model,
                          "temperature": self.generator.temperature,
                          "key_env": self.generator.key_env,
                          "retries": self.generator.retries},
            "retrieval": {"k": self.retrieval.k},
            "conflict": {"rel_tol": self.conflict.rel_tol},
            "server": {"bind_addr": self.server.bind_addr},
        }


def load_config(path: str | Path) -> EngineConfig:
    path = Path(path)
    try:
        raw = json.loads(path.read_text(encoding="utf-8"))
    except OSError as exc:
        raise InvalidConfig(f"cannot read config {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InvalidConfig(f"config {path} is not valid JSON: {exc}") from exc
    if not isinstance(raw, dict):
        raise InvalidConfig(f"config {path} must hold a JSON object")
    return EngineConfig.from_dict(raw, base_dir=path.parent)
