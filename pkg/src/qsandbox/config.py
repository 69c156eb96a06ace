"""Service and simulation configuration."""
from __future__ import annotations

import json
from dataclasses import dataclass, fields

from .errors import ContractError
from .exchange import CouplingParams
from .scene import DEFAULT_DT


@dataclass(frozen=True)
class Config:
    j_max: float = 1.0
    theta_d: float = 5.0
    dt: float = DEFAULT_DT
    seed: int = 1
    host: str = "127.0.0.1"
    port: int = 8787
    frame_rate: float = 60.0

    def __post_init__(self):
        for name in ("j_max", "theta_d", "dt", "frame_rate"):
            if getattr(self, name) <= 0:
                raise ContractError(f"{name} must be positive")
        if not 0 <= self.seed < 2 ** 64:
            raise ContractError("seed must fit in unsigned 64 bits")
        if not 0 < self.port < 65536:
            raise ContractError(f"port {self.port} out of range")
        if self.frame_rate > 1.0 / self.dt:
            raise ContractError(
                f"frame_rate {self.frame_rate} exceeds tick rate {1.0 / self.dt:.1f}"
            )

    @property
    def coupling(self) -> CouplingParams:
        return CouplingParams(self.j_max, self.theta_d)


def load_config(path, **overrides) -> Config:
    """Read a JSON config file; keyword overrides win over file values."""
    with open(path) as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as err:
            raise ContractError(f"config {path}: invalid JSON: {err}") from None
    if not isinstance(data, dict):
        raise ContractError(f"config {path}: expected a JSON object")
    known = {f.name for f in fields(Config)}
    unknown = set(data) - known
    if unknown:
        raise ContractError(f"config {path}: unknown keys {sorted(unknown)}")
    data.update({k: v for k, v in overrides.items() if v is not None})
    return Config(**data)
