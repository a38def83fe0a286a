"""Verification reports and their JSON encoding."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

import numpy as np

PASS = "pass"
FAIL = "fail"
UNSUPPORTED = "unsupported"
INFO = "info"


@dataclass
class VerificationReport:
    check: str
    dim: int
    mode: str
    status: str
    seed: int | None = None
    ranks: list = field(default_factory=list)
    dims: list = field(default_factory=list)
    max_residual: Any = None
    counterexample: Any = None
    extra: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.status == FAIL and self.counterexample is None:
            raise ValueError(f"{self.check}: a failing report must carry a counterexample")

    @property
    def passed(self) -> bool:
        return self.status == PASS

    @property
    def gating(self) -> bool:
        return self.status in (PASS, FAIL)

    def to_json(self) -> dict:
        details = {
            "ranks": encode(self.ranks),
            "dims": encode(self.dims),
            "max_residual": None if self.max_residual is None else _scalar_str(self.max_residual),
            "counterexample": encode(self.counterexample),
        }
        details.update({k: encode(v) for k, v in self.extra.items()})
        return {
            "check": self.check,
            "dim": self.dim,
            "mode": self.mode,
            "status": self.status,
            "details": details,
            "seed": self.seed,
        }

    def summary(self) -> str:
        bits = [f"[{self.status.upper():>11}] {self.check} (dim {self.dim}, {self.mode})"]
        if self.dims:
            bits.append(f"dims={self.dims}")
        if self.max_residual is not None:
            bits.append(f"max_residual={_scalar_str(self.max_residual)}")
        return "  ".join(bits)


def _scalar_str(x) -> str:
    if isinstance(x, (float, np.floating)):
        return repr(float(x))
    return str(Fraction(x)) if isinstance(x, (int, np.integer, Fraction)) else str(x)


def encode(obj):
    """JSON-safe form; exact rationals become strings like '-3/4'."""
    if obj is None or isinstance(obj, (bool, str)):
        return obj
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, (float, np.floating)):
        return float(obj)
    if isinstance(obj, np.ndarray):
        return [encode(v) for v in obj.tolist()] if obj.dtype != object else [encode(v) for v in obj]
    if isinstance(obj, dict):
        return {str(k): encode(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [encode(v) for v in obj]
    return str(obj)


def max_residual(values):
    vals = [abs(v) for v in values]
    return max(vals) if vals else 0
