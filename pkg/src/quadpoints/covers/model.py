"""Cyclic cover models ``w^e = s(x_0, ..., x_r)`` and their numerology."""
from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path

from ..exactmath import MultiPoly


class CoverFileError(ValueError):
    """Malformed or inconsistent cover definition."""


def default_variables(r: int) -> tuple[str, ...]:
    if r == 1:
        return ("x", "y")
    if r == 2:
        return ("x", "y", "z")
    return tuple(f"x{i}" for i in range(r + 1))


@dataclass(frozen=True)
class CyclicCoverModel:
    """Degree ``e`` cyclic cover of P^r branched along ``s = 0`` with ``deg s = e*m``."""

    r: int
    e: int
    m: int
    s: MultiPoly

    def __post_init__(self):
        if self.r < 1:
            raise CoverFileError("r must be positive")
        if self.e < 2:
            raise CoverFileError("cover degree e must be at least 2")
        if self.m < 1:
            raise CoverFileError("m must be positive")
        if len(self.s.variables) != self.r + 1:
            raise CoverFileError(f"s must have {self.r + 1} variables")
        if not self.s:
            raise CoverFileError("branch section s is zero")
        if not self.s.is_homogeneous():
            raise CoverFileError("branch section s is not homogeneous")
        if self.s.total_degree() != self.e * self.m:
            raise CoverFileError(
                f"deg s = {self.s.total_degree()} but e*m = {self.e * self.m}"
            )

    @classmethod
    def from_poly(cls, s: MultiPoly, e: int = 2) -> CyclicCoverModel:
        deg = s.total_degree()
        if deg % e:
            raise CoverFileError(f"degree {deg} is not divisible by e = {e}")
        return cls(len(s.variables) - 1, e, deg // e, s)

    @classmethod
    def from_dict(cls, data: dict) -> CyclicCoverModel:
        try:
            r, e, m = int(data["r"]), int(data["e"]), int(data["m"])
            terms = data["s"]
        except (KeyError, TypeError, ValueError) as exc:
            raise CoverFileError(f"cover definition missing or bad field: {exc}") from exc
        if not isinstance(terms, list):
            raise CoverFileError("'s' must be a list of terms")
        try:
            s = MultiPoly.from_json_terms(default_variables(r), terms)
        except (KeyError, TypeError, ValueError) as exc:
            raise CoverFileError(f"bad term in 's': {exc}") from exc
        return cls(r, e, m, s)

    @classmethod
    def load(cls, path: str | Path) -> CyclicCoverModel:
        try:
            data = json.loads(Path(path).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise CoverFileError(f"cannot read cover file {path}: {exc}") from exc
        return cls.from_dict(data)

    def to_dict(self) -> dict:
        return {"r": self.r, "e": self.e, "m": self.m, "s": self.s.to_json_terms()}

    def dumps(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def fermat_cover(r: int, m: int, signs: tuple[int, ...] | None = None, e: int = 2) -> CyclicCoverModel:
    """``w^e = sum_i sign_i * x_i^(e*m)``."""
    vs = default_variables(r)
    signs = signs or (1,) * (r + 1)
    terms = {}
    for i, sg in enumerate(signs):
        exps = [0] * (r + 1)
        exps[i] = e * m
        terms[tuple(exps)] = sg
    return CyclicCoverModel(r, e, m, MultiPoly(vs, terms))


def canonical_multiplier(c: CyclicCoverModel) -> int:
    """K_X = pi^* O((e-1)m - r - 1)."""
    return (c.e - 1) * c.m - c.r - 1


def vojta_threshold(r: int, d: int, e: int) -> int:
    """Least integer m with m > (r + 2d - 1)/(e - 1)."""
    if e < 2 or d < 1 or r < 1:
        raise ValueError("need r >= 1, d >= 1, e >= 2")
    return (r + 2 * d - 1) // (e - 1) + 1


def residue_degree_options(d: int, e: int) -> set[int]:
    """Possible ``[k(x) : k(pi(x))]`` for a degree d point on a degree e cyclic cover."""
    g = math.gcd(d, e)
    return {k for k in range(1, g + 1) if g % k == 0}
