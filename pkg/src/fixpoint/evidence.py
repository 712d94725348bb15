"""Pointwise evidence for equations between computed functions."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Iterable, Union

from .interp import FuelExhausted, Halted


@dataclass(frozen=True)
class AllAgree:
    pass


@dataclass(frozen=True)
class Disagree:
    at: Any


@dataclass(frozen=True)
class Inconclusive:
    at: Any


Verdict = Union[AllAgree, Disagree, Inconclusive]


@dataclass(frozen=True)
class Sample:
    z: Any
    left: Any
    right: Any

    @property
    def agrees(self) -> bool:
        return isinstance(self.left, Halted) and self.left == self.right

    @property
    def exhausted(self) -> bool:
        return isinstance(self.left, FuelExhausted) or isinstance(self.right, FuelExhausted)

    @property
    def both_exhausted(self) -> bool:
        return isinstance(self.left, FuelExhausted) and isinstance(self.right, FuelExhausted)


@dataclass(frozen=True)
class EvidenceReport:
    samples: tuple
    verdict: Verdict

    @classmethod
    def from_samples(cls, samples: Iterable[Sample]) -> "EvidenceReport":
        samples = tuple(samples)
        for s in samples:
            if not s.agrees and not s.exhausted:
                return cls(samples, Disagree(s.z))
        for s in samples:
            if s.exhausted:
                return cls(samples, Inconclusive(s.z))
        return cls(samples, AllAgree())

    @property
    def all_agree(self) -> bool:
        return isinstance(self.verdict, AllAgree)

    @property
    def consistent(self) -> bool:
        """True when every sample halts equal on both sides or diverges on both."""
        return all(s.agrees or s.both_exhausted for s in self.samples)

    def summary(self) -> str:
        v = type(self.verdict).__name__
        line = f"verdict={v} samples={len(self.samples)}"
        if not self.all_agree:
            line += f" at={self.verdict.at!r}"
        return line
