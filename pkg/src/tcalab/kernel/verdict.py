"""Three-valued results for checks that can only be semi-decided."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Union

from .terms import Term, show


@dataclass(frozen=True)
class Holds:
    def __bool__(self) -> bool:
        return True

    def __str__(self) -> str:
        return "Holds"


@dataclass(frozen=True)
class Fails:
    counterexample: tuple[Term, ...]
    note: str = ""

    def __bool__(self) -> bool:
        return False

    def __str__(self) -> str:
        cx = ", ".join(show(t) for t in self.counterexample)
        return f"Fails({cx})" + (f": {self.note}" if self.note else "")


@dataclass(frozen=True)
class Unknown:
    reason: str

    def __bool__(self) -> bool:
        return False

    def __str__(self) -> str:
        return f"Unknown({self.reason})"


Verdict = Union[Holds, Fails, Unknown]

HOLDS = Holds()


def refuted(v: Verdict) -> bool:
    return isinstance(v, Fails)


def plausible(v: Verdict) -> bool:
    """Not refuted: either decided true or true on every sample tried."""
    return not isinstance(v, Fails)


def conj(verdicts: Iterable[Verdict]) -> Verdict:
    """Kleene conjunction, short-circuiting on the first failure."""
    unknown = None
    for v in verdicts:
        if isinstance(v, Fails):
            return v
        if isinstance(v, Unknown) and unknown is None:
            unknown = v
    return unknown if unknown is not None else HOLDS


def disj(verdicts: Iterable[Verdict], counterexample: tuple[Term, ...] = ()) -> Verdict:
    """Kleene disjunction; when everything fails, report the given counterexample."""
    unknown = None
    first_fail = None
    for v in verdicts:
        if isinstance(v, Holds):
            return v
        if isinstance(v, Unknown) and unknown is None:
            unknown = v
        if isinstance(v, Fails) and first_fail is None:
            first_fail = v
    if unknown is not None:
        return unknown
    if counterexample:
        return Fails(counterexample)
    return first_fail if first_fail is not None else Fails(())
