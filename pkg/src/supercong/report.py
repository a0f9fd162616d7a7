"""Checker outcomes."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Optional

from .padic import Valuation, format_rational, residue_valuation, valuation

THEOREM = "theorem"
CONJECTURE = "conjecture"

# parameters that make up a record key, in order
KEY_PARAMS = ("lambda", "p", "m", "s", "r", "k", "n", "variant", "depth")


def _fmt(v: Any) -> str:
    if isinstance(v, Fraction):
        return format_rational(v)
    return str(v)


@dataclass(frozen=True)
class CongruenceReport:
    """One checker outcome.

    ``claimed_exponent`` is k in "mod p^k"; ``None`` means an exact identity is
    claimed.  A report is a pass exactly when it is not skipped and the
    observed defect valuation reaches the claim.
    """

    checker: str
    params: dict
    claimed_exponent: Optional[int]
    observed: Valuation
    kind: str = THEOREM
    skipped_reason: Optional[str] = None
    context: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        if self.skipped_reason is not None:
            return False
        if self.claimed_exponent is None:
            return not self.observed.finite
        return self.observed >= self.claimed_exponent

    @property
    def skipped(self) -> bool:
        return self.skipped_reason is not None

    @property
    def status(self) -> str:
        if self.skipped:
            return "skip"
        return "pass" if self.passed else "fail"

    @property
    def margin(self) -> Optional[int]:
        """Observed minus claimed, when both are finite."""
        if self.skipped or self.claimed_exponent is None or not self.observed.finite:
            return None
        return self.observed.value - self.claimed_exponent

    def key(self) -> tuple:
        return (self.checker,) + tuple(_fmt(self.params[k]) for k in KEY_PARAMS if k in self.params)

    def key_string(self) -> str:
        parts = [self.checker] + [f"{k}={_fmt(self.params[k])}" for k in KEY_PARAMS if k in self.params]
        return " ".join(parts)

    def __str__(self) -> str:
        claim = "exact" if self.claimed_exponent is None else f"p^{self.claimed_exponent}"
        tail = f" ({self.skipped_reason})" if self.skipped else ""
        return f"{self.status:4s} {self.key_string()} claim={claim} observed={self.observed}{tail}"


def skipped(checker: str, params: dict, claimed: Optional[int], reason: str,
            kind: str = THEOREM, **context) -> CongruenceReport:
    return CongruenceReport(checker, params, claimed, Valuation.of(0), kind, reason, dict(context))


def from_residue(checker: str, params: dict, claimed: Optional[int], diff: int, p: int, prec: int,
                 kind: str = THEOREM, **context) -> CongruenceReport:
    """Report whose defect is the valuation of a residue computed mod p^prec."""
    return CongruenceReport(checker, params, claimed, residue_valuation(diff, p, prec), kind, None, dict(context))


def from_exact(checker: str, params: dict, claimed: Optional[int], diff, p: int,
               kind: str = THEOREM, **context) -> CongruenceReport:
    return CongruenceReport(checker, params, claimed, valuation(diff, p), kind, None, dict(context))


@dataclass(frozen=True)
class DworkHypothesisReport:
    """Finite-window check of the three Dwork-type hypotheses for A(n) = ((1/2)_n/n!)^r."""

    r: int
    p: int
    n_max: int
    m_max: int
    s_max: int
    a: bool
    b: bool
    c: bool
    witnesses: tuple = ()

    @property
    def passed(self) -> bool:
        return self.a and self.b and self.c

    def __str__(self) -> str:
        flags = " ".join(f"{k}={'ok' if getattr(self, k) else 'FAIL'}" for k in "abc")
        return (f"hypotheses r={self.r} p={self.p} window(n<={self.n_max}, m<={self.m_max}, "
                f"s<={self.s_max}) {flags}")
