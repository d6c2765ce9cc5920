"""Exception types and the shared check-verdict value."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any


class CoinductError(Exception):
    """Base class for all library errors."""


class EmptyOperand(CoinductError):
    """A tree constructor received an empty node set."""


class Malformed(CoinductError):
    """A node set is not the image of any constructor."""


class CarrierTooLarge(CoinductError):
    """An exhaustive lattice check was asked for on a carrier above the bound."""


class NotMonotone(CoinductError):
    """Fixedpoint iteration observed non-monotone behaviour."""


class UnknownAtom(CoinductError):
    """Symbol not in the alphabet (or not in a function's table)."""


class UnknownSeed(CoinductError):
    """Seed key not declared by the step function."""


class UnknownSymbol(CoinductError):
    """DSL symbol does not resolve against the definitions file."""


class UnknownFunction(CoinductError):
    """DSL function name does not resolve against the definitions file."""


class UnknownMachine(CoinductError):
    """DSL machine name does not resolve against the definitions file."""


class StateSpaceExceeded(CoinductError):
    """Machine compilation passed the configured state bound."""


class NotAList(CoinductError):
    """A tree is not in the image of the finite-list encoding."""


class IllFoundedCall(CoinductError):
    """A recursive body asked for a value not strictly below its argument."""


class SizeExceeded(CoinductError):
    """An enumeration request is outside the configured size guard."""


class RootMissing(CoinductError):
    """Certificate root does not match the queried pair, or is absent from it."""


class UnresolvableKey(CoinductError):
    """A certificate key names no state reachable from the queried lists."""


class DefsError(CoinductError):
    """Definitions file failed validation; the message names the offending key."""


class LatticeFileError(CoinductError):
    """Lattice demo file failed validation; the message names the offending key."""


class CertificateError(CoinductError):
    """Certificate file is structurally malformed."""


class ParseError(CoinductError):
    """Expression text deviates from the grammar.

    `offset` is the byte offset where the expected token would start;
    `expected` is a short summary of what was expected there.
    """

    def __init__(self, offset: int, expected: str):
        super().__init__(f"parse error at offset {offset}: expected {expected}")
        self.offset = offset
        self.expected = expected


@dataclass(frozen=True)
class Verdict:
    """Outcome of a check: `ok`, with a reason and witness on failure.

    The witness is whatever pins the failure down: a subset pair for
    monotonicity, a subset for extremality, a prefix index for list
    disagreements, a state-key pair for closure checks.
    """

    ok: bool
    reason: str = ""
    witness: Any = None

    def __bool__(self) -> bool:
        return self.ok


PASS = Verdict(True)
