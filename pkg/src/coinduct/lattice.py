"""Least and greatest fixedpoints of monotone operators on finite subset lattices.

The lattice is always the powerset of a finite carrier, with subsets held
as bitmasks.  Fixedpoints are computed by Kleene iteration; the defining
intersection/union characterizations are kept as the verification oracle
(`verify_extremal`), not as the algorithm.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Callable, Hashable, Iterable, Iterator, Optional

from .errors import CarrierTooLarge, LatticeFileError, NotMonotone, ParseError, Verdict

EXHAUSTIVE_BOUND = 12


@dataclass(frozen=True)
class Carrier:
    """A finite, ordered, duplicate-free collection of opaque elements."""

    elements: tuple[Hashable, ...]

    def __init__(self, elements: Iterable[Hashable]):
        elems = tuple(elements)
        if len(set(elems)) != len(elems):
            raise ValueError("carrier elements must be duplicate-free")
        object.__setattr__(self, "elements", elems)
        object.__setattr__(self, "_index", {x: i for i, x in enumerate(elems)})

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, x) -> bool:
        return x in self._index

    def index(self, x) -> int:
        try:
            return self._index[x]
        except KeyError:
            raise KeyError(f"{x!r} not in carrier") from None


@dataclass(frozen=True)
class Subset:
    """A subset of a carrier, stored as a bitmask."""

    carrier: Carrier
    bits: int

    @classmethod
    def empty(cls, carrier: Carrier) -> "Subset":
        return cls(carrier, 0)

    @classmethod
    def full(cls, carrier: Carrier) -> "Subset":
        return cls(carrier, (1 << len(carrier)) - 1)

    @classmethod
    def of(cls, carrier: Carrier, members: Iterable[Hashable]) -> "Subset":
        bits = 0
        for x in members:
            bits |= 1 << carrier.index(x)
        return cls(carrier, bits)

    def members(self) -> tuple:
        return tuple(
            x for i, x in enumerate(self.carrier.elements) if self.bits >> i & 1
        )

    def __contains__(self, x) -> bool:
        return bool(self.bits >> self.carrier.index(x) & 1)

    def __iter__(self) -> Iterator:
        return iter(self.members())

    def __len__(self) -> int:
        return bin(self.bits).count("1")

    def __le__(self, other: "Subset") -> bool:
        return self.bits & ~other.bits == 0

    def __or__(self, other: "Subset") -> "Subset":
        return Subset(self.carrier, self.bits | other.bits)

    def __and__(self, other: "Subset") -> "Subset":
        return Subset(self.carrier, self.bits & other.bits)

    def complement(self) -> "Subset":
        return Subset(self.carrier, ~self.bits & (1 << len(self.carrier)) - 1)

    def __repr__(self) -> str:
        return "{" + ",".join(str(x) for x in self.members()) + "}"


class SubsetOperator:
    """A total map on the powerset of a carrier, from a callable or a table."""

    def __init__(self, fn: Callable[[Subset], Subset], name: str = ""):
        self.fn = fn
        self.name = name

    def __call__(self, s: Subset) -> Subset:
        return self.fn(s)

    @classmethod
    def from_table(cls, carrier: Carrier, table: dict[int, int], name: str = "table"):
        """Exhaustive bits-to-bits table; must cover the whole powerset."""
        for bits in range(1 << len(carrier)):
            if bits not in table:
                members = Subset(carrier, bits).members()
                raise LatticeFileError(
                    f"operator table missing entry for subset {{{','.join(map(str, members))}}}"
                )
        return cls(lambda s: Subset(carrier, table[s.bits]), name)

    def dual(self) -> "SubsetOperator":
        """The de Morgan dual: complement, apply, complement."""
        return SubsetOperator(
            lambda s: self.fn(s.complement()).complement(),
            name=f"dual({self.name})" if self.name else "dual",
        )


def _value_table(op: SubsetOperator, carrier: Carrier) -> list[int]:
    return [op(Subset(carrier, bits)).bits for bits in range(1 << len(carrier))]


def is_monotone(
    op: SubsetOperator,
    carrier: Carrier,
    samples: Optional[int] = None,
    rng: Optional[random.Random] = None,
) -> Verdict:
    """Check A <= B implies op(A) <= op(B).

    With `samples=None` the check is exhaustive over all comparable pairs
    and the carrier must not exceed the exhaustive bound; otherwise
    `samples` random comparable pairs are tried.  A failing verdict
    carries the witness pair (A, B).
    """
    n = len(carrier)
    if samples is None:
        if n > EXHAUSTIVE_BOUND:
            raise CarrierTooLarge(
                f"exhaustive monotonicity check limited to {EXHAUSTIVE_BOUND} elements"
            )
        values = _value_table(op, carrier)
        for b in range(1 << n):
            a = b
            while True:
                if values[a] & ~values[b]:
                    return Verdict(
                        False,
                        "operator not monotone",
                        (Subset(carrier, a), Subset(carrier, b)),
                    )
                if a == 0:
                    break
                a = (a - 1) & b
        return Verdict(True)
    rng = rng or random.Random()
    full = (1 << n) - 1
    for _ in range(samples):
        b = rng.randint(0, full)
        a = b & rng.randint(0, full)
        sa, sb = Subset(carrier, a), Subset(carrier, b)
        if not op(sa) <= op(sb):
            return Verdict(False, "operator not monotone", (sa, sb))
    return Verdict(True)


def _iterate(op: SubsetOperator, start: Subset, ascending: bool) -> Subset:
    cur = start
    for _ in range(len(start.carrier) + 2):
        nxt = op(cur)
        if nxt.carrier is not cur.carrier and nxt.carrier != cur.carrier:
            raise NotMonotone("operator changed carrier")
        if ascending and not cur <= nxt:
            raise NotMonotone(f"iteration shrank at {cur!r}")
        if not ascending and not nxt <= cur:
            raise NotMonotone(f"iteration grew at {cur!r}")
        if nxt.bits == cur.bits:
            return cur
        cur = nxt
    raise NotMonotone("iteration failed to stabilize within the chain bound")


def lfp(op: SubsetOperator, carrier: Carrier) -> Subset:
    """Least fixedpoint by Kleene iteration upward from the empty set."""
    return _iterate(op, Subset.empty(carrier), ascending=True)


def gfp(op: SubsetOperator, carrier: Carrier) -> Subset:
    """Greatest fixedpoint by Kleene iteration downward from the full carrier."""
    return _iterate(op, Subset.full(carrier), ascending=False)


def verify_extremal(
    op: SubsetOperator, carrier: Carrier, candidate: Subset, kind: str
) -> Verdict:
    """Confirm by scanning the whole powerset that `candidate` is extremal.

    kind "least": candidate is a fixedpoint lying below every
    pre-fixedpoint (op(A) <= A).  kind "greatest": a fixedpoint lying
    above every post-fixedpoint (A <= op(A)).
    """
    if kind not in ("least", "greatest"):
        raise ValueError("kind must be 'least' or 'greatest'")
    n = len(carrier)
    if n > EXHAUSTIVE_BOUND:
        raise CarrierTooLarge(
            f"exhaustive extremality check limited to {EXHAUSTIVE_BOUND} elements"
        )
    if op(candidate).bits != candidate.bits:
        return Verdict(False, "candidate is not a fixedpoint", candidate)
    for bits in range(1 << n):
        a = Subset(carrier, bits)
        fa = op(a)
        if kind == "least" and fa <= a and not candidate <= a:
            return Verdict(False, "pre-fixedpoint below candidate", a)
        if kind == "greatest" and a <= fa and not a <= candidate:
            return Verdict(False, "post-fixedpoint above candidate", a)
    return Verdict(True)


def _set_key(members) -> str:
    return "{" + ",".join(sorted(members)) + "}"


def _parse_set_key(key: str, where: str) -> frozenset:
    if not (key.startswith("{") and key.endswith("}")):
        raise LatticeFileError(f"{where}: element {key!r} is not a set key")
    inner = key[1:-1]
    return frozenset(s for s in inner.split(",") if s)


def _fin_operator(carrier: Carrier, base: list) -> SubsetOperator:
    sets = {
        x: _parse_set_key(x, "carrier") for x in carrier.elements
    }

    def apply(z: Subset) -> Subset:
        out = set()
        if _set_key(()) in carrier:
            out.add(_set_key(()))
        for y in z:
            for x in base:
                key = _set_key(sets[y] | {x})
                if key in carrier:
                    out.add(key)
        return Subset.of(carrier, out)

    return SubsetOperator(apply, "fin")


def _list_fun_operator(carrier: Carrier, atoms: list) -> SubsetOperator:
    from .trees import NIL_TREE, cons_tree, leaf, parse_tree_term

    trees = {}
    for x in carrier.elements:
        try:
            trees[x] = parse_tree_term(x)
        except ParseError as exc:
            raise LatticeFileError(
                f"carrier: element {x!r} is not a tree term ({exc})"
            ) from None
    by_tree = {t: x for x, t in trees.items()}
    heads = [leaf(s) for s in atoms]

    def apply(z: Subset) -> Subset:
        out = set()
        if NIL_TREE in by_tree:
            out.add(by_tree[NIL_TREE])
        for y in z:
            for head in heads:
                cell = cons_tree(head, trees[y])
                if cell in by_tree:
                    out.add(by_tree[cell])
        return Subset.of(carrier, out)

    return SubsetOperator(apply, "list_fun")


def load_demo(doc: dict) -> tuple[Carrier, SubsetOperator, str]:
    """Interpret a lattice demo document: carrier, operator and mode.

    The operator is either the name of a builtin ("identity", or "fin" /
    "list_fun" given with their parameters) or an exhaustive table keyed
    by sorted member lists.
    """
    if not isinstance(doc, dict):
        raise LatticeFileError("demo: top level must be an object")
    elems = doc.get("carrier")
    if not isinstance(elems, list) or not all(isinstance(x, str) for x in elems):
        raise LatticeFileError("carrier: must be an array of strings")
    if len(set(elems)) != len(elems):
        raise LatticeFileError("carrier: duplicate element")
    carrier = Carrier(elems)

    mode = doc.get("mode")
    if mode not in ("lfp", "gfp"):
        raise LatticeFileError("mode: must be \"lfp\" or \"gfp\"")

    spec = doc.get("operator")
    if spec == "identity" or spec == {"name": "identity"}:
        op = SubsetOperator(lambda s: s, "identity")
    elif isinstance(spec, dict) and spec.get("name") == "fin":
        base = spec.get("base")
        if not isinstance(base, list) or not all(isinstance(x, str) for x in base):
            raise LatticeFileError("operator.base: must be an array of strings")
        for x in carrier.elements:
            _parse_set_key(x, "carrier")
        op = _fin_operator(carrier, base)
    elif isinstance(spec, dict) and spec.get("name") == "list_fun":
        atoms = spec.get("atoms")
        if not isinstance(atoms, list) or not all(isinstance(x, str) for x in atoms):
            raise LatticeFileError("operator.atoms: must be an array of strings")
        op = _list_fun_operator(carrier, atoms)
    elif isinstance(spec, dict) and spec.get("name") == "table":
        raw = spec.get("map")
        if not isinstance(raw, dict):
            raise LatticeFileError("operator.map: must be an object")
        table: dict[int, int] = {}
        for key, members in raw.items():
            names = [s for s in key.split(",") if s]
            if not isinstance(members, list):
                raise LatticeFileError(f"operator.map.{key!r}: must be an array")
            try:
                table[Subset.of(carrier, names).bits] = Subset.of(carrier, members).bits
            except KeyError as exc:
                raise LatticeFileError(f"operator.map.{key!r}: {exc}") from None
        op = SubsetOperator.from_table(carrier, table)
    else:
        raise LatticeFileError("operator: unknown operator specification")
    return carrier, op, mode
