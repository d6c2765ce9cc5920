"""Lazy lists as corecursive machines.

A lazy list is a state that can be observed exactly one step at a time:
an observation is either None (the list ends here) or a pair
(head symbol, tail state).  Primitive machine states pair a seed with a
declared step function; the derived combinators (cons, const, iterates,
map, append) are states in their own right, each unfolding by its own
one-step equation.  Everything is immutable and pure.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from typing import Iterable, Optional

from .errors import (
    DefsError,
    StateSpaceExceeded,
    UnknownAtom,
    UnknownSeed,
    Verdict,
)
from .trees import FiniteTree, NIL_TREE, branch_union, EMPTY_TREE, leaf, numb, ntrunc

_NAME_RE = re.compile(r"[A-Za-z0-9_]+\Z")

STATE_BOUND = 10_000


@dataclass(frozen=True)
class Alphabet:
    """The finite, nonempty set of atom symbols lists may carry."""

    symbols: tuple[str, ...]

    def __init__(self, symbols: Iterable[str]):
        syms = tuple(symbols)
        if not syms:
            raise DefsError("alphabet: must be nonempty")
        if len(set(syms)) != len(syms):
            raise DefsError("alphabet: duplicate symbol")
        for s in syms:
            if not _NAME_RE.match(s):
                raise DefsError(f"alphabet: bad symbol {s!r}")
        object.__setattr__(self, "symbols", syms)

    def __contains__(self, sym: str) -> bool:
        return sym in self.symbols

    def __iter__(self):
        return iter(self.symbols)

    def __len__(self) -> int:
        return len(self.symbols)


class AtomFun:
    """A named total function on the alphabet, given by a finite table."""

    def __init__(self, name: str, table: dict[str, str]):
        self.name = name
        self.table = dict(table)

    def __call__(self, sym: str) -> str:
        try:
            return self.table[sym]
        except KeyError:
            raise UnknownAtom(f"{self.name}: no entry for {sym!r}") from None

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, AtomFun)
            and self.name == other.name
            and self.table == other.table
        )

    def __hash__(self) -> int:
        return hash(("fn", self.name))

    def __repr__(self) -> str:
        return f"AtomFun({self.name})"


class StepFn:
    """A named machine: a finite seed space and a total step table.

    Each seed steps to None (stop) or to a pair (emitted symbol, next
    seed).
    """

    def __init__(
        self,
        name: str,
        seeds: Iterable[str],
        table: dict[str, Optional[tuple[str, str]]],
    ):
        self.name = name
        self.seeds = tuple(seeds)
        self.table = {k: (None if v is None else (v[0], v[1])) for k, v in table.items()}
        for s in self.seeds:
            if s not in self.table:
                raise DefsError(f"machine {name}: step missing for seed {s!r}")
        for s, act in self.table.items():
            if s not in self.seeds:
                raise DefsError(f"machine {name}: step for undeclared seed {s!r}")
            if act is not None and act[1] not in self.seeds:
                raise DefsError(f"machine {name}: step.{s}: next seed {act[1]!r} undeclared")

    def step(self, seed: str) -> Optional[tuple[str, str]]:
        if seed not in self.table:
            raise UnknownSeed(f"{self.name}: unknown seed {seed!r}")
        return self.table[seed]

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, StepFn)
            and self.name == other.name
            and self.seeds == other.seeds
            and self.table == other.table
        )

    def __hash__(self) -> int:
        return hash(("machine", self.name))

    def __repr__(self) -> str:
        return f"StepFn({self.name}, {len(self.seeds)} seeds)"


class CoList:
    """Base class for lazy-list states."""

    __slots__ = ()


@dataclass(frozen=True)
class NilList(CoList):
    pass


@dataclass(frozen=True)
class ConsList(CoList):
    head: str
    tail: CoList


@dataclass(frozen=True)
class ConstList(CoList):
    sym: str


@dataclass(frozen=True)
class IterList(CoList):
    fn: AtomFun
    sym: str


@dataclass(frozen=True)
class MapList(CoList):
    fn: AtomFun
    source: CoList


@dataclass(frozen=True)
class AppendList(CoList):
    left: CoList
    right: CoList


@dataclass(frozen=True)
class MachineList(CoList):
    machine: StepFn
    seed: str


Observation = Optional[tuple[str, CoList]]


def nil() -> CoList:
    return NilList()


def cons(sym: str, tail: CoList, alphabet: Alphabet) -> CoList:
    if sym not in alphabet:
        raise UnknownAtom(f"symbol {sym!r} not in alphabet")
    return ConsList(sym, tail)


def lconst(sym: str, alphabet: Alphabet) -> CoList:
    """The infinite list repeating one symbol."""
    if sym not in alphabet:
        raise UnknownAtom(f"symbol {sym!r} not in alphabet")
    return ConstList(sym)


def iterates(fn: AtomFun, sym: str) -> CoList:
    """The list of repeated applications: sym, fn sym, fn (fn sym), ..."""
    if sym not in fn.table:
        raise UnknownAtom(f"symbol {sym!r} not in domain of {fn.name}")
    return IterList(fn, sym)


def lmap(fn: AtomFun, source: CoList) -> CoList:
    """Apply fn to every element, lazily."""
    return MapList(fn, source)


def lappend(left: CoList, right: CoList) -> CoList:
    """Concatenation; copies the right list once the left one ends."""
    return AppendList(left, right)


def corec(seed: str, machine: StepFn) -> CoList:
    """The list unfolded from a seed by a declared step function."""
    if seed not in machine.seeds:
        raise UnknownSeed(f"{machine.name}: unknown seed {seed!r}")
    return MachineList(machine, seed)


def observe(l: CoList) -> Observation:
    """Unfold one step: None for the end of the list, else (head, tail)."""
    if isinstance(l, NilList):
        return None
    if isinstance(l, ConsList):
        return l.head, l.tail
    if isinstance(l, ConstList):
        return l.sym, l
    if isinstance(l, IterList):
        return l.sym, IterList(l.fn, l.fn(l.sym))
    if isinstance(l, MapList):
        obs = observe(l.source)
        if obs is None:
            return None
        head, tail = obs
        return l.fn(head), MapList(l.fn, tail)
    if isinstance(l, AppendList):
        obs = observe(l.left)
        if obs is not None:
            head, tail = obs
            return head, AppendList(tail, l.right)
        obs = observe(l.right)
        if obs is None:
            return None
        head, tail = obs
        return head, AppendList(NilList(), tail)
    if isinstance(l, MachineList):
        act = l.machine.step(l.seed)
        if act is None:
            return None
        sym, nxt = act
        return sym, MachineList(l.machine, nxt)
    raise TypeError(f"not a CoList state: {l!r}")


def state_key(l: CoList) -> str:
    """Canonical, injective serialization of a state."""
    if isinstance(l, NilList):
        return "NIL"
    if isinstance(l, ConsList):
        return f"CONS({l.head},{state_key(l.tail)})"
    if isinstance(l, ConstList):
        return f"CONST({l.sym})"
    if isinstance(l, IterList):
        return f"ITER({l.fn.name},{l.sym})"
    if isinstance(l, MapList):
        return f"MAP({l.fn.name},{state_key(l.source)})"
    if isinstance(l, AppendList):
        return f"APP({state_key(l.left)},{state_key(l.right)})"
    if isinstance(l, MachineList):
        return f"M({l.machine.name},{l.seed})"
    raise TypeError(f"not a CoList state: {l!r}")


def take(k: int, l: CoList) -> tuple[list[str], bool]:
    """First k elements and whether the list was seen to end.

    Performs at most k observations; in particular take(0, .) observes
    nothing and reports ended=False even on nil().
    """
    elems: list[str] = []
    cur = l
    for _ in range(k):
        obs = observe(cur)
        if obs is None:
            return elems, True
        head, cur = obs
        elems.append(head)
    return elems, False


def reachable_states(l: CoList, bound: int = STATE_BOUND) -> dict[str, CoList]:
    """All states reachable by observation, indexed by canonical key."""
    index: dict[str, CoList] = {}
    stack = [l]
    while stack:
        s = stack.pop()
        key = state_key(s)
        if key in index:
            continue
        if len(index) >= bound:
            raise StateSpaceExceeded(f"more than {bound} reachable states")
        index[key] = s
        obs = observe(s)
        if obs is not None:
            stack.append(obs[1])
    return index


def compile_machine(l: CoList, bound: int = STATE_BOUND) -> tuple[StepFn, str]:
    """Flatten a state's reachable closure into an equivalent StepFn.

    Seeds are the canonical state keys; the start seed is returned
    alongside.  Raises StateSpaceExceeded past `bound` states.
    """
    index = reachable_states(l, bound)
    table: dict[str, Optional[tuple[str, str]]] = {}
    for key, state in index.items():
        obs = observe(state)
        table[key] = None if obs is None else (obs[0], state_key(obs[1]))
    machine = StepFn("compiled", tuple(index), table)
    return machine, state_key(l)


def lcorf(k: int, seed: str, machine: StepFn) -> FiniteTree:
    """Depth-k tree approximant of the list unfolded from `seed`.

    Zero fuel yields the empty tree; each further unit either closes the
    list with the nil tree or contributes one list cell around the
    smaller approximant (whose branches may still be empty).
    """
    if seed not in machine.seeds:
        raise UnknownSeed(f"{machine.name}: unknown seed {seed!r}")
    if k <= 0:
        return EMPTY_TREE
    act = machine.step(seed)
    if act is None:
        return NIL_TREE
    sym, nxt = act
    inner = branch_union(leaf(sym), lcorf(k - 1, nxt, machine))
    return branch_union(numb(1), inner)


def tree_trunc(k: int, l: CoList, bound: int = STATE_BOUND) -> FiniteTree:
    """Nodes of the list's tree encoding at depth below k.

    The state is first compiled to a flat machine; the k-fuel
    approximant then already contains every node of depth below k.
    """
    if k <= 0:
        return EMPTY_TREE
    machine, seed = compile_machine(l, bound)
    return ntrunc(k, lcorf(k, seed, machine))


def check_llist_upto(k: int, l: CoList, atoms: Iterable[str]) -> Verdict:
    """Depth-k membership check: every head within `atoms` until Nil."""
    allowed = frozenset(atoms)
    cur = l
    for i in range(k):
        obs = observe(cur)
        if obs is None:
            return Verdict(True)
        head, cur = obs
        if head not in allowed:
            return Verdict(False, f"head {head} outside allowed atoms", i)
    return Verdict(True)


@dataclass(frozen=True)
class Definitions:
    """A validated definitions file: alphabet, functions and machines."""

    alphabet: Alphabet
    functions: dict[str, AtomFun]
    machines: dict[str, StepFn]

    @classmethod
    def from_dict(cls, doc: dict) -> "Definitions":
        if not isinstance(doc, dict):
            raise DefsError("definitions: top level must be an object")
        alpha_raw = doc.get("alphabet")
        if not isinstance(alpha_raw, list) or not all(
            isinstance(s, str) for s in alpha_raw
        ):
            raise DefsError("alphabet: must be an array of strings")
        alphabet = Alphabet(alpha_raw)

        functions: dict[str, AtomFun] = {}
        for name, table in (doc.get("functions") or {}).items():
            if not _NAME_RE.match(name):
                raise DefsError(f"functions.{name}: bad name")
            if not isinstance(table, dict):
                raise DefsError(f"functions.{name}: must be an object")
            for sym in alphabet:
                if sym not in table:
                    raise DefsError(f"functions.{name}: missing entry for {sym!r}")
            for sym, out in table.items():
                if sym not in alphabet:
                    raise DefsError(f"functions.{name}.{sym}: key not in alphabet")
                if out not in alphabet:
                    raise DefsError(f"functions.{name}.{sym}: value {out!r} not in alphabet")
            functions[name] = AtomFun(name, table)

        machines: dict[str, StepFn] = {}
        for name, spec in (doc.get("machines") or {}).items():
            if not _NAME_RE.match(name):
                raise DefsError(f"machines.{name}: bad name")
            seeds = spec.get("seeds") if isinstance(spec, dict) else None
            step = spec.get("step") if isinstance(spec, dict) else None
            if not isinstance(seeds, list) or not seeds:
                raise DefsError(f"machines.{name}.seeds: must be a nonempty array")
            if len(set(seeds)) != len(seeds):
                raise DefsError(f"machines.{name}.seeds: duplicate seed")
            for s in seeds:
                if not isinstance(s, str) or not _NAME_RE.match(s):
                    raise DefsError(f"machines.{name}.seeds: bad seed {s!r}")
            if not isinstance(step, dict):
                raise DefsError(f"machines.{name}.step: must be an object")
            table: dict[str, Optional[tuple[str, str]]] = {}
            for seed, act in step.items():
                if seed not in seeds:
                    raise DefsError(f"machines.{name}.step.{seed}: undeclared seed")
                if act == "stop":
                    table[seed] = None
                    continue
                if (
                    isinstance(act, dict)
                    and set(act) == {"emit"}
                    and isinstance(act["emit"], list)
                    and len(act["emit"]) == 2
                ):
                    sym, nxt = act["emit"]
                    if sym not in alphabet:
                        raise DefsError(
                            f"machines.{name}.step.{seed}: emit symbol {sym!r} not in alphabet"
                        )
                    if nxt not in seeds:
                        raise DefsError(
                            f"machines.{name}.step.{seed}: emit seed {nxt!r} undeclared"
                        )
                    table[seed] = (sym, nxt)
                    continue
                raise DefsError(
                    f"machines.{name}.step.{seed}: must be \"stop\" or {{\"emit\": [symbol, seed]}}"
                )
            for seed in seeds:
                if seed not in table:
                    raise DefsError(f"machines.{name}.step: missing entry for {seed!r}")
            machines[name] = StepFn(name, seeds, table)

        return cls(alphabet, functions, machines)

    @classmethod
    def load(cls, path: str) -> "Definitions":
        with open(path, "r", encoding="utf-8") as fh:
            try:
                doc = json.load(fh)
            except json.JSONDecodeError as exc:
                raise DefsError(f"definitions: invalid JSON ({exc})") from None
        return cls.from_dict(doc)
