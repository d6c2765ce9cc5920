"""Lazy-list equality by coinduction: certificates, search, and the gfp view.

A certificate is a finite relation on canonical state keys submitted as a
bisimulation witness.  Verification replays one observation step per
pair; the weak rule demands the tails be related again, the strong rule
additionally accepts tails with equal keys.  `find_bisimulation` builds
such witnesses automatically for eventually-periodic lists, and
`bisimilarity_gfp` computes the largest bisimulation between two machines
as a greatest fixedpoint on the seed-pair lattice.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Union

from . import lattice
from .colist import CoList, StepFn, observe, reachable_states, state_key
from .errors import (
    CertificateError,
    RootMissing,
    UnresolvableKey,
    Verdict,
)
from .trees import in0, in1, scons

KeyPair = tuple[str, str]

Relation = frozenset  # of KeyPair

TreePairRelation = frozenset  # of (FiniteTree, FiniteTree)


def diag_rel(trees) -> TreePairRelation:
    """The diagonal relation {(t, t)} over a set of trees."""
    return frozenset((t, t) for t in trees)


def rel_combine(kind: str, r: TreePairRelation, s: TreePairRelation) -> TreePairRelation:
    """Lift the tree product/sum to relations, componentwise.

    kind "product" pairs scons images; kind "sum" injects the two
    relations disjointly.
    """
    if kind == "product":
        return frozenset(
            (scons(x, y), scons(x2, y2)) for (x, x2) in r for (y, y2) in s
        )
    if kind == "sum":
        return frozenset((in0(x), in0(x2)) for (x, x2) in r) | frozenset(
            (in1(y), in1(y2)) for (y, y2) in s
        )
    raise ValueError("kind must be 'product' or 'sum'")


@dataclass(frozen=True)
class Certificate:
    """A bisimulation witness: a relation of state-key pairs with a root."""

    kind: str  # "weak" | "strong"
    pairs: Relation
    root: KeyPair

    def __post_init__(self):
        if self.kind not in ("weak", "strong"):
            raise CertificateError(f"kind: must be \"weak\" or \"strong\", got {self.kind!r}")
        if self.root not in self.pairs:
            raise CertificateError("root: must be among the certificate pairs")

    def to_dict(self) -> dict:
        ordered = sorted(self.pairs)
        ordered.remove(self.root)
        return {
            "kind": self.kind,
            "root": list(self.root),
            "pairs": [list(self.root)] + [list(p) for p in ordered],
        }

    @classmethod
    def from_dict(cls, doc: dict) -> "Certificate":
        if not isinstance(doc, dict):
            raise CertificateError("certificate: top level must be an object")
        kind = doc.get("kind")
        root = doc.get("root")
        pairs = doc.get("pairs")
        if kind not in ("weak", "strong"):
            raise CertificateError("kind: must be \"weak\" or \"strong\"")
        if not isinstance(root, list) or len(root) != 2:
            raise CertificateError("root: must be a pair of keys")
        if not isinstance(pairs, list):
            raise CertificateError("pairs: must be an array of key pairs")
        rel = set()
        for i, p in enumerate(pairs):
            if not isinstance(p, list) or len(p) != 2 or not all(isinstance(k, str) for k in p):
                raise CertificateError(f"pairs[{i}]: must be a pair of keys")
            rel.add((p[0], p[1]))
        return cls(kind, frozenset(rel), (root[0], root[1]))

    @classmethod
    def load(cls, path: str) -> "Certificate":
        with open(path, "r", encoding="utf-8") as fh:
            try:
                doc = json.load(fh)
            except json.JSONDecodeError as exc:
                raise CertificateError(f"certificate: invalid JSON ({exc})") from None
        return cls.from_dict(doc)


@dataclass(frozen=True)
class Counterexample:
    """The two lists differ; `index` is the first disagreeing prefix position."""

    index: int
    reason: str


@dataclass(frozen=True)
class BoundExceeded:
    """The search ran out of its pair budget before closing or refuting."""

    limit: int


SearchOutcome = Union[Certificate, Counterexample, BoundExceeded]


def closure_check(pair: tuple[CoList, CoList], rel: Relation, kind: str) -> Verdict:
    """One-step closure condition for a related pair.

    Both sides must end together, or produce equal heads with tails
    related by `rel`; under the strong kind, tails with equal keys are
    accepted as well.
    """
    l1, l2 = pair
    o1, o2 = observe(l1), observe(l2)
    if o1 is None and o2 is None:
        return Verdict(True)
    if o1 is None or o2 is None:
        return Verdict(False, "nil/cons mismatch", (state_key(l1), state_key(l2)))
    (x, t1), (y, t2) = o1, o2
    if x != y:
        return Verdict(False, "heads differ", (state_key(l1), state_key(l2)))
    k1, k2 = state_key(t1), state_key(t2)
    if (k1, k2) in rel:
        return Verdict(True)
    if kind == "strong" and k1 == k2:
        return Verdict(True)
    return Verdict(False, "tail pair escapes the relation", (k1, k2))


def verify_certificate(cert: Certificate, l1: CoList, l2: CoList) -> Verdict:
    """Replay every certificate pair against one observation step.

    The root must be the queried pair and belong to the relation; every
    key must name a state reachable from one of the queried lists.  A
    pass certifies that the two lists are equal.
    """
    root = (state_key(l1), state_key(l2))
    if cert.root != root:
        raise RootMissing(
            f"certificate root {cert.root} does not match queried pair {root}"
        )
    if cert.root not in cert.pairs:
        raise RootMissing("certificate root is not among its pairs")
    index = reachable_states(l1)
    index.update(reachable_states(l2))
    resolved = []
    for ka, kb in sorted(cert.pairs):
        if ka not in index:
            raise UnresolvableKey(f"key {ka} names no reachable state")
        if kb not in index:
            raise UnresolvableKey(f"key {kb} names no reachable state")
        resolved.append((index[ka], index[kb]))
    for pair in resolved:
        verdict = closure_check(pair, cert.pairs, cert.kind)
        if not verdict:
            return verdict
    return Verdict(True)


def find_bisimulation(
    l1: CoList, l2: CoList, max_pairs: int = 10_000, kind: str = "weak"
) -> SearchOutcome:
    """Search for a bisimulation by synchronized unfolding.

    Observation is deterministic, so the search walks the single chain
    of tail pairs, memoizing on key pairs; a revisited pair closes the
    chain, a mismatch refutes equality with its prefix index, and more
    than `max_pairs` distinct pairs gives up.  Under the strong kind a
    pair of identical keys closes immediately.  A returned certificate
    always passes `verify_certificate`.
    """
    if max_pairs < 1:
        raise ValueError("max_pairs must be at least 1")
    root = (state_key(l1), state_key(l2))
    seen: set[KeyPair] = set()
    cur = (l1, l2)
    idx = 0
    while True:
        keys = (state_key(cur[0]), state_key(cur[1]))
        if keys in seen:
            break
        if kind == "strong" and keys[0] == keys[1] and idx > 0:
            break
        if len(seen) >= max_pairs:
            return BoundExceeded(max_pairs)
        seen.add(keys)
        o1, o2 = observe(cur[0]), observe(cur[1])
        if o1 is None and o2 is None:
            break
        if o1 is None or o2 is None:
            return Counterexample(idx, "nil/cons mismatch")
        (x, t1), (y, t2) = o1, o2
        if x != y:
            return Counterexample(idx, "heads differ")
        cur = (t1, t2)
        idx += 1
    return Certificate(kind, frozenset(seen), root)


def eq_upto(k: int, l1: CoList, l2: CoList) -> Verdict:
    """Bounded take-lemma equality: k synchronized observations agree."""
    c1, c2 = l1, l2
    for i in range(k):
        o1, o2 = observe(c1), observe(c2)
        if o1 is None and o2 is None:
            return Verdict(True)
        if o1 is None or o2 is None:
            return Verdict(False, "nil/cons mismatch", i)
        (x, t1), (y, t2) = o1, o2
        if x != y:
            return Verdict(False, "heads differ", i)
        c1, c2 = t1, t2
    return Verdict(True)


def bisimilarity_gfp(m1: StepFn, m2: StepFn, verify: bool = False) -> Relation:
    """The largest bisimulation between two machines, as a gfp.

    The carrier is the set of seed pairs; the one-step closure operator
    keeps a pair when both seeds stop, or when they emit the same symbol
    into a pair still in the subset.  With `verify=True` the result is
    additionally checked extremal on the pair lattice (small carriers
    only).
    """
    pairs = [(s, t) for s in m1.seeds for t in m2.seeds]
    carrier = lattice.Carrier(pairs)

    def close(z: lattice.Subset) -> lattice.Subset:
        kept = []
        for s, t in pairs:
            a1, a2 = m1.step(s), m2.step(t)
            if a1 is None and a2 is None:
                kept.append((s, t))
            elif a1 is not None and a2 is not None and a1[0] == a2[0]:
                if (a1[1], a2[1]) in z:
                    kept.append((s, t))
        return lattice.Subset.of(carrier, kept)

    op = lattice.SubsetOperator(close, name="llistd_fun")
    result = lattice.gfp(op, carrier)
    if verify:
        verdict = lattice.verify_extremal(op, carrier, result, "greatest")
        if not verdict:
            raise AssertionError(f"gfp failed extremality: {verdict.reason}")
    return frozenset(
        (f"M({m1.name},{s})", f"M({m2.name},{t})") for s, t in result.members()
    )
