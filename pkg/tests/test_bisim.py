"""Bisimulation certificates: checking, search, and the gfp cross-check."""

import random

import pytest

from conftest import random_machine, rename_seeds
from coinduct.bisim import (
    BoundExceeded,
    Certificate,
    Counterexample,
    bisimilarity_gfp,
    closure_check,
    diag_rel,
    eq_upto,
    find_bisimulation,
    rel_combine,
    verify_certificate,
)
from coinduct.colist import (
    Alphabet,
    StepFn,
    cons,
    corec,
    lconst,
    lmap,
    nil,
    state_key,
)
from coinduct.errors import CertificateError, RootMissing, UnresolvableKey
from coinduct.trees import in0, leaf, numb, oplus, otimes, scons

AB = Alphabet(("a", "b"))


def test_diag_rel():
    trees = frozenset({leaf("a"), numb(0)})
    assert diag_rel(trees) == frozenset({(leaf("a"), leaf("a")), (numb(0), numb(0))})
    assert diag_rel(frozenset()) == frozenset()
    assert frozenset(x for x, _ in diag_rel(trees)) == trees


def test_rel_combine():
    m, m2 = leaf("a"), leaf("b")
    n, n2 = numb(0), numb(1)
    prod = rel_combine("product", frozenset({(m, m2)}), frozenset({(n, n2)}))
    assert prod == frozenset({(scons(m, n), scons(m2, n2))})
    sm = rel_combine("sum", frozenset({(m, m2)}), frozenset())
    assert sm == frozenset({(in0(m), in0(m2))})


def test_rel_combine_fst_projection_laws():
    rng = random.Random(3)
    pool = [leaf("a"), leaf("b"), numb(0), numb(1), scons(leaf("a"), numb(0))]
    for _ in range(25):
        r = frozenset(
            (rng.choice(pool), rng.choice(pool)) for _ in range(rng.randint(0, 4))
        )
        s = frozenset(
            (rng.choice(pool), rng.choice(pool)) for _ in range(rng.randint(0, 4))
        )
        fst_r = frozenset(x for x, _ in r)
        fst_s = frozenset(x for x, _ in s)
        assert frozenset(x for x, _ in rel_combine("product", r, s)) == otimes(
            fst_r, fst_s
        )
        assert frozenset(x for x, _ in rel_combine("sum", r, s)) == oplus(
            fst_r, fst_s
        )


def test_closure_check():
    assert closure_check((nil(), nil()), frozenset(), "weak")
    const = lconst("a", AB)
    r = frozenset({(state_key(const), state_key(const))})
    assert closure_check((const, cons("a", const, AB)), r, "weak")
    verdict = closure_check((const, lconst("b", AB)), frozenset(), "weak")
    assert not verdict and verdict.reason == "heads differ"
    verdict = closure_check((const, cons("a", const, AB)), frozenset(), "strong")
    assert verdict  # tails share the key CONST(a)


def test_verify_certificate():
    const = lconst("a", AB)
    wrapped = cons("a", const, AB)
    root = (state_key(const), state_key(wrapped))
    self_pair = (state_key(const), state_key(const))
    full = Certificate("weak", frozenset({root, self_pair}), root)
    assert verify_certificate(full, const, wrapped)

    reduced_weak = Certificate("weak", frozenset({root}), root)
    verdict = verify_certificate(reduced_weak, const, wrapped)
    assert not verdict and verdict.reason == "tail pair escapes the relation"

    reduced_strong = Certificate("strong", frozenset({root}), root)
    assert verify_certificate(reduced_strong, const, wrapped)

    with pytest.raises(RootMissing):
        verify_certificate(full, wrapped, const)

    bogus = Certificate("weak", frozenset({root, ("CONST(zz)", "CONST(zz)")}), root)
    with pytest.raises(UnresolvableKey):
        verify_certificate(bogus, const, wrapped)


def test_certificate_validation_and_roundtrip(tmp_path):
    root = ("CONST(a)", "CONST(a)")
    with pytest.raises(CertificateError):
        Certificate("weird", frozenset({root}), root)
    with pytest.raises(CertificateError):
        Certificate("weak", frozenset(), root)
    cert = Certificate("strong", frozenset({root}), root)
    doc = cert.to_dict()
    assert Certificate.from_dict(doc) == cert
    path = tmp_path / "cert.json"
    import json

    path.write_text(json.dumps(doc))
    assert Certificate.load(str(path)) == cert
    with pytest.raises(CertificateError):
        Certificate.from_dict({"kind": "weak", "root": ["a"], "pairs": []})


def test_find_bisimulation_outcomes():
    const = lconst("a", AB)
    outcome = find_bisimulation(const, cons("a", const, AB), 10)
    assert isinstance(outcome, Certificate) and len(outcome.pairs) == 2
    assert verify_certificate(outcome, const, cons("a", const, AB))

    outcome = find_bisimulation(const, lconst("b", AB), 10)
    assert outcome == Counterexample(0, "heads differ")

    outcome = find_bisimulation(const, cons("a", const, AB), 1, kind="weak")
    assert outcome == BoundExceeded(1)

    prefix = cons("a", cons("a", lconst("b", AB), AB), AB)
    other = cons("a", cons("a", lconst("a", AB), AB), AB)
    outcome = find_bisimulation(prefix, other, 10)
    assert outcome == Counterexample(2, "heads differ")

    outcome = find_bisimulation(cons("a", nil(), AB), nil(), 10)
    assert outcome == Counterexample(0, "nil/cons mismatch")


def test_find_bisimulation_strong_closes_on_diag():
    const = lconst("a", AB)
    wrapped = cons("a", const, AB)
    strong = find_bisimulation(const, wrapped, 10, kind="strong")
    assert isinstance(strong, Certificate) and len(strong.pairs) == 1
    assert verify_certificate(strong, const, wrapped)


def test_map_composition_example(defs):
    g, h, gh = defs.functions["g"], defs.functions["h"], defs.functions["gh"]
    const = lconst("a", defs.alphabet)
    left = lmap(g, lmap(h, const))
    right = lmap(gh, const)
    outcome = find_bisimulation(left, right, 10)
    assert isinstance(outcome, Certificate)
    assert verify_certificate(outcome, left, right)


def test_eq_upto():
    assert eq_upto(0, lconst("a", AB), lconst("b", AB))
    const = lconst("a", AB)
    assert eq_upto(5, const, cons("a", const, AB))
    verdict = eq_upto(1, cons("a", nil(), AB), nil())
    assert not verdict and verdict.witness == 0


def test_strong_subsumes_weak():
    rng = random.Random(31)
    for i in range(30):
        m = random_machine(rng, f"m{i}")
        m2 = rename_seeds(m, "r_")
        l1, l2 = corec(m.seeds[0], m), corec(m2.seeds[0], m2)
        outcome = find_bisimulation(l1, l2, 1000, kind="weak")
        assert isinstance(outcome, Certificate)
        strong = Certificate("strong", outcome.pairs, outcome.root)
        assert verify_certificate(strong, l1, l2)


def test_bisimilarity_gfp_examples():
    m1 = StepFn("one", ("s",), {"s": ("a", "s")})
    m2 = StepFn("cyc", ("t0", "t1"), {"t0": ("a", "t1"), "t1": ("a", "t0")})
    rel = bisimilarity_gfp(m1, m2, verify=True)
    assert rel == frozenset(
        {("M(one,s)", "M(cyc,t0)"), ("M(one,s)", "M(cyc,t1)")}
    )

    m3 = StepFn("bee", ("t",), {"t": ("b", "t")})
    assert bisimilarity_gfp(m1, m3) == frozenset()


def test_bisimilarity_gfp_verification_carrier_bound():
    from coinduct.errors import CarrierTooLarge

    m1 = StepFn("big", tuple("abcd"), {s: ("a", s) for s in "abcd"})
    m2 = StepFn("big2", tuple("wxyz"), {s: ("a", s) for s in "wxyz"})
    assert len(bisimilarity_gfp(m1, m2)) == 16  # fine without verification
    with pytest.raises(CarrierTooLarge):
        bisimilarity_gfp(m1, m2, verify=True)


def test_bisimilarity_gfp_agrees_with_search():
    rng = random.Random(37)
    for i in range(20):
        m1 = random_machine(rng, f"p{i}", max_seeds=4)
        m2 = random_machine(rng, f"q{i}", max_seeds=4)
        rel = bisimilarity_gfp(m1, m2)
        for s in m1.seeds:
            for t in m2.seeds:
                found = find_bisimulation(corec(s, m1), corec(t, m2), 10_000)
                in_rel = (f"M({m1.name},{s})", f"M({m2.name},{t})") in rel
                assert in_rel == isinstance(found, Certificate)


def test_certificate_soundness_random_machines():
    rng = random.Random(41)
    for i in range(40):
        m1 = random_machine(rng, f"p{i}", max_seeds=5)
        m2 = random_machine(rng, f"q{i}", max_seeds=5)
        l1, l2 = corec(m1.seeds[0], m1), corec(m2.seeds[0], m2)
        outcome = find_bisimulation(l1, l2, 10_000)
        if isinstance(outcome, Certificate):
            assert verify_certificate(outcome, l1, l2)
            assert eq_upto(50, l1, l2)


def test_completeness_pigeonhole_bound():
    rng = random.Random(43)
    for i in range(30):
        m1 = random_machine(rng, f"p{i}", max_seeds=8)
        m2 = random_machine(rng, f"q{i}", max_seeds=8)
        l1, l2 = corec(m1.seeds[0], m1), corec(m2.seeds[0], m2)
        bound = 2 * len(m1.seeds) * len(m2.seeds) + 1
        found = isinstance(find_bisimulation(l1, l2, 10_000), Certificate)
        assert found == bool(eq_upto(bound, l1, l2))
