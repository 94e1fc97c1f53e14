import random

import pytest

from amrpara.ctree import (
    BracketError,
    ConstituencyTree,
    parse_bracketed,
    strip_terminals,
    truncate_depth,
    write_bracketed,
)

from helpers import random_ctree


def test_parse_simple():
    t = parse_bracketed("(ROOT (S (NP (PRP I)) (VP (VBP know))))")
    assert t.label == "ROOT"
    assert t.height() == 4
    assert write_bracketed(t) == "(ROOT (S (NP (PRP I)) (VP (VBP know))))"


def test_parse_template_tree():
    t = parse_bracketed("(ROOT(S(NP)(VP)(.)))")
    s = t.children[0]
    assert [c.label for c in s.children] == ["NP", "VP", "."]
    assert all(not c.children for c in s.children)


def test_parse_errors():
    with pytest.raises(BracketError):
        parse_bracketed("((")
    with pytest.raises(BracketError):
        parse_bracketed("")
    with pytest.raises(BracketError):
        parse_bracketed("(A (B))(C)")


def test_round_trip_random():
    for seed in range(50):
        t = random_ctree(random.Random(seed))
        assert write_bracketed(parse_bracketed(write_bracketed(t))) == write_bracketed(t)


def test_strip_terminals():
    t = parse_bracketed("(NP (PRP I))")
    assert write_bracketed(strip_terminals(t)) == "(NP (PRP))"


class TestTruncateDepth:
    def test_deep_enough_identity(self):
        t = parse_bracketed("(A (B (C x)))")
        assert write_bracketed(truncate_depth(t, 10)) == write_bracketed(t)

    def test_chain(self):
        t = parse_bracketed("(A (B (C (D))))")
        assert write_bracketed(truncate_depth(t, 3)) == "(A (B (C)))"

    def test_spec_example(self):
        t = parse_bracketed("(ROOT (S (NP (PRP I)) (VP (VBP know))))")
        assert write_bracketed(truncate_depth(t, 3)) == "(ROOT (S (NP) (VP)))"

    def test_idempotent(self):
        for seed in range(20):
            t = random_ctree(random.Random(seed))
            once = truncate_depth(t, 3)
            assert write_bracketed(truncate_depth(once, 3)) == write_bracketed(once)

    def test_prefix_of_original(self):
        def is_prefix(small, big):
            if small.label != big.label:
                return False
            sub_small = [c for c in small.children if isinstance(c, ConstituencyTree)]
            sub_big = [c for c in big.children if isinstance(c, ConstituencyTree)]
            if not sub_small:
                return True  # cut below this node
            return len(sub_small) == len(sub_big) and all(
                is_prefix(a, b) for a, b in zip(sub_small, sub_big)
            )

        for seed in range(20):
            t = random_ctree(random.Random(seed))
            assert is_prefix(truncate_depth(t, 2), t)

    def test_bad_depth(self):
        with pytest.raises(ValueError):
            truncate_depth(parse_bracketed("(A)"), 0)
