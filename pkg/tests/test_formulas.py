import pytest

from genlogic import (
    And,
    Atom,
    Const,
    Exists,
    Forall,
    Implies,
    Not,
    Or,
    Signature,
    Var,
    World,
    evaluate,
    ground,
    is_ground,
    pretty,
    substitute,
)

SIG = Signature(predicates=(("r", 1), ("s", 2)), constants=("a", "b"))


def test_substitute_hits_free_occurrences():
    f = Implies(Atom("r", (Var("x"),)), Atom("s", (Var("x"), Const("a"))))
    g = substitute(f, "x", Const("b"))
    assert g == Implies(Atom("r", (Const("b"),)),
                        Atom("s", (Const("b"), Const("a"))))


def test_substitute_respects_shadowing():
    inner = Forall("x", Atom("r", (Var("x"),)))
    f = And(Atom("r", (Var("x"),)), inner)
    g = substitute(f, "x", Const("a"))
    assert g == And(Atom("r", (Const("a"),)), inner)


def test_ground_forall_is_left_folded_conjunction():
    f = Forall("x", Atom("r", (Var("x"),)))
    assert ground(f, SIG) == And(Atom("r", (Const("a"),)), Atom("r", (Const("b"),)))


def test_ground_exists_is_disjunction():
    f = Exists("x", Atom("r", (Var("x"),)))
    assert ground(f, SIG) == Or(Atom("r", (Const("a"),)), Atom("r", (Const("b"),)))


def test_ground_nested_quantifiers():
    f = Forall("x", Exists("y", Atom("s", (Var("x"), Var("y")))))
    g = ground(f, SIG)
    sa = lambda u, v: Atom("s", (Const(u), Const(v)))
    assert g == And(Or(sa("a", "a"), sa("a", "b")), Or(sa("b", "a"), sa("b", "b")))


def test_ground_without_constants_raises():
    sig = Signature(propositions=("p",))
    with pytest.raises(ValueError, match="no constants"):
        ground(Forall("x", Atom("p")), sig)


def test_ground_leaves_ground_formulas_alone():
    f = Implies(Atom("r", (Const("a"),)), Not(Atom("r", (Const("b"),))))
    assert ground(f, SIG) == f
    assert is_ground(f)
    assert not is_ground(Forall("x", Atom("r", (Var("x"),))))


def test_quantifier_duality_on_all_worlds():
    from genlogic import enumerate_worlds

    not_all = Not(Forall("x", Atom("r", (Var("x"),))))
    some_not = Exists("x", Not(Atom("r", (Var("x"),))))
    for w in enumerate_worlds(SIG):
        assert evaluate(ground(not_all, SIG), w) == evaluate(ground(some_not, SIG), w)


def test_atom_key_requires_ground_args():
    assert Atom("s", (Const("a"), Const("b"))).key() == "s(a,b)"
    with pytest.raises(ValueError):
        Atom("r", (Var("x"),)).key()


def test_pretty_precedence():
    p, q, r = Atom("p"), Atom("q"), Atom("r")
    assert pretty(Or(And(p, q), r)) == "p & q | r"
    assert pretty(And(Or(p, q), r)) == "(p | q) & r"
    assert pretty(Implies(p, Implies(q, r))) == "p -> q -> r"
    assert pretty(Implies(Implies(p, q), r)) == "(p -> q) -> r"
    assert pretty(Not(And(p, q))) == "~(p & q)"
    assert pretty(Not(Not(p))) == "~~p"
    assert pretty(And(And(p, q), r)) == "p & q & r"
    assert pretty(And(p, And(q, r))) == "p & (q & r)"


def test_pretty_quantifier_body_parenthesizes_connectives():
    f = Forall("x", And(Atom("r", (Var("x"),)), Atom("r", (Const("a"),))))
    assert pretty(f) == "forall x. (r(x) & r(a))"
    g = Exists("x", Not(Atom("r", (Var("x"),))))
    assert pretty(g) == "exists x. ~r(x)"


def test_world_bitstring_roundtrip():
    sig = Signature(propositions=("p", "q", "r"))
    w = World.from_bitstring(sig, "101")
    assert w.truths() == (1, 0, 1)
    assert w.bitstring() == "101"
    assert World.from_truths(sig, (1, 0, 1)) == w
