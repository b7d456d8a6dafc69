"""Formula syntax trees, grounding, and the canonical text rendering."""

from __future__ import annotations

from dataclasses import dataclass

from .signature import Signature


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Const:
    name: str


Term = Var | Const


class Formula:
    """Base class for the node dataclasses below."""

    __slots__ = ()


@dataclass(frozen=True)
class Atom(Formula):
    """A proposition, or a predicate applied to terms."""

    name: str
    args: tuple[Term, ...] = ()

    def key(self) -> str:
        """Ground-atom name as used by Signature.atom_index."""
        if not self.args:
            return self.name
        parts = []
        for t in self.args:
            if not isinstance(t, Const):
                raise ValueError(f"atom {pretty(self)!r} is not ground")
            parts.append(t.name)
        return f"{self.name}({','.join(parts)})"


@dataclass(frozen=True)
class Not(Formula):
    body: Formula


@dataclass(frozen=True)
class And(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Or(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Implies(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Iff(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Forall(Formula):
    var: str
    body: Formula


@dataclass(frozen=True)
class Exists(Formula):
    var: str
    body: Formula


def substitute(f: Formula, var: str, value: Const) -> Formula:
    """Replace free occurrences of the variable with a constant."""
    match f:
        case Atom(name, args):
            new_args = tuple(
                value if isinstance(t, Var) and t.name == var else t for t in args
            )
            return Atom(name, new_args)
        case Not(body):
            return Not(substitute(body, var, value))
        case And(left, right):
            return And(substitute(left, var, value), substitute(right, var, value))
        case Or(left, right):
            return Or(substitute(left, var, value), substitute(right, var, value))
        case Implies(left, right):
            return Implies(substitute(left, var, value), substitute(right, var, value))
        case Iff(left, right):
            return Iff(substitute(left, var, value), substitute(right, var, value))
        case Forall(v, body):
            if v == var:  # inner binder shadows
                return f
            return Forall(v, substitute(body, var, value))
        case Exists(v, body):
            if v == var:
                return f
            return Exists(v, substitute(body, var, value))
    raise TypeError(f"not a formula: {f!r}")


def is_ground(f: Formula) -> bool:
    """True when the formula has no quantifiers and no variables."""
    match f:
        case Atom(_, args):
            return all(isinstance(t, Const) for t in args)
        case Not(body):
            return is_ground(body)
        case And(l, r) | Or(l, r) | Implies(l, r) | Iff(l, r):
            return is_ground(l) and is_ground(r)
        case Forall() | Exists():
            return False
    raise TypeError(f"not a formula: {f!r}")


def ground(f: Formula, sig: Signature) -> Formula:
    """Expand quantifiers over the declared constants.

    A universal becomes the conjunction of its body instantiated at each
    constant in declaration order, an existential the disjunction; nesting
    expands recursively. Raises when a quantifier is grounded against a
    signature with no constants, since the tree has no boolean literals to
    stand for an empty expansion.
    """
    match f:
        case Atom():
            return f
        case Not(body):
            return Not(ground(body, sig))
        case And(l, r):
            return And(ground(l, sig), ground(r, sig))
        case Or(l, r):
            return Or(ground(l, sig), ground(r, sig))
        case Implies(l, r):
            return Implies(ground(l, sig), ground(r, sig))
        case Iff(l, r):
            return Iff(ground(l, sig), ground(r, sig))
        case Forall(var, body) | Exists(var, body):
            if not sig.constants:
                raise ValueError(
                    f"cannot ground {pretty(f)!r}: the signature declares no constants"
                )
            parts = [
                ground(substitute(body, var, Const(c)), sig) for c in sig.constants
            ]
            join = And if isinstance(f, Forall) else Or
            out = parts[0]
            for p in parts[1:]:
                out = join(out, p)
            return out
    raise TypeError(f"not a formula: {f!r}")


# Precedence levels for rendering; higher binds tighter.
_IFF, _IMP, _OR, _AND, _NEG, _ATOM = 1, 2, 3, 4, 5, 6


def pretty(f: Formula, _level: int = 0) -> str:
    """Render in the concrete syntax; the output reparses to an equal tree."""
    match f:
        case Atom(name, args):
            text = name if not args else f"{name}({','.join(t.name for t in args)})"
            mine = _ATOM
        case Not(body):
            text, mine = "~" + pretty(body, _NEG), _NEG
        case And(l, r):
            text, mine = f"{pretty(l, _AND)} & {pretty(r, _AND + 1)}", _AND
        case Or(l, r):
            text, mine = f"{pretty(l, _OR)} | {pretty(r, _OR + 1)}", _OR
        case Implies(l, r):
            text, mine = f"{pretty(l, _IMP + 1)} -> {pretty(r, _IMP)}", _IMP
        case Iff(l, r):
            text, mine = f"{pretty(l, _IFF + 1)} <-> {pretty(r, _IFF)}", _IFF
        case Forall(var, body):
            text, mine = f"forall {var}. {pretty(body, _NEG)}", _NEG
        case Exists(var, body):
            text, mine = f"exists {var}. {pretty(body, _NEG)}", _NEG
        case _:
            raise TypeError(f"not a formula: {f!r}")
    if mine < _level:
        return f"({text})"
    return text
