"""Truth assignments packed into integers, enumeration and evaluation."""

from __future__ import annotations

from dataclasses import dataclass

from .formulas import And, Atom, Exists, Forall, Formula, Iff, Implies, Not, Or
from .signature import Signature


class TooManyAtoms(ValueError):
    """Exhaustive world enumeration would exceed the cap.

    Signals that only the data-driven inference paths are usable for this
    signature.
    """


@dataclass(frozen=True, eq=False)
class World:
    """One truth assignment; bit j of ``bits`` is ground atom j."""

    signature: Signature
    bits: int

    def __post_init__(self):
        if self.bits < 0 or self.bits >> self.signature.n_atoms:
            raise ValueError("bits outside the signature's atom range")

    def truth(self, index: int) -> bool:
        return bool(self.bits >> index & 1)

    def truths(self) -> tuple[int, ...]:
        return tuple(self.bits >> j & 1 for j in range(self.signature.n_atoms))

    def bitstring(self) -> str:
        """Atom values in signature order, atom 0 first."""
        return "".join(map(str, self.truths()))

    def hamming(self, other: "World") -> int:
        return (self.bits ^ other.bits).bit_count()

    @classmethod
    def from_truths(cls, sig: Signature, values) -> "World":
        vals = list(values)
        if len(vals) != sig.n_atoms:
            raise ValueError(f"expected {sig.n_atoms} truth values, got {len(vals)}")
        bits = 0
        for j, v in enumerate(vals):
            if v not in (0, 1):
                raise ValueError(f"truth value must be 0 or 1, got {v!r}")
            if v:
                bits |= 1 << j
        return cls(sig, bits)

    @classmethod
    def from_bitstring(cls, sig: Signature, text: str) -> "World":
        if len(text) != sig.n_atoms:
            raise ValueError(
                f"bit string has {len(text)} characters, signature has {sig.n_atoms} atoms"
            )
        if set(text) - {"0", "1"}:
            raise ValueError(f"bit string must be 0s and 1s, got {text!r}")
        return cls.from_truths(sig, [int(c) for c in text])

    def __eq__(self, other):
        if not isinstance(other, World):
            return NotImplemented
        if self.bits != other.bits:
            return False
        return self.signature is other.signature or self.signature == other.signature

    def __hash__(self):
        return hash(self.bits)

    def __repr__(self):
        n = self.signature.n_atoms
        if n <= 32:
            return f"World({self.bitstring()})"
        return f"World({n} atoms, {self.bits.bit_count()} true)"


def enumerate_worlds(sig: Signature, cap: int = 20) -> list[World]:
    """All assignments, ordered lexicographically by truth tuple.

    The first declared atom varies slowest: row k reads as the k-th binary
    number with atom 0 as its most significant bit. Raises TooManyAtoms past
    ``cap`` atoms; larger vocabularies are served by the data-driven paths.
    """
    n = sig.n_atoms
    if n > cap:
        raise TooManyAtoms(f"{n} atoms exceeds the enumeration cap of {cap}")
    out = []
    for k in range(1 << n):
        bits = 0
        for j in range(n):
            if k >> (n - 1 - j) & 1:
                bits |= 1 << j
        out.append(World(sig, bits))
    return out


def evaluate(f: Formula, w: World) -> bool:
    """Classical truth of a grounded formula at a world."""
    match f:
        case Atom() as a:
            idx = w.signature.atom_index.get(a.key())
            if idx is None:
                raise ValueError(f"atom {a.key()!r} is not in the signature")
            return bool(w.bits >> idx & 1)
        case Not(body):
            return not evaluate(body, w)
        case And(l, r):
            return evaluate(l, w) and evaluate(r, w)
        case Or(l, r):
            return evaluate(l, w) or evaluate(r, w)
        case Implies(l, r):
            return (not evaluate(l, w)) or evaluate(r, w)
        case Iff(l, r):
            return evaluate(l, w) == evaluate(r, w)
        case Forall() | Exists():
            raise ValueError("quantified formulas must be grounded before evaluation")
    raise TypeError(f"not a formula: {f!r}")


def models_of(formulas, worlds) -> list[World]:
    """The worlds where every formula in the collection holds."""
    return [w for w in worlds if all(evaluate(f, w) for f in formulas)]
