"""String diagrams as typed binary terms.

A diagram is a leaf generator, the empty diagram on zero wires, or a
sequential (``Seq``) or parallel (``Par``) combination of two diagrams.
Objects are natural numbers counting wires.  ``f >> g`` composes (f first)
and ``f @ g`` places diagrams side by side.

Terms are never rewritten structurally; equality of terms is only used as a
cache key.  Semantic equality lives in :mod:`sigflow.semantics`.
"""

from __future__ import annotations

from enum import Enum
from typing import Iterator, Sequence

from .errors import TypeMismatch
from .exactfield import FieldElem


class Kind(Enum):
    ADD = "add"
    ZERO = "zero"
    DUP = "dup"
    DELETE = "del"
    SCALE = "scale"
    CUP = "cup"
    CAP = "cap"
    ID = "id"
    BRAID = "swap"


ARITY = {
    Kind.ADD: (2, 1),
    Kind.ZERO: (0, 1),
    Kind.DUP: (1, 2),
    Kind.DELETE: (1, 0),
    Kind.SCALE: (1, 1),
    Kind.CUP: (2, 0),
    Kind.CAP: (0, 2),
    Kind.ID: (1, 1),
    Kind.BRAID: (2, 2),
}


class Diagram:
    __slots__ = ("dom", "cod", "_hash")

    dom: int
    cod: int

    @property
    def signature(self) -> tuple[int, int]:
        return (self.dom, self.cod)

    def __rshift__(self, other: Diagram) -> Diagram:
        return compose(self, other)

    def __matmul__(self, other: Diagram) -> Diagram:
        return tensor(self, other)

    def __hash__(self):
        return self._hash

    def leaves(self) -> Iterator[Gen]:
        stack = [self]
        while stack:
            d = stack.pop()
            if isinstance(d, Gen):
                yield d
            elif isinstance(d, (Seq, Par)):
                stack.append(d.right)
                stack.append(d.left)

    def count(self, kind: Kind) -> int:
        return sum(1 for g in self.leaves() if g.kind is kind)

    def size(self) -> int:
        return sum(1 for _ in self.leaves())


class Gen(Diagram):
    __slots__ = ("kind", "scalar")

    def __init__(self, kind: Kind, scalar: FieldElem | None = None):
        if (kind is Kind.SCALE) != (scalar is not None):
            raise ValueError("Scale needs a scalar and only Scale takes one")
        if scalar is not None and not isinstance(scalar, FieldElem):
            raise TypeError(f"scale payload must be a FieldElem, got {scalar!r}")
        self.kind = kind
        self.scalar = scalar
        self.dom, self.cod = ARITY[kind]
        self._hash = hash((kind, scalar))

    def __eq__(self, other):
        if self is other:
            return True
        return isinstance(other, Gen) and self.kind is other.kind and self.scalar == other.scalar

    __hash__ = Diagram.__hash__

    def __repr__(self):
        if self.kind is Kind.SCALE:
            return f"Scale({self.scalar})"
        return self.kind.name.capitalize()


class Empty(Diagram):
    __slots__ = ()

    def __init__(self):
        self.dom = self.cod = 0
        self._hash = hash("Empty")

    def __eq__(self, other):
        return isinstance(other, Empty)

    __hash__ = Diagram.__hash__

    def __repr__(self):
        return "Empty"


class _Binary(Diagram):
    __slots__ = ("left", "right")

    def __init__(self, left: Diagram, right: Diagram):
        self.left = left
        self.right = right
        self._hash = hash((type(self).__name__, left._hash, right._hash))

    def __eq__(self, other):
        if self is other:
            return True
        return (
            type(other) is type(self)
            and self._hash == other._hash
            and self.dom == other.dom
            and self.cod == other.cod
            and self.left == other.left
            and self.right == other.right
        )

    __hash__ = Diagram.__hash__

    def __repr__(self):
        return f"{type(self).__name__}({self.left!r}, {self.right!r})"


class Seq(_Binary):
    """``left`` then ``right``."""

    __slots__ = ()

    def __init__(self, left: Diagram, right: Diagram):
        if left.cod != right.dom:
            raise TypeMismatch(
                f"cannot compose {left.dom}->{left.cod} with {right.dom}->{right.cod}: "
                f"{left.cod} outputs feed {right.dom} inputs"
            )
        super().__init__(left, right)
        self.dom, self.cod = left.dom, right.cod


class Par(_Binary):
    __slots__ = ()

    def __init__(self, left: Diagram, right: Diagram):
        super().__init__(left, right)
        self.dom = left.dom + right.dom
        self.cod = left.cod + right.cod


EMPTY = Empty()
ADD = Gen(Kind.ADD)
ZERO = Gen(Kind.ZERO)
DUP = Gen(Kind.DUP)
DELETE = Gen(Kind.DELETE)
CUP = Gen(Kind.CUP)
CAP = Gen(Kind.CAP)
ID = Gen(Kind.ID)
BRAID = Gen(Kind.BRAID)


def make_generator(kind: Kind, scalar: FieldElem | None = None) -> Gen:
    return Gen(kind, scalar)


def scale(c: FieldElem) -> Gen:
    return Gen(Kind.SCALE, c)


def compose(f: Diagram, g: Diagram) -> Seq:
    return Seq(f, g)


def tensor(f: Diagram, g: Diagram) -> Par:
    return Par(f, g)


def signature(d: Diagram) -> tuple[int, int]:
    return (d.dom, d.cod)


def seq_all(ds: Sequence[Diagram]) -> Diagram:
    """Left-nested composite of ``ds``; needs at least one diagram."""
    out = ds[0]
    for d in ds[1:]:
        out = Seq(out, d)
    return out


def par_all(ds: Sequence[Diagram]) -> Diagram:
    """Left-nested tensor of ``ds``; ``Empty`` when ``ds`` is empty."""
    if not ds:
        return EMPTY
    out = ds[0]
    for d in ds[1:]:
        out = Par(out, d)
    return out


def identity_n(n: int) -> Diagram:
    if n < 0:
        raise ValueError("wire count must be nonnegative")
    return par_all([ID] * n)


def permutation(p: Sequence[int]) -> Diagram:
    """Wire shuffle sending input ``i`` to output ``p[i]``.

    Built from layers of adjacent braids (odd-even transposition sort), so
    the term depth stays linear in the number of wires.
    """
    n = len(p)
    if sorted(p) != list(range(n)):
        raise ValueError(f"not a permutation of 0..{n - 1}: {list(p)}")
    # keys[pos] = target position of the wire currently at pos
    keys = list(p)
    layers = []
    for rnd in range(n):
        blocks = []
        pos = 0
        swapped = False
        if rnd % 2 == 1 and n > 0:
            blocks.append(ID)
            pos = 1
        while pos < n:
            if pos + 1 < n and keys[pos] > keys[pos + 1]:
                keys[pos], keys[pos + 1] = keys[pos + 1], keys[pos]
                blocks.append(BRAID)
                swapped = True
                pos += 2
            elif pos + 1 < n:
                blocks.extend([ID, ID])
                pos += 2
            else:
                blocks.append(ID)
                pos += 1
        if swapped:
            layers.append(par_all(blocks))
    if not layers:
        return identity_n(n)
    return seq_all(layers)


def render(d: Diagram, format: str = "dot") -> str:
    """Graphviz (``dot``) or TikZ (``tikz``) source for ``d``."""
    from .render import render as _render

    return _render(d, format)


def is_wiring_identity(d: Diagram) -> bool:
    """True for ``Empty`` and tensors built only from ``Id`` and ``Empty``."""
    if isinstance(d, Empty):
        return True
    if isinstance(d, Gen):
        return d.kind is Kind.ID
    if isinstance(d, Par):
        return is_wiring_identity(d.left) and is_wiring_identity(d.right)
    return False


def scalar_fields(d: Diagram) -> set:
    return {g.scalar.field for g in d.leaves() if g.scalar is not None}


def tensor_all(*ds: Diagram) -> Diagram:
    """Tensor that skips ``Empty`` factors."""
    return par_all([d for d in ds if not isinstance(d, Empty)])


def compose_all(*ds: Diagram) -> Diagram:
    """Composite that skips plain wiring identities; needs at least one part."""
    kept = [d for d in ds if not is_wiring_identity(d)]
    if not kept:
        return identity_n(ds[0].dom)
    out = kept[0]
    for d in kept[1:]:
        out = Seq(out, d)
    return out


def cap_block(n: int) -> Diagram:
    """``0 -> 2n`` diagram producing ``(a, a)`` for every ``a`` in ``k^n``."""
    route = [i // 2 + (n if i % 2 else 0) for i in range(2 * n)]
    return compose_all(par_all([CAP] * n), permutation(route)) if n else EMPTY


def cup_block(n: int) -> Diagram:
    """``2n -> 0`` diagram accepting ``(a, b)`` exactly when ``a = b``."""
    route = [2 * i if i < n else 2 * (i - n) + 1 for i in range(2 * n)]
    return compose_all(permutation(route), par_all([CUP] * n)) if n else EMPTY


def adjoint(d: Diagram) -> Diagram:
    """Turn ``d: m -> n`` around with cups and caps, giving ``n -> m``."""
    m, n = d.dom, d.cod
    return compose_all(
        tensor_all(identity_n(n), cap_block(m)),
        tensor_all(identity_n(n), d, identity_n(m)),
        tensor_all(cup_block(n), identity_n(m)),
    )


# zero and deletion turned around
COZERO = Seq(Par(ZERO, ID), CUP)
CODELETE = Seq(CAP, Par(DELETE, ID))
