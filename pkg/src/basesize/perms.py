"""Permutations of {1..n}.

A :class:`Permutation` is a tuple subclass holding 0-based images, so that
``p[i]`` is the image of the internal point ``i``.  Everything that faces the
user (``images``, ``__call__``, cycle notation, file formats) is 1-based.

Products act on the right: ``a * b`` applies ``a`` first, then ``b``.
"""

from __future__ import annotations

from functools import reduce
from math import lcm
from typing import Iterable, Sequence


class Permutation(tuple):
    __slots__ = ()

    # -- construction -----------------------------------------------------

    @classmethod
    def from_images(cls, images: Sequence[int]) -> "Permutation":
        """Build from a 1-based image list; ``images[i-1]`` is the image of i."""
        n = len(images)
        seen = [False] * n
        raw = []
        for x in images:
            x = int(x)
            if not 1 <= x <= n or seen[x - 1]:
                raise ValueError(f"not a bijection on 1..{n}: {list(images)}")
            seen[x - 1] = True
            raw.append(x - 1)
        return cls(raw)

    @classmethod
    def from_cycles(cls, degree: int, cycles: Iterable[Sequence[int]]) -> "Permutation":
        """Build from 1-based cycles, e.g. ``from_cycles(4, [(1, 2, 3)])``."""
        img = list(range(degree))
        used = set()
        for cyc in cycles:
            cyc = [int(c) - 1 for c in cyc]
            for c in cyc:
                if not 0 <= c < degree or c in used:
                    raise ValueError(f"bad cycle {cyc} for degree {degree}")
                used.add(c)
            for a, b in zip(cyc, cyc[1:] + cyc[:1]):
                img[a] = b
        return cls(img)

    @classmethod
    def parse(cls, text: str, degree: int) -> "Permutation":
        """Parse GAP-style cycle notation such as ``(1,2,3)(4,5)``."""
        text = text.replace(" ", "")
        if text in ("", "()"):
            return cls.identity(degree)
        if not (text.startswith("(") and text.endswith(")")):
            raise ValueError(f"cannot parse cycles {text!r}")
        cycles = [[int(x) for x in c.split(",")] for c in text[1:-1].split(")(")]
        return cls.from_cycles(degree, cycles)

    @classmethod
    def identity(cls, degree: int) -> "Permutation":
        return cls(range(degree))

    # -- views ------------------------------------------------------------

    @property
    def degree(self) -> int:
        return len(self)

    @property
    def images(self) -> tuple[int, ...]:
        return tuple(x + 1 for x in self)

    def __call__(self, point: int) -> int:
        return self[point - 1] + 1

    def cycles(self) -> list[tuple[int, ...]]:
        """Nontrivial cycles, 1-based, each starting at its smallest point."""
        seen = [False] * len(self)
        out = []
        for i in range(len(self)):
            if seen[i] or self[i] == i:
                continue
            cyc = [i + 1]
            seen[i] = True
            j = self[i]
            while j != i:
                seen[j] = True
                cyc.append(j + 1)
                j = self[j]
            out.append(tuple(cyc))
        return out

    def cycle_type(self) -> tuple[int, ...]:
        return tuple(sorted((len(c) for c in self.cycles()), reverse=True))

    def __repr__(self) -> str:
        cyc = self.cycles()
        if not cyc:
            return "()"
        return "".join("(" + ",".join(map(str, c)) + ")" for c in cyc)

    # -- arithmetic -------------------------------------------------------

    def is_identity(self) -> bool:
        return all(i == x for i, x in enumerate(self))

    def __mul__(self, other):
        if not isinstance(other, tuple):
            return NotImplemented
        return compose(self, other)

    def __invert__(self) -> "Permutation":
        return invert(self)

    def inverse(self) -> "Permutation":
        return invert(self)

    def __pow__(self, k: int) -> "Permutation":
        return power(self, k)

    def conjugate(self, x: Sequence[int]) -> "Permutation":
        """``x^-1 * self * x``."""
        return Permutation(conj(self, x))

    def order(self) -> int:
        return element_order(self)

    def moved_points(self) -> list[int]:
        return [i + 1 for i, x in enumerate(self) if x != i]

    def sign(self) -> int:
        return -1 if sum(len(c) - 1 for c in self.cycles()) % 2 else 1


# Raw helpers on 0-based tuples.  Hot loops elsewhere call these directly.

def mul(a: Sequence[int], b: Sequence[int]) -> tuple[int, ...]:
    """Apply ``a`` then ``b``."""
    return tuple(map(b.__getitem__, a))


def inv(a: Sequence[int]) -> tuple[int, ...]:
    out = [0] * len(a)
    for i, x in enumerate(a):
        out[x] = i
    return tuple(out)


def conj(a: Sequence[int], x: Sequence[int]) -> tuple[int, ...]:
    """``x^-1 a x``: maps ``x[i]`` to ``x[a[i]]``."""
    out = [0] * len(a)
    for i, ai in enumerate(a):
        out[x[i]] = x[ai]
    return tuple(out)


def is_identity(a: Sequence[int]) -> bool:
    return all(i == x for i, x in enumerate(a))


def identity(n: int) -> tuple[int, ...]:
    return tuple(range(n))


def power(a: Sequence[int], k: int) -> Permutation:
    if k < 0:
        a, k = inv(a), -k
    result = identity(len(a))
    base = tuple(a)
    while k:
        if k & 1:
            result = mul(result, base)
        base = mul(base, base)
        k >>= 1
    return Permutation(result)


def compose(a: Sequence[int], b: Sequence[int]) -> Permutation:
    """The permutation mapping i to b(a(i))."""
    if len(a) != len(b):
        raise ValueError(f"degree mismatch: {len(a)} vs {len(b)}")
    return Permutation(mul(a, b))


def invert(a: Sequence[int]) -> Permutation:
    return Permutation(inv(a))


def element_order(a: Sequence[int]) -> int:
    """Least m >= 1 with a^m = 1, the lcm of the cycle lengths."""
    seen = [False] * len(a)
    lengths = []
    for i in range(len(a)):
        if seen[i]:
            continue
        k = 0
        j = i
        while not seen[j]:
            seen[j] = True
            j = a[j]
            k += 1
        lengths.append(k)
    return reduce(lcm, lengths, 1)
