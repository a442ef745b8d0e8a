"""Permutations of {0, ..., n-1} stored as image tables.

Products act on the right: ``p * q`` first applies ``p`` and then ``q``,
so ``(p * q)(a) == q(p(a))``.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass

from twoclosure.errors import DegreeMismatch, MalformedCycleText, PointOutOfRange, RepeatedPoint

_CYCLE_RE = re.compile(r"\(([^()]*)\)")


@dataclass(frozen=True, slots=True)
class Permutation:
    images: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.images) != list(range(len(self.images))):
            raise ValueError(f"not a permutation: {self.images!r}")

    @classmethod
    def identity(cls, degree: int) -> Permutation:
        return cls(tuple(range(degree)))

    @classmethod
    def _trusted(cls, images) -> Permutation:
        # skips the bijection check; callers guarantee validity
        p = object.__new__(cls)
        object.__setattr__(p, "images", tuple(images))
        return p

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, point: int) -> int:
        return self.images[point]

    def __mul__(self, other: Permutation) -> Permutation:
        return compose(self, other)

    def __pow__(self, k: int) -> Permutation:
        base = self if k >= 0 else self.inverse()
        k = abs(k)
        result = Permutation.identity(self.degree)
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def inverse(self) -> Permutation:
        inv = [0] * len(self.images)
        for i, v in enumerate(self.images):
            inv[v] = i
        return Permutation._trusted(inv)

    def is_identity(self) -> bool:
        return all(i == v for i, v in enumerate(self.images))

    def cycles(self) -> list[tuple[int, ...]]:
        seen = set()
        out = []
        for start in range(len(self.images)):
            if start in seen or self.images[start] == start:
                continue
            cyc = [start]
            seen.add(start)
            j = self.images[start]
            while j != start:
                cyc.append(j)
                seen.add(j)
                j = self.images[j]
            out.append(tuple(cyc))
        return out

    def order(self) -> int:
        return math.lcm(1, *(len(c) for c in self.cycles()))

    def support(self) -> list[int]:
        return [i for i, v in enumerate(self.images) if i != v]

    def conjugate(self, x: Permutation) -> Permutation:
        """Return ``x^-1 * self * x``."""
        return x.inverse() * self * x

    def __str__(self) -> str:
        cyc = self.cycles()
        if not cyc:
            return "()"
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cyc)

    def __repr__(self) -> str:
        return f"Permutation({str(self)!r}, degree={self.degree})"


def compose(p: Permutation, q: Permutation) -> Permutation:
    if p.degree != q.degree:
        raise DegreeMismatch(f"degrees {p.degree} and {q.degree} differ")
    qi = q.images
    return Permutation._trusted(qi[a] for a in p.images)


def parse_permutation(text: str, degree: int) -> Permutation:
    """Parse disjoint-cycle notation such as ``"(0 1 2)(3 4)"``.

    Entries may be separated by spaces or commas.  Points not mentioned are
    fixed; the empty string and ``"()"`` both give the identity.
    """
    stripped = text.strip()
    images = list(range(degree))
    seen: set[int] = set()
    pos = 0
    for m in _CYCLE_RE.finditer(stripped):
        if stripped[pos:m.start()].strip():
            raise MalformedCycleText(f"unexpected text in {text!r}")
        pos = m.end()
        body = m.group(1).replace(",", " ").split()
        try:
            pts = [int(tok) for tok in body]
        except ValueError:
            raise MalformedCycleText(f"non-integer entry in {text!r}") from None
        for a in pts:
            if a < 0 or a >= degree:
                raise PointOutOfRange(f"point {a} not in 0..{degree - 1}")
            if a in seen:
                raise RepeatedPoint(f"point {a} repeated in {text!r}")
            seen.add(a)
        for i, a in enumerate(pts):
            images[a] = pts[(i + 1) % len(pts)]
    if stripped[pos:].strip():
        raise MalformedCycleText(f"unexpected text in {text!r}")
    return Permutation._trusted(images)


def format_perms(perms) -> str:
    return ", ".join(str(p) for p in perms)
