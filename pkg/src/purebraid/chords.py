"""
Horizontal chord diagrams on n strands and their rational linear combinations.

A diagram is an ordered tuple of chords read bottom to top; multiplication
stacks the second factor on top of the first. The quotient by the
commutation and 4T relations is handled by :func:`normal_form`, which
rewrites into the basis of non-decreasing diagrams.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache, total_ordering
from typing import Iterable, Iterator, Mapping

from .errors import InputError

Chord = tuple[int, int]


def chord(i: int, j: int) -> Chord:
    if i == j:
        raise InputError(f"chord t({i},{j}) needs distinct endpoints")
    return (i, j) if i < j else (j, i)


def order_of(c: Chord) -> int:
    return max(c)


@total_ordering
@dataclass(frozen=True)
class ChordDiagram:
    strands: int
    chords: tuple[Chord, ...] = ()

    def __post_init__(self):
        for i, j in self.chords:
            if not (1 <= i < j <= self.strands):
                raise InputError(f"chord t({i},{j}) invalid on {self.strands} strands", kind="range")

    @classmethod
    def of(cls, strands: int, chords: Iterable[tuple[int, int]]) -> "ChordDiagram":
        return cls(strands, tuple(chord(i, j) for i, j in chords))

    @property
    def degree(self) -> int:
        return len(self.chords)

    def __mul__(self, other: "ChordDiagram") -> "ChordDiagram":
        if other.strands != self.strands:
            raise InputError("strand mismatch")
        return ChordDiagram(self.strands, self.chords + other.chords)

    def sort_key(self):
        return (self.degree, tuple(profile(self)), self.chords)

    def __lt__(self, other: "ChordDiagram"):
        return (self.strands, self.sort_key()) < (other.strands, other.sort_key())

    def __str__(self):
        return format_diagram(self)


@dataclass(frozen=True)
class DiagramCombination:
    """Finite formal sum of diagrams with nonzero rational coefficients."""

    strands: int
    terms: Mapping[ChordDiagram, Fraction] = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for d, c in self.terms.items():
            if d.strands != self.strands:
                raise InputError("all diagrams in a combination must share the strand count")
            c = Fraction(c)
            if c:
                clean[d] = c
        object.__setattr__(self, "terms", dict(sorted(clean.items())))

    @classmethod
    def zero(cls, strands: int) -> "DiagramCombination":
        return cls(strands, {})

    @classmethod
    def unit(cls, strands: int) -> "DiagramCombination":
        return cls(strands, {ChordDiagram(strands): Fraction(1)})

    @classmethod
    def of(cls, d: ChordDiagram, coefficient=1) -> "DiagramCombination":
        return cls(d.strands, {d: Fraction(coefficient)})

    @classmethod
    def t(cls, strands: int, i: int, j: int) -> "DiagramCombination":
        return cls.of(ChordDiagram.of(strands, [(i, j)]))

    def is_zero(self) -> bool:
        return not self.terms

    def degrees(self) -> set[int]:
        return {d.degree for d in self.terms}

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def _check(self, other: "DiagramCombination"):
        if other.strands != self.strands:
            raise InputError(f"strand mismatch: {self.strands} vs {other.strands}")

    def __add__(self, other: "DiagramCombination") -> "DiagramCombination":
        self._check(other)
        out = dict(self.terms)
        for d, c in other.terms.items():
            out[d] = out.get(d, 0) + c
        return DiagramCombination(self.strands, out)

    def __neg__(self):
        return DiagramCombination(self.strands, {d: -c for d, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, factor) -> "DiagramCombination":
        factor = Fraction(factor)
        return DiagramCombination(self.strands, {d: c * factor for d, c in self.terms.items()})

    def __rmul__(self, factor):
        return self.scale(factor)

    def __mul__(self, other):
        if isinstance(other, DiagramCombination):
            return multiply(self, other)
        return self.scale(other)

    def __eq__(self, other):
        if not isinstance(other, DiagramCombination):
            return NotImplemented
        return self.strands == other.strands and self.terms == other.terms

    def __hash__(self):
        return hash((self.strands, tuple(self.terms.items())))

    def __str__(self):
        return format_combination(self)


def multiply(a: DiagramCombination, b: DiagramCombination) -> DiagramCombination:
    a._check(b)
    out: dict[ChordDiagram, Fraction] = {}
    for d1, c1 in a.terms.items():
        for d2, c2 in b.terms.items():
            d = d1 * d2
            out[d] = out.get(d, 0) + c1 * c2
    return DiagramCombination(a.strands, out)


def _monomial(strands: int, *chords: Chord) -> DiagramCombination:
    return DiagramCombination.of(ChordDiagram(strands, tuple(chord(*c) for c in chords)))


def relation_commute(i: int, j: int, k: int, l: int, n: int) -> DiagramCombination:
    """t^{ij} t^{kl} - t^{kl} t^{ij} for four distinct indices."""
    if len({i, j, k, l}) != 4:
        raise InputError(f"indices {(i, j, k, l)} are not distinct")
    if max(i, j, k, l) > n or min(i, j, k, l) < 1:
        raise InputError(f"indices out of range for n={n}", kind="range")
    return _monomial(n, (i, j), (k, l)) - _monomial(n, (k, l), (i, j))


def relation_4t(i: int, j: int, k: int, n: int) -> DiagramCombination:
    """[t^{ik} + t^{jk}, t^{ij}] for three distinct indices."""
    if len({i, j, k}) != 3:
        raise InputError(f"indices {(i, j, k)} are not distinct")
    if max(i, j, k) > n or min(i, j, k) < 1:
        raise InputError(f"indices out of range for n={n}", kind="range")
    return (_monomial(n, (i, k), (i, j)) + _monomial(n, (j, k), (i, j))
            - _monomial(n, (i, j), (i, k)) - _monomial(n, (i, j), (j, k)))


def is_flat(d: ChordDiagram) -> bool:
    return len({order_of(c) for c in d.chords}) <= 1


def is_non_decreasing(d: ChordDiagram) -> bool:
    orders = [order_of(c) for c in d.chords]
    return all(a <= b for a, b in zip(orders, orders[1:]))


def profile(d: ChordDiagram) -> list[int]:
    """Chord counts per order, listed from order n down to order 1."""
    counts = [0] * (d.strands + 1)
    for c in d.chords:
        counts[order_of(c)] += 1
    return counts[:0:-1]


def precedes(d1: ChordDiagram, d2: ChordDiagram) -> bool:
    if d1.degree != d2.degree or d1.strands != d2.strands:
        raise InputError("precedes compares diagrams of equal degree and strand count")
    return (profile(d1), d1.chords) < (profile(d2), d2.chords)


def enumerate_non_decreasing(n: int, m: int) -> list[ChordDiagram]:
    if n < 1 or m < 0:
        raise InputError("need n >= 1 and m >= 0", kind="range")
    out = []
    for chords in itertools.combinations_with_replacement(range(2, n + 1), m):
        # chords holds the order of each position; fill in the lower endpoints
        for lows in itertools.product(*[range(1, nu) for nu in chords]):
            out.append(ChordDiagram(n, tuple(zip(lows, chords))))
    out.sort(key=lambda d: (profile(d), d.chords))
    return out


# -- straightening -----------------------------------------------------------

def _rewrite_at(chords: tuple[Chord, ...], p: int) -> list[tuple[int, tuple[Chord, ...]]]:
    """Resolve the inversion chords[p] (higher order) followed by chords[p+1]."""
    hi, lo = chords[p], chords[p + 1]
    head, tail = chords[:p], chords[p + 2:]
    if not set(hi) & set(lo):
        return [(1, head + (lo, hi) + tail)]
    nu = order_of(hi)
    (s,) = set(hi) & set(lo)
    o = lo[0] if lo[1] == s else lo[1]
    # t^{s nu} t^{s o} = t^{s o} t^{s nu} + t^{o nu} t^{s nu} - t^{s nu} t^{o nu}
    return [
        (1, head + (lo, hi) + tail),
        (1, head + (chord(o, nu), hi) + tail),
        (-1, head + (hi, chord(o, nu)) + tail),
    ]


def _inversions(chords: tuple[Chord, ...]) -> list[int]:
    return [p for p in range(len(chords) - 1) if order_of(chords[p]) > order_of(chords[p + 1])]


@lru_cache(maxsize=None)
def _nf_monomial(chords: tuple[Chord, ...], strategy: str) -> tuple[tuple[tuple[Chord, ...], int], ...]:
    inv = _inversions(chords)
    if not inv:
        return ((chords, 1),)
    if strategy == "leftmost":
        p = inv[0]
    elif strategy == "rightmost":
        p = inv[-1]
    else:
        raise ValueError(f"unknown strategy {strategy!r}")
    acc: dict[tuple[Chord, ...], int] = {}
    for coeff, word in _rewrite_at(chords, p):
        for w, c in _nf_monomial(word, strategy):
            acc[w] = acc.get(w, 0) + coeff * c
    return tuple((w, c) for w, c in acc.items() if c)


def normal_form(x: DiagramCombination, strategy: str = "leftmost") -> DiagramCombination:
    """Rewrite ``x`` modulo the relations into non-decreasing diagrams."""
    out: dict[ChordDiagram, Fraction] = {}
    for d, c in x.terms.items():
        for w, k in _nf_monomial(d.chords, strategy):
            key = ChordDiagram(x.strands, w)
            out[key] = out.get(key, 0) + c * k
    return DiagramCombination(x.strands, out)


# -- cabling -----------------------------------------------------------------

@dataclass(frozen=True)
class CablingSpec:
    k: tuple[int, ...]

    def __post_init__(self):
        if any(x < 0 for x in self.k):
            raise InputError("cabling multiplicities must be non-negative")

    @property
    def offsets(self) -> tuple[int, ...]:
        return tuple(itertools.accumulate((0,) + self.k[:-1])) if self.k else ()

    @property
    def total(self) -> int:
        return sum(self.k)

    def bundle(self, i: int) -> range:
        """Cabled strands (1-based) replacing strand i."""
        l = self.offsets[i - 1]
        return range(l + 1, l + self.k[i - 1] + 1)

    def owner(self) -> list[int]:
        """owner[x - 1] = original strand whose bundle contains cabled strand x."""
        return [i for i, ki in enumerate(self.k, start=1) for _ in range(ki)]


def delta_cabling(spec: CablingSpec, x: DiagramCombination) -> DiagramCombination:
    if len(spec.k) != x.strands:
        raise InputError(f"cabling vector has length {len(spec.k)}, diagram has {x.strands} strands")
    total = spec.total
    out: dict[ChordDiagram, Fraction] = {}
    for d, c in x.terms.items():
        choices = [[(a, b) for a in spec.bundle(i) for b in spec.bundle(j)] for i, j in d.chords]
        for lifted in itertools.product(*choices):
            key = ChordDiagram(total, lifted)
            out[key] = out.get(key, 0) + c
    return DiagramCombination(total, out)


def compose_cabling(inner: CablingSpec, outer: CablingSpec) -> CablingSpec:
    """The bundling equal to applying ``inner`` and then ``outer``."""
    if len(outer.k) != inner.total:
        raise InputError("outer cabling must act on the strands produced by the inner one")
    return CablingSpec(tuple(sum(outer.k[x - 1] for x in inner.bundle(i))
                             for i in range(1, len(inner.k) + 1)))


# -- text formats ------------------------------------------------------------

_CHORD_TOKEN = re.compile(r"t\(\s*(\d+)\s*,\s*(\d+)\s*\)")


def _parse_chords(body: str, n: int, offset: int) -> list[Chord]:
    chords = []
    for m in re.finditer(r"t\([^)]*\)|\S+", body):
        mm = _CHORD_TOKEN.fullmatch(m.group())
        if not mm:
            raise InputError(f"malformed chord token {m.group()!r}", position=offset + m.start())
        i, j = int(mm.group(1)), int(mm.group(2))
        if i == j or not (1 <= i <= n and 1 <= j <= n):
            raise InputError(f"chord t({i},{j}) invalid for n={n}", position=offset + m.start(), kind="range")
        chords.append(chord(i, j))
    return chords


def parse_diagram(text: str) -> ChordDiagram:
    m = re.match(r"\s*n\s*=\s*(\d+)\s*;", text)
    if not m:
        raise InputError("expected header 'n=<int>;'", position=0)
    n = int(m.group(1))
    return ChordDiagram(n, tuple(_parse_chords(text[m.end():], n, m.end())))


def parse_combination(text: str) -> DiagramCombination:
    """Parse ``n=3; 1*[t(1,2) t(1,3)] - 2/3*[t(2,3)] + [ ]``, or a bare diagram."""
    m = re.match(r"\s*n\s*=\s*(\d+)\s*;", text)
    if not m:
        raise InputError("expected header 'n=<int>;'", position=0)
    n = int(m.group(1))
    body = text[m.end():]
    if "[" not in body:
        if body.strip() == "0":
            return DiagramCombination.zero(n)
        return DiagramCombination.of(ChordDiagram(n, tuple(_parse_chords(body, n, m.end()))))
    term = re.compile(r"\s*([+-])?\s*(\d+(?:/\d+)?)?\s*\*?\s*\[([^\]]*)\]")
    pos = 0
    out = DiagramCombination.zero(n)
    first = True
    while pos < len(body):
        if not body[pos:].strip():
            break
        tm = term.match(body, pos)
        if not tm or (not first and tm.group(1) is None):
            raise InputError("malformed combination term", position=m.end() + pos)
        coeff = Fraction(tm.group(2)) if tm.group(2) else Fraction(1)
        if tm.group(1) == "-":
            coeff = -coeff
        chords = _parse_chords(tm.group(3), n, m.end() + tm.start(3))
        out = out + DiagramCombination.of(ChordDiagram(n, tuple(chords)), coeff)
        pos = tm.end()
        first = False
    return out


def _format_chords(d: ChordDiagram) -> str:
    return " ".join(f"t({i},{j})" for i, j in d.chords)


def format_diagram(d: ChordDiagram) -> str:
    body = _format_chords(d)
    return f"n={d.strands};" + (" " + body if body else "")


def format_combination(x: DiagramCombination, header: bool = True) -> str:
    parts = []
    for idx, (d, c) in enumerate(x.terms.items()):
        sign = "-" if c < 0 else "+"
        text = f"{abs(c)}*[{_format_chords(d)}]"
        if idx == 0:
            parts.append(("-" if c < 0 else "") + text)
        else:
            parts.append(f"{sign} {text}")
    body = " ".join(parts) if parts else "0"
    return f"n={x.strands}; {body}" if header else body


def iter_diagrams(n: int, m: int) -> Iterator[ChordDiagram]:
    """All degree-m diagrams on n strands."""
    pairs = list(itertools.combinations(range(1, n + 1), 2))
    for word in itertools.product(pairs, repeat=m):
        yield ChordDiagram(n, word)
