"""
Braid words on n strands, permutations, the pure braid generators A_ij,
a handle-reduction word-problem solver and the combing normal form.

Conventions used throughout the package:

* Strands and positions are numbered from 1.
* ``s_k`` crosses the strand at position k OVER the strand at position k+1.
* Words are read bottom to top; ``compose(a, b)`` puts ``b`` on top of ``a``.
* ``A_ij = (s_{j-1} ... s_{i+1}) s_i^2 (s_{i+1}^-1 ... s_{j-1}^-1)``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import InputError, PurityError

OVER = "over"
UNDER = "under"
DOUBLE = "double"

Letter = tuple[int, int]          # (generator index, sign)
FreeLetter = tuple[int, int]      # (free generator index i of A_{i,nu}, sign)


# -- permutations -----------------------------------------------------------

@dataclass(frozen=True)
class Permutation:
    """A bijection of {1..n}, stored as the tuple of images."""

    images: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.images) != list(range(1, len(self.images) + 1)):
            raise InputError(f"not a permutation: {self.images}")

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(1, n + 1)))

    @classmethod
    def transposition(cls, n: int, a: int, b: int) -> "Permutation":
        images = list(range(1, n + 1))
        images[a - 1], images[b - 1] = b, a
        return cls(tuple(images))

    @classmethod
    def from_cycles(cls, n: int, cycles: Iterable[Sequence[int]]) -> "Permutation":
        images = list(range(1, n + 1))
        seen: set[int] = set()
        for cyc in cycles:
            for idx, a in enumerate(cyc):
                if not 1 <= a <= n or a in seen:
                    raise InputError(f"bad cycle entry {a} for n={n}")
                seen.add(a)
                images[a - 1] = cyc[(idx + 1) % len(cyc)]
        return cls(tuple(images))

    @property
    def size(self) -> int:
        return len(self.images)

    def __call__(self, x: int) -> int:
        return self.images[x - 1]

    def then(self, other: "Permutation") -> "Permutation":
        """Apply ``self`` first, then ``other`` (i.e. ``other o self``)."""
        if other.size != self.size:
            raise InputError("permutation size mismatch")
        return Permutation(tuple(other(self(x)) for x in range(1, self.size + 1)))

    def inverse(self) -> "Permutation":
        inv = [0] * self.size
        for x, y in enumerate(self.images, start=1):
            inv[y - 1] = x
        return Permutation(tuple(inv))

    def is_identity(self) -> bool:
        return all(x == y for x, y in enumerate(self.images, start=1))

    def cycles(self) -> list[tuple[int, ...]]:
        seen = [False] * (self.size + 1)
        out = []
        for start in range(1, self.size + 1):
            if seen[start]:
                continue
            cyc = []
            x = start
            while not seen[x]:
                seen[x] = True
                cyc.append(x)
                x = self(x)
            out.append(tuple(cyc))
        return out

    def cycle_count(self) -> int:
        return len(self.cycles())

    def cycle_notation(self) -> str:
        if self.size == 0:
            return "()"
        return "".join("(" + " ".join(map(str, c)) + ")" for c in self.cycles())

    def __str__(self):
        return self.cycle_notation()


def parse_permutation(text: str, n: int | None = None) -> Permutation:
    """Parse ``(1)(2 3 4)``, ``(1)(234)`` or an image list ``[2,1,3]`` / ``2 1 3``."""
    text = text.strip()
    if text.startswith("("):
        groups = re.findall(r"\(([^()]*)\)", text)
        if re.sub(r"\([^()]*\)", "", text).strip():
            raise InputError(f"malformed cycle notation: {text!r}")
        cycles = []
        for g in groups:
            parts = [p for p in re.split(r"[\s,]+", g.strip()) if p]
            if len(parts) == 1 and len(parts[0]) > 1 and parts[0].isdigit():
                parts = list(parts[0])
            try:
                cycles.append([int(p) for p in parts])
            except ValueError:
                raise InputError(f"malformed cycle notation: {text!r}") from None
        size = n if n is not None else max((a for c in cycles for a in c), default=0)
        return Permutation.from_cycles(size, [c for c in cycles if c])
    body = text.strip("[]")
    try:
        images = tuple(int(p) for p in re.split(r"[\s,]+", body.strip()) if p)
    except ValueError:
        raise InputError(f"malformed permutation: {text!r}") from None
    perm = Permutation(images)
    if n is not None and perm.size != n:
        raise InputError(f"permutation has size {perm.size}, expected {n}")
    return perm


# -- words -------------------------------------------------------------------

@dataclass(frozen=True)
class BraidWord:
    strands: int
    letters: tuple[Letter, ...] = ()

    def __post_init__(self):
        if self.strands < 1:
            raise InputError("a braid needs at least one strand")
        for k, e in self.letters:
            if not 1 <= k <= self.strands - 1:
                raise InputError(f"generator index {k} out of range for n={self.strands}")
            if e not in (1, -1):
                raise InputError(f"bad sign {e}")

    def __len__(self):
        return len(self.letters)

    def __str__(self):
        return format_braid(self)


@dataclass(frozen=True)
class SingularBraidWord:
    strands: int
    letters: tuple[tuple[int, str], ...] = ()

    def __post_init__(self):
        for k, mark in self.letters:
            if not 1 <= k <= self.strands - 1:
                raise InputError(f"generator index {k} out of range for n={self.strands}")
            if mark not in (OVER, UNDER, DOUBLE):
                raise InputError(f"bad mark {mark!r}")

    @property
    def double_points(self) -> int:
        return sum(1 for _, mark in self.letters if mark == DOUBLE)

    def resolution(self, double_as: int = 1) -> BraidWord:
        """Replace every double point by ``s_k^double_as``."""
        letters = []
        for k, mark in self.letters:
            if mark == OVER:
                letters.append((k, 1))
            elif mark == UNDER:
                letters.append((k, -1))
            else:
                letters.append((k, double_as))
        return BraidWord(self.strands, tuple(letters))


@dataclass(frozen=True)
class PureGeneratorWord:
    strands: int
    letters: tuple[tuple[tuple[int, int], int], ...] = ()

    def __post_init__(self):
        for (i, j), e in self.letters:
            if not 1 <= i < j <= self.strands or e not in (1, -1):
                raise InputError(f"bad pure generator A({i},{j})^{e}")

    def to_artin(self) -> BraidWord:
        out: list[Letter] = []
        for (i, j), e in self.letters:
            w = pure_generator_artin(i, j, self.strands)
            out.extend(w.letters if e == 1 else invert(w).letters)
        return BraidWord(self.strands, tuple(out))


_HEADER = re.compile(r"\s*n\s*=\s*(\d+)\s*;")
_TOKEN = re.compile(r"\S+")
_BRAID_TOKEN = re.compile(r"([sd])(\d+)(\^-1)?\Z")


def _parse_word(text: str, singular: bool) -> tuple[int, list[tuple[int, str]]]:
    m = _HEADER.match(text)
    if not m:
        raise InputError("expected header 'n=<int>;'", position=0)
    n = int(m.group(1))
    if n < 1:
        raise InputError("strand count must be positive", position=m.start(1))
    letters = []
    for tok in _TOKEN.finditer(text, m.end()):
        mm = _BRAID_TOKEN.match(tok.group())
        if not mm or (mm.group(1) == "d" and (not singular or mm.group(3))):
            raise InputError(f"malformed token {tok.group()!r}", position=tok.start())
        k = int(mm.group(2))
        if not 1 <= k <= n - 1:
            raise InputError(f"index {k} out of range for n={n}", position=tok.start(), kind="range")
        if mm.group(1) == "d":
            letters.append((k, DOUBLE))
        else:
            letters.append((k, UNDER if mm.group(3) else OVER))
    return n, letters


def parse_braid(text: str) -> BraidWord:
    n, letters = _parse_word(text, singular=False)
    return BraidWord(n, tuple((k, 1 if mark == OVER else -1) for k, mark in letters))


def parse_singular_braid(text: str) -> SingularBraidWord:
    n, letters = _parse_word(text, singular=True)
    return SingularBraidWord(n, tuple(letters))


def format_braid(b: BraidWord) -> str:
    toks = [f"s{k}" if e == 1 else f"s{k}^-1" for k, e in b.letters]
    return " ".join([f"n={b.strands};"] + toks)


def format_singular_braid(s: SingularBraidWord) -> str:
    names = {OVER: "s{}", UNDER: "s{}^-1", DOUBLE: "d{}"}
    return " ".join([f"n={s.strands};"] + [names[mark].format(k) for k, mark in s.letters])


# -- group structure ---------------------------------------------------------

def underlying_permutation(b: BraidWord) -> Permutation:
    """Map each starting position to the position where that strand ends."""
    pos = list(range(b.strands + 1))   # pos[label] = current position
    at = list(range(b.strands + 1))    # at[position] = label
    for k, _ in b.letters:
        x, y = at[k], at[k + 1]
        at[k], at[k + 1] = y, x
        pos[x], pos[y] = k + 1, k
    return Permutation(tuple(pos[1:]))


def is_pure(b: BraidWord) -> bool:
    return underlying_permutation(b).is_identity()


def pure_generator_artin(i: int, j: int, n: int) -> BraidWord:
    if not 1 <= i < j <= n:
        raise InputError(f"A({i},{j}) needs 1 <= i < j <= n={n}", kind="range")
    up = [(k, 1) for k in range(j - 1, i, -1)]
    down = [(k, -1) for k in range(i + 1, j)]
    return BraidWord(n, tuple(up + [(i, 1), (i, 1)] + down))


def compose(a: BraidWord, b: BraidWord) -> BraidWord:
    if a.strands != b.strands:
        raise InputError(f"strand mismatch: {a.strands} vs {b.strands}")
    return BraidWord(a.strands, a.letters + b.letters)


def invert(a: BraidWord) -> BraidWord:
    return BraidWord(a.strands, tuple((k, -e) for k, e in reversed(a.letters)))


def free_reduce(word: Iterable[tuple[int, int]]) -> list[tuple[int, int]]:
    out: list[tuple[int, int]] = []
    for g, e in word:
        if out and out[-1][0] == g and out[-1][1] == -e:
            out.pop()
        else:
            out.append((g, e))
    return out


# -- word problem -----------------------------------------------------------

def _find_first_handle(word: list[int]) -> tuple[int, int] | None:
    """Locate the handle whose closing letter is leftmost.

    Letters are signed generator indices. A handle is ``s_i^e w s_i^-e`` with
    every letter of ``w`` of index > i. The one ending first is permitted.
    """
    # last[i] = position of the most recent s_i^{+-1} not yet blocked
    last: dict[int, int] = {}
    for pos, x in enumerate(word):
        i = abs(x)
        j = last.get(i)
        if j is not None and word[j] == -x:
            return j, pos
        last[i] = pos
        # a letter of index i blocks handles of every index > i
        for k in [k for k in last if k > i]:
            del last[k]
    return None


def handle_reduce(word: Sequence[int]) -> list[int]:
    """Dehornoy handle reduction to a handle-free word.

    The result is empty iff the input represents the trivial braid; a
    nonempty handle-free word is sigma-positive or sigma-negative.
    """
    w = [x for x in free_reduce((abs(x), 1 if x > 0 else -1) for x in word)]
    w = [g * e for g, e in w]
    while True:
        h = _find_first_handle(w)
        if h is None:
            return w
        start, end = h
        i = abs(w[start])
        e = 1 if w[start] > 0 else -1
        middle = []
        for x in w[start + 1:end]:
            if abs(x) == i + 1:
                d = 1 if x > 0 else -1
                middle.extend([-e * (i + 1), d * i, e * (i + 1)])
            else:
                middle.append(x)
        w = w[:start] + middle + w[end + 1:]
        w = [g * s for g, s in free_reduce((abs(x), 1 if x > 0 else -1) for x in w)]


def is_trivial(b: BraidWord) -> bool:
    return not handle_reduce([k * e for k, e in b.letters])


def braids_equal(a: BraidWord, b: BraidWord) -> bool:
    return is_trivial(compose(a, invert(b)))


# -- strand forgetting and combing -----------------------------------------

def _require_pure(b: BraidWord) -> None:
    if not is_pure(b):
        raise PurityError(f"braid is not pure: permutation {underlying_permutation(b)}")


def remove_strand(b: BraidWord, k: int) -> BraidWord:
    _require_pure(b)
    if not 1 <= k <= b.strands:
        raise InputError(f"strand {k} out of range for n={b.strands}", kind="range")
    if b.strands == 1:
        raise InputError("cannot remove the only strand", kind="range")
    p = k
    out: list[Letter] = []
    for g, e in b.letters:
        if g == p:
            p = g + 1
        elif g + 1 == p:
            p = g
        elif g > p:
            out.append((g - 1, e))
        else:
            out.append((g, e))
    return BraidWord(b.strands - 1, tuple(out))


@dataclass(frozen=True)
class CombedForm:
    """layers[nu] is a freely reduced word in A_{i,nu}, i < nu, as (i, sign) pairs."""

    strands: int
    layers: tuple[tuple[FreeLetter, ...], ...]   # index 0 <-> nu = 2

    def layer(self, nu: int) -> tuple[FreeLetter, ...]:
        return self.layers[nu - 2]

    def __str__(self):
        return format_combed(self)


def _conjugate_letter(i: int, n: int, k: int, e: int) -> list[FreeLetter]:
    """Express ``s_k^-e A_{i,n} s_k^e`` in the free generators A_{., n}.

    Valid for k <= n - 2. Derived from ``s_k A_{k,n} s_k^-1 = A_{k+1,n}`` and
    ``s_k`` commuting with the loop ``A_{k,n} A_{k+1,n}``.
    """
    if i != k and i != k + 1:
        return [(i, 1)]
    if e == -1:
        # s_k A s_k^-1
        if i == k:
            return [(k + 1, 1)]
        return [(k + 1, -1), (k, 1), (k + 1, 1)]
    # s_k^-1 A s_k
    if i == k + 1:
        return [(k, 1)]
    return [(k, 1), (k + 1, 1), (k, -1)]


def _conjugate_word(word: list[FreeLetter], n: int, k: int, e: int) -> list[FreeLetter]:
    out: list[FreeLetter] = []
    for i, s in word:
        image = _conjugate_letter(i, n, k, e)
        if s == -1:
            image = [(g, -x) for g, x in reversed(image)]
        out.extend(image)
    return free_reduce(out)


def _split_top_strand(b: BraidWord) -> tuple[BraidWord, list[FreeLetter]]:
    """Write pure ``b`` as ``embed(R) * M`` with M in the free group on A_{i,n}.

    Scans the word while maintaining ``prefix = embed(R) * M * C_p`` where the
    strand starting at n sits at position p and ``C_p = s_{n-1} ... s_p``.
    """
    n = b.strands
    p = n
    rest: list[Letter] = []
    free: list[FreeLetter] = []
    for g, e in b.letters:
        if g == p - 1:
            if e == -1:
                free.append((p - 1, -1))
            p -= 1
        elif g == p:
            if e == 1:
                free.append((p, 1))
            p += 1
        else:
            shifted = g - 1 if g > p else g
            rest.append((shifted, e))
            free = _conjugate_word(free, n, shifted, e)
    assert p == n
    return BraidWord(n - 1, tuple(rest)), free_reduce(free)


def comb(b: BraidWord) -> CombedForm:
    _require_pure(b)
    layers: list[tuple[FreeLetter, ...]] = []
    current = b
    while current.strands > 1:
        current, word = _split_top_strand(current)
        layers.append(tuple(word))
    layers.reverse()
    return CombedForm(b.strands, tuple(layers))


def combed_to_artin(c: CombedForm) -> BraidWord:
    """Multiply the layers for nu = 2..n, expanding each A_{i,nu}."""
    letters: list[Letter] = []
    for nu in range(2, c.strands + 1):
        for i, e in c.layer(nu):
            w = pure_generator_artin(i, nu, c.strands)
            letters.extend(w.letters if e == 1 else invert(w).letters)
    return BraidWord(c.strands, tuple(letters))


def combed_equal(a: CombedForm, b: CombedForm) -> bool:
    if a.strands != b.strands:
        raise InputError("strand mismatch")
    return a.layers == b.layers


def format_combed(c: CombedForm) -> str:
    lines = []
    for nu in range(2, c.strands + 1):
        toks = [f"A({i},{nu})^{'+1' if e == 1 else '-1'}" for i, e in c.layer(nu)]
        lines.append(" ".join([f"nu={nu}:"] + toks))
    return "\n".join(lines)


# -- singular braids --------------------------------------------------------

def chord_diagram_of_singular(s: SingularBraidWord):
    """Chords between the starting positions of the strands meeting at each double point."""
    from .chords import ChordDiagram

    _require_pure(s.resolution())
    at = list(range(s.strands + 1))
    chords = []
    for k, mark in s.letters:
        if mark == DOUBLE:
            chords.append((at[k], at[k + 1]))
        at[k], at[k + 1] = at[k + 1], at[k]
    return ChordDiagram.of(s.strands, chords)
