"""
gl(N) weight systems coming from tensor powers of the defining representation.

Every value is a polynomial in the symbol N. Three routes compute the same
numbers and are checked against each other in the test-suite:

* :func:`w_sigma` counts cycles of a permutation (chords act as
  transpositions from the bottom up, then ``sigma`` closes the picture);
* :func:`w_k_sigma` sums :func:`w_sigma` over all liftings to a cabling;
* :func:`w_path` lifts chords onto the loops of a path and counts the
  resulting components with a union-find.
"""

from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .braid import Permutation
from .chords import (
    CablingSpec,
    ChordDiagram,
    DiagramCombination,
    chord,
    delta_cabling,
    enumerate_non_decreasing,
    is_non_decreasing,
    order_of,
)
from .errors import BudgetExceeded, InputError

DEFAULT_BUDGET = 10**8


@dataclass(frozen=True)
class NPolynomial:
    """Polynomial in N; ``coefficients[p]`` multiplies N^p."""

    coefficients: tuple = ()

    def __post_init__(self):
        cs = list(self.coefficients)
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coefficients", tuple(cs))

    @classmethod
    def monomial(cls, power: int, coefficient=1) -> "NPolynomial":
        return cls((0,) * power + (coefficient,))

    @classmethod
    def zero(cls) -> "NPolynomial":
        return cls(())

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def is_zero(self) -> bool:
        return not self.coefficients

    def __add__(self, other: "NPolynomial") -> "NPolynomial":
        a, b = self.coefficients, other.coefficients
        size = max(len(a), len(b))
        return NPolynomial(tuple((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)
                                 for i in range(size)))

    def __neg__(self):
        return NPolynomial(tuple(-c for c in self.coefficients))

    def __sub__(self, other):
        return self + (-other)

    def scale(self, factor) -> "NPolynomial":
        return NPolynomial(tuple(c * factor for c in self.coefficients))

    def __call__(self, n):
        return sum(c * n**p for p, c in enumerate(self.coefficients))

    def __str__(self):
        return format_polynomial(self)


def coeff(p: NPolynomial, power: int) -> int:
    """Coefficient of N^power."""
    if power < 0:
        raise InputError("power must be non-negative")
    return p.coefficients[power] if power < len(p.coefficients) else 0


def format_polynomial(p: NPolynomial) -> str:
    if p.is_zero():
        return "0"
    parts = []
    for power in range(p.degree, -1, -1):
        c = p.coefficients[power]
        if c == 0:
            continue
        mag = abs(c)
        if power == 0:
            body = str(mag)
        else:
            var = "N" if power == 1 else f"N^{power}"
            body = var if mag == 1 else f"{mag}*{var}"
        if not parts:
            parts.append(("-" if c < 0 else "") + body)
        else:
            parts.append(("- " if c < 0 else "+ ") + body)
    return " ".join(parts)


def _from_counts(counts: dict[int, int]) -> NPolynomial:
    if not counts:
        return NPolynomial.zero()
    top = max(counts)
    return NPolynomial(tuple(counts.get(p, 0) for p in range(top + 1)))


# -- paths -------------------------------------------------------------------

def _least_rotation(word: Sequence[int]) -> tuple[int, ...]:
    return min(tuple(word[i:]) + tuple(word[:i]) for i in range(len(word)))


@dataclass(frozen=True)
class ConnectedPath:
    """Cyclic word in the letters S_1..S_n, stored as its least rotation."""

    word: tuple[int, ...]

    def __post_init__(self):
        if not self.word:
            raise InputError("a connected path needs at least one letter")
        if any(x < 1 for x in self.word):
            raise InputError("path letters are positive strand indices")
        object.__setattr__(self, "word", _least_rotation(self.word))

    def __str__(self):
        return " ".join(f"S{x}" for x in self.word)


@dataclass(frozen=True)
class Path:
    """Unordered multiset of connected paths, kept sorted."""

    components: tuple[ConnectedPath, ...]

    def __post_init__(self):
        comps = tuple(sorted(self.components, key=lambda c: (len(c.word), c.word)))
        object.__setattr__(self, "components", comps)

    @classmethod
    def of(cls, *words: Iterable[int]) -> "Path":
        return cls(tuple(ConnectedPath(tuple(w)) for w in words))

    @property
    def letters(self) -> int:
        return sum(len(c.word) for c in self.components)

    def max_letter(self) -> int:
        return max((x for c in self.components for x in c.word), default=0)

    def __str__(self):
        return format_path(self)


def format_path(p: Path) -> str:
    return "{" + ", ".join(str(c) for c in p.components) + "}"


def parse_path(text: str) -> Path:
    text = text.strip()
    if not (text.startswith("{") and text.endswith("}")):
        raise InputError("a path is written as {S1, S1 S3 S3}", position=0)
    inner = text[1:-1]
    if not inner.strip():
        return Path(())
    words = []
    offset = 1
    for part in inner.split(","):
        compact = part.replace(" ", "")
        if not re.fullmatch(r"(S\d+)+", compact):
            raise InputError(f"malformed connected path {part.strip()!r}", position=offset)
        words.append([int(x) for x in re.findall(r"S(\d+)", compact)])
        offset += len(part) + 1
    return Path.of(*words)


def pair_to_path(spec: CablingSpec, sigma: Permutation) -> Path:
    """Read each cycle of sigma as the cyclic word of bundles it visits."""
    if sigma.size != spec.total:
        raise InputError(f"sigma acts on {sigma.size} points, cabling has {spec.total}")
    owner = spec.owner()
    return Path.of(*[[owner[a - 1] for a in cyc] for cyc in sigma.cycles()])


def path_to_pair(p: Path, n: int | None = None) -> tuple[CablingSpec, Permutation]:
    """A representative pair; the top of strand a is closed onto the bottom of sigma(a)."""
    n = p.max_letter() if n is None else n
    if p.max_letter() > n:
        raise InputError(f"path uses letter S{p.max_letter()} beyond n={n}", kind="range")
    k = [0] * n
    for c in p.components:
        for x in c.word:
            k[x - 1] += 1
    spec = CablingSpec(tuple(k))
    nxt = [iter(spec.bundle(i)) for i in range(1, n + 1)]
    images = [0] * spec.total
    for c in p.components:
        strands = [next(nxt[x - 1]) for x in c.word]
        for a, b in zip(strands, strands[1:] + strands[:1]):
            images[a - 1] = b
    return spec, Permutation(tuple(images))


# -- W_sigma and W_{k,sigma} --------------------------------------------------

def _closure_cycles(size: int, chords: Iterable[tuple[int, int]], sigma: Permutation) -> int:
    """Cycles of sigma o c_m o ... o c_1 with c_t the transposition of chord t."""
    f = list(range(size + 1))
    for a, b in chords:
        # post-compose with the transposition (a b)
        for x in range(1, size + 1):
            if f[x] == a:
                f[x] = b
            elif f[x] == b:
                f[x] = a
    g = [0] + [sigma(f[x]) for x in range(1, size + 1)]
    return Permutation(tuple(g[1:])).cycle_count()


def w_sigma(d: ChordDiagram, sigma: Permutation) -> NPolynomial:
    if sigma.size != d.strands:
        raise InputError(f"sigma on {sigma.size} points, diagram on {d.strands} strands")
    return NPolynomial.monomial(_closure_cycles(d.strands, d.chords, sigma))


def _liftings(d: ChordDiagram, spec: CablingSpec) -> list[list[tuple[int, int]]]:
    return [[(a, b) for a in spec.bundle(i) for b in spec.bundle(j)] for i, j in d.chords]


def w_k_sigma(d: ChordDiagram, spec: CablingSpec, sigma: Permutation) -> NPolynomial:
    """Sum of W_sigma over all liftings of d to the cabling (enumerated directly)."""
    if len(spec.k) != d.strands:
        raise InputError(f"cabling vector length {len(spec.k)} != {d.strands} strands")
    if sigma.size != spec.total:
        raise InputError(f"sigma on {sigma.size} points, cabling has {spec.total}")
    size = spec.total
    images = sigma.images
    counts: dict[int, int] = {}
    for lifted in itertools.product(*_liftings(d, spec)):
        f = list(range(size + 1))
        for a, b in lifted:
            for x in range(1, size + 1):
                if f[x] == a:
                    f[x] = b
                elif f[x] == b:
                    f[x] = a
        seen = [False] * (size + 1)
        c = 0
        for s in range(1, size + 1):
            if not seen[s]:
                c += 1
                x = s
                while not seen[x]:
                    seen[x] = True
                    x = images[f[x] - 1]
        counts[c] = counts.get(c, 0) + 1
    return _from_counts(counts)


def w_k_sigma_via_cabling(d: ChordDiagram, spec: CablingSpec, sigma: Permutation) -> NPolynomial:
    """W_sigma applied to the cabled combination Delta^k(d)."""
    cabled = delta_cabling(spec, DiagramCombination.of(d))
    total = NPolynomial.zero()
    for dd, c in cabled.terms.items():
        total = total + w_sigma(dd, sigma).scale(int(c) if c.denominator == 1 else c)
    return total


# -- W_P by lifting onto loops -----------------------------------------------

class _UnionFind:
    def __init__(self, size: int):
        self.parent = list(range(size))
        self.count = size

    def find(self, x: int) -> int:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[ra] = rb
            self.count -= 1


@dataclass(frozen=True)
class Lifting:
    """One lifting of a diagram to a path, with the data needed for bound checks."""

    sites: tuple[tuple[int, int], ...]   # (subinterval, subinterval) for each chord
    components: int
    crossing: bool          # two lifted chords interleave along the loops
    connecting: bool        # some chord joins two different connected paths


class _PathLayout:
    def __init__(self, p: Path):
        self.letter: list[int] = []
        self.next: list[int] = []
        self.component: list[int] = []
        for ci, comp in enumerate(p.components):
            start = len(self.letter)
            size = len(comp.word)
            for idx, x in enumerate(comp.word):
                self.letter.append(x)
                self.component.append(ci)
                self.next.append(start + (idx + 1) % size)
        self.by_letter: dict[int, list[int]] = {}
        for u, x in enumerate(self.letter):
            self.by_letter.setdefault(x, []).append(u)

    def choices(self, d: ChordDiagram) -> list[list[tuple[int, int]]]:
        return [[(u, v) for u in self.by_letter.get(i, []) for v in self.by_letter.get(j, [])]
                for i, j in d.chords]


def _count_components(layout: _PathLayout, sites: Sequence[tuple[int, int]], m: int) -> int:
    size = len(layout.letter)
    uf = _UnionFind(size * (m + 1))
    node = lambda u, t: u * (m + 1) + t
    for t, (u, v) in enumerate(sites, start=1):
        uf.union(node(u, t - 1), node(v, t))
        uf.union(node(v, t - 1), node(u, t))
        for w in range(size):
            if w != u and w != v:
                uf.union(node(w, t - 1), node(w, t))
    for u in range(size):
        uf.union(node(u, m), node(layout.next[u], 0))
    return uf.count


def _check_strands(d: ChordDiagram, p: Path) -> None:
    if p.max_letter() > d.strands:
        raise InputError(f"path letter S{p.max_letter()} exceeds {d.strands} strands", kind="range")


def iter_liftings(d: ChordDiagram, p: Path) -> Iterator[Lifting]:
    _check_strands(d, p)
    layout = _PathLayout(p)
    m = d.degree
    for sites in itertools.product(*layout.choices(d)):
        c = _count_components(layout, sites, m)
        # subintervals are numbered consecutively along each loop, so (u, t)
        # orders the endpoints along the loops
        arcs = [tuple(sorted(((u, t), (v, t)))) for t, (u, v) in enumerate(sites, start=1)]
        crossing = any(a1 < a2 < b1 < b2 or a2 < a1 < b2 < b1
                       for (a1, b1), (a2, b2) in itertools.combinations(arcs, 2))
        connecting = any(layout.component[u] != layout.component[v] for u, v in sites)
        yield Lifting(tuple(sites), c, crossing, connecting)


def w_path(d: ChordDiagram, p: Path) -> NPolynomial:
    _check_strands(d, p)
    layout = _PathLayout(p)
    m = d.degree
    counts: dict[int, int] = {}
    for sites in itertools.product(*layout.choices(d)):
        c = _count_components(layout, sites, m)
        counts[c] = counts.get(c, 0) + 1
    return _from_counts(counts)


def lifting_count(d: ChordDiagram, p: Path) -> int:
    mult: dict[int, int] = {}
    for comp in p.components:
        for x in comp.word:
            mult[x] = mult.get(x, 0) + 1
    return math.prod(mult.get(i, 0) * mult.get(j, 0) for i, j in d.chords)


def evaluate_combination(x: DiagramCombination, p: Path) -> NPolynomial:
    total = NPolynomial.zero()
    for d, c in x.terms.items():
        total = total + w_path(d, p).scale(int(c) if c.denominator == 1 else c)
    return total


# -- the separating family ---------------------------------------------------

def path_of_diagram(d: ChordDiagram) -> Path:
    """The path P(D) of a non-decreasing diagram: one loop per order 1..n."""
    if not is_non_decreasing(d):
        raise InputError(f"diagram {d} is not non-decreasing")
    lows: dict[int, list[int]] = {}
    for c in d.chords:
        lows.setdefault(order_of(c), []).append(min(c))
    words = []
    for nu in range(1, d.strands + 1):
        words.append(list(reversed(lows.get(nu, []))) + [nu])
    return Path.of(*words)


def flat_diagram(nu: int, lows: Sequence[int], n: int) -> ChordDiagram:
    return ChordDiagram(n, tuple(chord(i, nu) for i in lows))


def flat_path(nu: int, lows: Sequence[int]) -> Path:
    return Path.of(list(reversed(lows)) + [nu])


def flat_delta_check(nu: int, i_list: Sequence[int], j_list: Sequence[int], n: int) -> int:
    if len(i_list) != len(j_list):
        raise InputError("index lists must have equal length")
    if not 2 <= nu <= n or any(not 1 <= x < nu for x in list(i_list) + list(j_list)):
        raise InputError("indices must satisfy 1 <= i, j < nu <= n", kind="range")
    d = flat_diagram(nu, i_list, n)
    return coeff(w_path(d, flat_path(nu, j_list)), len(i_list) + 1)


@dataclass(frozen=True)
class SeparationMatrix:
    n: int
    m: int
    basis: tuple[ChordDiagram, ...]
    rows: tuple[tuple[int, ...], ...]

    def is_unitriangular(self) -> bool:
        size = len(self.rows)
        return all(self.rows[a][a] == 1 for a in range(size)) and all(
            self.rows[a][b] == 0 for a in range(size) for b in range(a + 1, size))

    def __str__(self):
        lines = [" ".join(str(x) for x in row) for row in self.rows]
        lines.append(f"unitriangular={'true' if self.is_unitriangular() else 'false'}")
        return "\n".join(lines)


def separation_cost(n: int, m: int) -> int:
    basis = enumerate_non_decreasing(n, m)
    paths = [path_of_diagram(d) for d in basis]
    per_lifting = (m + 1) * (m + n)
    return sum(lifting_count(d, p) * per_lifting for p in paths for d in basis)


def separation_matrix(n: int, m: int, budget: int = DEFAULT_BUDGET) -> SeparationMatrix:
    """Entry (a, b) is the coefficient of N^(m+n) in W_{P(D_a)}(D_b)."""
    if n < 2 or m < 0:
        raise InputError("separation_matrix needs n >= 2 and m >= 0", kind="range")
    cost = separation_cost(n, m)
    if cost > budget:
        raise BudgetExceeded(f"separation_matrix({n}, {m}) needs ~{cost} steps, budget is {budget}")
    basis = enumerate_non_decreasing(n, m)
    rows = []
    for da in basis:
        p = path_of_diagram(da)
        rows.append(tuple(coeff(w_path(db, p), m + n) for db in basis))
    return SeparationMatrix(n, m, tuple(basis), tuple(rows))


def iter_paths(n: int, max_letters: int) -> Iterator[Path]:
    """Every path on letters 1..n with 1..max_letters letters in total, each once."""
    necklaces: list[tuple[int, ...]] = []
    for length in range(1, max_letters + 1):
        seen = set()
        for word in itertools.product(range(1, n + 1), repeat=length):
            canon = _least_rotation(word)
            if canon not in seen:
                seen.add(canon)
                necklaces.append(canon)

    def extend(start: int, remaining: int, chosen: list[tuple[int, ...]]):
        if chosen:
            yield Path.of(*chosen)
        for idx in range(start, len(necklaces)):
            w = necklaces[idx]
            if len(w) <= remaining:
                yield from extend(idx, remaining - len(w), chosen + [w])

    yield from extend(0, max_letters, [])


