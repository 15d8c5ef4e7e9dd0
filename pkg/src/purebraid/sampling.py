"""Random braid words and equivalence-preserving rewrites for randomized checks."""

from __future__ import annotations

import random

from .braid import DOUBLE, OVER, UNDER, BraidWord, SingularBraidWord, is_pure


def random_word(rng: random.Random, n: int, length: int) -> BraidWord:
    return BraidWord(n, tuple((rng.randint(1, n - 1), rng.choice((1, -1))) for _ in range(length)))


def random_pure_word(rng: random.Random, n: int, max_length: int, min_length: int = 0,
                     attempts: int = 100_000) -> BraidWord:
    for _ in range(attempts):
        w = random_word(rng, n, rng.randint(min_length, max_length))
        if is_pure(w):
            return w
    raise RuntimeError(f"no pure word found for n={n}, length <= {max_length}")


def random_singular_word(rng: random.Random, n: int, length: int, doubles: int,
                         pure: bool = False, attempts: int = 100_000) -> SingularBraidWord:
    """A singular word with exactly ``doubles`` double points among ``length`` letters."""
    for _ in range(attempts):
        marks = [DOUBLE] * doubles + [rng.choice((OVER, UNDER)) for _ in range(length - doubles)]
        rng.shuffle(marks)
        s = SingularBraidWord(n, tuple((rng.randint(1, n - 1), mark) for mark in marks))
        if not pure or is_pure(s.resolution()):
            return s
    raise RuntimeError("no suitable singular word found")


def random_rewrite(rng: random.Random, w: BraidWord) -> BraidWord:
    """Apply one move that preserves the braid: a braid relation, a far
    commutation, or insertion of a cancelling pair / relator."""
    n = w.strands
    letters = list(w.letters)
    moves = ["cancel"]
    if n >= 3:
        moves += ["relator", "braid"]
    if n >= 4:
        moves.append("commute")
    move = rng.choice(moves)
    pos = rng.randint(0, len(letters))
    if move == "cancel":
        k, e = rng.randint(1, n - 1), rng.choice((1, -1))
        letters[pos:pos] = [(k, e), (k, -e)]
    elif move == "relator":
        k = rng.randint(1, n - 2)
        rel = [(k, 1), (k + 1, 1), (k, 1), (k + 1, -1), (k, -1), (k + 1, -1)]
        if rng.random() < 0.5:
            rel = [(g, -e) for g, e in reversed(rel)]
        letters[pos:pos] = rel
    elif move == "braid":
        spots = [p for p in range(len(letters) - 2)
                 if letters[p][1] == letters[p + 1][1] == letters[p + 2][1]
                 and letters[p][0] == letters[p + 2][0]
                 and abs(letters[p][0] - letters[p + 1][0]) == 1]
        if spots:
            p = rng.choice(spots)
            (a, e), (b, _) = letters[p], letters[p + 1]
            letters[p:p + 3] = [(b, e), (a, e), (b, e)]
        else:
            k = rng.randint(1, n - 2)
            e = rng.choice((1, -1))
            # s_k s_{k+1} s_k (s_{k+1} s_k s_{k+1})^-1
            letters[pos:pos] = [(k, e), (k + 1, e), (k, e), (k + 1, -e), (k, -e), (k + 1, -e)]
    else:
        spots = [p for p in range(len(letters) - 1)
                 if abs(letters[p][0] - letters[p + 1][0]) >= 2]
        if spots:
            p = rng.choice(spots)
            letters[p], letters[p + 1] = letters[p + 1], letters[p]
        else:
            a = rng.randint(1, n - 3)
            b = rng.randint(a + 2, n - 1)
            letters[pos:pos] = [(a, 1), (b, 1), (a, -1), (b, -1)]
    return BraidWord(n, tuple(letters))


def random_rewrites(rng: random.Random, w: BraidWord, steps: int) -> BraidWord:
    for _ in range(steps):
        w = random_rewrite(rng, w)
    return w

