"""
The acceptance checks, runnable without pytest (``purebraid selftest``).

Each check returns a :class:`CheckResult`; all randomness is seeded so the
output is reproducible.
"""

from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass
from typing import Callable

from . import oracles
from .braid import (
    BraidWord,
    braids_equal,
    comb,
    combed_equal,
    combed_to_artin,
    compose,
    pure_generator_artin,
)
from .chords import (
    DiagramCombination,
    enumerate_non_decreasing,
    iter_diagrams,
    multiply,
    normal_form,
    relation_4t,
    relation_commute,
)
from .quantum import (
    KAPPA,
    all_permutations,
    j_invariant,
    j_singular,
    local_operator,
    measure_kappa,
    q_minus_q_inverse,
    r_matrix,
    separate,
    trace_sigma,
    weight_consistency_values,
)
from .sampling import random_pure_word, random_rewrites, random_singular_word
from .series import SeriesMatrix
from .weights import (
    evaluate_combination,
    iter_paths,
    path_of_diagram,
    path_to_pair,
    separation_matrix,
    flat_delta_check,
    w_k_sigma,
    w_k_sigma_via_cabling,
    w_path,
    w_sigma,
)


@dataclass
class CheckResult:
    number: int
    name: str
    passed: bool
    detail: str = ""
    seconds: float = 0.0

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"[{status}] {self.number:2d} {self.name}: {self.detail} ({self.seconds:.1f}s)"


def check_flat_delta() -> tuple[bool, str]:
    cases = failures = 0
    for nu in range(2, 5):
        for m in range(0, 4):
            for i_list in itertools.product(range(1, nu), repeat=m):
                for j_list in itertools.product(range(1, nu), repeat=m):
                    cases += 1
                    expected = 1 if i_list == j_list else 0
                    if flat_delta_check(nu, i_list, j_list, 4) != expected:
                        failures += 1
    return failures == 0, f"{cases} index pairs, {failures} mismatches"


def check_separation_matrices() -> tuple[bool, str]:
    sizes = []
    ok = True
    for n, m in [(3, 0), (3, 1), (3, 2), (3, 3), (4, 2)]:
        mat = separation_matrix(n, m)
        sizes.append(f"({n},{m})->{len(mat.rows)}:{'ok' if mat.is_unitriangular() else 'BAD'}")
        ok &= mat.is_unitriangular()
    return ok, " ".join(sizes)


def check_basis_counts() -> tuple[bool, str]:
    ok = all(len(enumerate_non_decreasing(3, m)) == 2 ** (m + 1) - 1 for m in range(6))
    mismatches = []
    for n in range(1, 6):
        predicted = oracles.hilbert_counts(n, 4)
        for m in range(5):
            got = len(enumerate_non_decreasing(n, m))
            if got != predicted[m]:
                mismatches.append((n, m, got, predicted[m]))
    return ok and not mismatches, f"n=3 powers ok={ok}; hilbert mismatches={mismatches}"


def _relations(n: int) -> list[DiagramCombination]:
    rels = []
    for i, j, k in itertools.permutations(range(1, n + 1), 3):
        rels.append(relation_4t(i, j, k, n))
    for i, j, k, l in itertools.permutations(range(1, n + 1), 4):
        rels.append(relation_commute(i, j, k, l, n))
    return rels


def check_ideal_vanishing() -> tuple[bool, str]:
    rng = random.Random(4)
    evaluated = bad = 0
    for n in (3, 4):
        families = {m: [path_of_diagram(d) for d in enumerate_non_decreasing(n, m)] for m in (2, 3)}
        for rel in _relations(n):
            t = DiagramCombination.t(n, *rng.sample(range(1, n + 1), 2))
            elements = [rel, multiply(t, rel) if rng.random() < 0.5 else multiply(rel, t)]
            for x in elements:
                (deg,) = x.degrees()
                if not normal_form(x).is_zero():
                    bad += 1
                for p in families[deg]:
                    evaluated += 1
                    if not evaluate_combination(x, p).is_zero():
                        bad += 1
    return bad == 0, f"{evaluated} evaluations, {bad} nonzero"


def check_routes() -> tuple[bool, str]:
    compared = bad = 0
    for n in (2, 3, 4):
        diagrams = [d for m in range(4) for d in iter_diagrams(n, m)]
        for p in iter_paths(n, 5):
            spec, sigma = path_to_pair(p, n)
            for d in diagrams:
                compared += 1
                direct = w_path(d, p)
                if direct != w_k_sigma(d, spec, sigma) or direct != w_k_sigma_via_cabling(d, spec, sigma):
                    bad += 1
    cache: dict = {}
    dense = dense_bad = 0
    for N in (2, 3):
        for n in (2, 3, 4):
            perms = all_permutations(n)
            for m in range(4):
                for d in iter_diagrams(n, m):
                    for sigma in perms:
                        dense += 1
                        if w_sigma(d, sigma)(N) != oracles.dense_weight(N, n, d.chords, sigma, cache):
                            dense_bad += 1
    return bad == 0 and dense_bad == 0, (
        f"{compared} path/diagram pairs ({bad} disagree); {dense} dense traces ({dense_bad} disagree)")


def check_quantum_contract() -> tuple[bool, str]:
    M = 4
    notes = []
    ok = True
    for N in (2, 3):
        R = r_matrix(N, M)
        ident = SeriesMatrix.identity(N * N, M)
        R1, R2 = local_operator(R, 1, 3, N), local_operator(R, 2, 3, N)
        yb = (R1 @ R2 @ R1 - R2 @ R1 @ R2).is_zero()
        Rinv = R.inverse()
        hecke = (R - Rinv - ident.scale_series(q_minus_q_inverse(M))).is_zero()
        classical = all(v == f for v, f in zip(R.scaled[0].ravel(), oracles.flip(N).ravel()))
        ok &= yb and hecke and classical
        notes.append(f"N={N}: yb={yb} hecke={hecke} flip={classical}")
    rng = random.Random(6)
    invariant = 0
    for trial in range(50):
        N = 2 if trial % 2 == 0 else 3
        n = rng.choice((3, 4)) if N == 2 else 3
        w = BraidWord(n, tuple((rng.randint(1, n - 1), rng.choice((1, -1))) for _ in range(rng.randint(0, 8))))
        w2 = random_rewrites(rng, w, 3)
        if j_invariant(w, N, M) == j_invariant(w2, N, M):
            invariant += 1
    ok &= invariant == 50
    notes.append(f"invariant under rewriting {invariant}/50")
    return ok, "; ".join(notes)


def check_vassiliev_grading() -> tuple[bool, str]:
    rng = random.Random(7)
    tested = bad = 0
    for N in (2, 3):
        for s0 in range(0, 4):
            for _ in range(6):
                n = rng.choice((2, 3))
                s = random_singular_word(rng, n, rng.randint(s0, s0 + 5), s0)
                J = j_singular(s, N, 4)
                for sigma in all_permutations(n):
                    tr = trace_sigma(J, sigma, N)
                    tested += 1
                    if any(tr.coefficient(k) != 0 for k in range(s0)):
                        bad += 1
    return bad == 0, f"{tested} traces, {bad} with a nonzero coefficient below the double-point count"


def check_weight_consistency() -> tuple[bool, str]:
    kappa = measure_kappa()
    rng = random.Random(8)
    tested = bad = 0
    for N in (2, 3):
        for n in (2, 3):
            for m in range(0, 3):
                for _ in range(5):
                    # a pure resolution needs an even number of letters
                    length = rng.randint(m, m + 6)
                    s = random_singular_word(rng, n, length + length % 2, m, pure=True)
                    for sigma in all_permutations(n):
                        tested += 1
                        if not weight_consistency_values(s, sigma, N, 4, KAPPA).holds:
                            bad += 1
    ok = kappa == KAPPA and bad == 0
    return ok, f"measured kappa={kappa} frozen={KAPPA}; {tested} cases, {bad} failures"


def check_separation() -> tuple[bool, str]:
    A12 = pure_generator_artin(1, 2, 2)
    r1 = separate(A12, compose(A12, A12), 2, 2)
    a = compose(pure_generator_artin(1, 2, 3), pure_generator_artin(1, 3, 3))
    b = compose(pure_generator_artin(1, 3, 3), pure_generator_artin(1, 2, 3))
    r2 = separate(a, b, 3, 3)
    named_ok = all(r.separated and r.degree <= 2 and r.oracle_equal is False for r in (r1, r2))
    rng = random.Random(9)
    pairs = separated = flagged = wrong = 0
    while pairs < 50:
        n = rng.choice((2, 3))
        x = random_pure_word(rng, n, 8)
        y = random_pure_word(rng, n, 8)
        if braids_equal(x, y):
            continue
        pairs += 1
        rep = separate(x, y, 3, 4)
        if rep.separated:
            separated += 1
        elif rep.needs_more:
            flagged += 1
        else:
            wrong += 1
    ok = named_ok and wrong == 0 and separated + flagged == 50
    return ok, (f"named pairs ok={named_ok}; random: {separated}/50 separated, "
                f"flag rate {flagged}/50")


def check_combing() -> tuple[bool, str]:
    rng = random.Random(10)
    roundtrip = uniq = 0
    empty_ok = all(all(not layer for layer in comb(BraidWord(n)).layers) for n in range(1, 6))
    for _ in range(100):
        n = rng.choice((2, 3, 4))
        w = random_pure_word(rng, n, 12)
        c = comb(w)
        if braids_equal(combed_to_artin(c), w):
            roundtrip += 1
        w2 = random_rewrites(rng, w, 2)
        if combed_equal(c, comb(w2)):
            uniq += 1
    ok = empty_ok and roundtrip == 100 and uniq == 100
    return ok, f"round-trip {roundtrip}/100, equal words combed equal {uniq}/100, empty ok={empty_ok}"


CHECKS: list[tuple[int, str, Callable[[], tuple[bool, str]]]] = [
    (1, "flat delta identity", check_flat_delta),
    (2, "separation matrix unitriangularity", check_separation_matrices),
    (3, "basis counts", check_basis_counts),
    (4, "ideal vanishing", check_ideal_vanishing),
    (5, "route agreement and dense traces", check_routes),
    (6, "quantum contract", check_quantum_contract),
    (7, "Vassiliev grading", check_vassiliev_grading),
    (8, "weight consistency", check_weight_consistency),
    (9, "separation end-to-end", check_separation),
    (10, "combing", check_combing),
]


def run_check(number: int) -> CheckResult:
    for num, name, fn in CHECKS:
        if num == number:
            start = time.perf_counter()
            try:
                passed, detail = fn()
            except Exception as exc:  # a crash is a failed criterion, not a crashed run
                passed, detail = False, f"raised {type(exc).__name__}: {exc}"
            return CheckResult(num, name, passed, detail, time.perf_counter() - start)
    raise KeyError(number)


def run_all(numbers=None) -> list[CheckResult]:
    wanted = [num for num, _, _ in CHECKS] if numbers is None else list(numbers)
    return [run_check(num) for num in wanted]
