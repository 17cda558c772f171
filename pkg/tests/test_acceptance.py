"""Acceptance criteria, one test each; the terminal summary prints a PASS/FAIL line per criterion.

Checks inside a criterion are collected and asserted together so a failure
reports every sub-check that missed, not just the first.
"""

import json
import random
import subprocess
import sys
import time
from pathlib import Path

import pytest

from blockinv import (
    BlockTriangularMatrix,
    HessenbergGrid,
    Mat,
    QuaternionRing,
    apply_perturbation,
    blocks_close,
    hessenberg_qdet,
    hessenberg_qdet_expansion,
    inverse_block_explicit,
    inverse_explicit,
    inverse_iterative,
    inverse_recursive,
    normalize_diamond,
    perturbation_delta,
    perturbation_deltas,
    perturbed_inverse,
    qdet_factor_split,
    qdet_row_split,
    quat_abs,
    rational,
)
from blockinv.demo_data import example_matrix, example_perturbation
from blockinv.io import canonical_json
from blockinv.sampling import corpus, random_block_triangular, random_hessenberg, random_invertible, random_mat, random_perturbation

R = QuaternionRing()
DATA = Path(__file__).resolve().parent.parent / "data"
CORPUS_SEED = 1
CORPUS_SIZE = 200


def m(rows):
    return Mat.from_rows(R, rows)


@pytest.fixture(scope="module")
def matrices():
    return corpus(CORPUS_SEED, CORPUS_SIZE, max_n=8, max_size=3)


GOLDEN = {
    (1, 1): [["-1/2i-1/2k"]],
    (2, 2): [["-1/2i", "1/2"], ["-1/2j", "-1/2k"]],
    (3, 3): [["1/3-1/6i+1/6k"]],
    (4, 4): [["0", "0", "-k"], ["0", "-j", "-i-j"], ["-i", "0", "j"]],
    (5, 5): [["1/7-2/7i-1/7j+1/7k"]],
    (1, 2): [["1/2+i-1/2k", "i+1/2j-1/2k"]],
    (4, 5): [["-5/7+10/7i+5/7j-5/7k"], ["5/7+2/7i-11/7j-12/7k"], ["-1-2/7i+1/7j+4/7k"]],
    (1, 3): [["-17/12-19/12i-13/12j-3/4k"]],
    (1, 5): [["-1033/84+1051/84i+193/84j+701/28k"]],
}
DELTA_15 = "10/21+1/7i-11/21j+20/21k"


@pytest.mark.criterion("AC1 worked example golden blocks, exact, under 1 s")
def test_ac1_golden_blocks():
    start = time.perf_counter()
    mm = example_matrix()
    got = {jk: inverse_block_explicit(mm, *jk) for jk in GOLDEN}
    elapsed = time.perf_counter() - start
    misses = [f"M^-_{j}{k}: got {got[(j, k)]}, expected {m(rows)}" for (j, k), rows in GOLDEN.items() if got[(j, k)] != m(rows)]
    assert not misses and elapsed < 1.0, f"{misses}; {elapsed:.3f} s"


@pytest.mark.criterion("AC2 worked example perturbation delta and derived scalars")
def test_ac2_perturbation_example():
    mm, e = example_matrix(), example_perturbation()
    inv = inverse_explicit(mm)
    delta = perturbation_delta(inv, e, 1, 5)
    size = quat_abs(delta.rows[0][0])
    ratio = size / quat_abs(inv.block(1, 5).rows[0][0])
    problems = []
    if delta != m([[DELTA_15]]):
        problems.append(f"delta {delta}")
    if abs(size - 1.1953) > 5e-4:
        problems.append(f"|delta| = {size:.6f}")
    if abs(ratio - 0.0389) > 5e-4:
        problems.append(f"|delta|/|M^-_15| = {ratio:.6f}, expected 0.0389 +- 5e-4")
    assert not problems, problems


@pytest.mark.criterion("AC3 two-sided inverse on 200 random matrices, all methods, under 60 s")
def test_ac3_two_sided_inverse(matrices):
    assert len(matrices) >= 200
    assert {mm.n for mm in matrices} == set(range(1, 9))
    start = time.perf_counter()
    bad = []
    for idx, mm in enumerate(matrices):
        a = mm.grid.data
        ident = Mat.identity(R, a.nrows)
        for name, inv in (
            ("explicit", inverse_explicit(mm)),
            ("iterative", inverse_iterative(mm)),
            ("recursive", inverse_recursive(mm)),
        ):
            if not (a * inv.data == ident == inv.data * a):
                bad.append((idx, name))
    elapsed = time.perf_counter() - start
    assert not bad and elapsed < 60.0, f"{bad}; {elapsed:.1f} s"


def _hessenberg_routes_agree(h: HessenbergGrid) -> bool:
    value = hessenberg_qdet(h)
    if hessenberg_qdet(normalize_diamond(h)) != value:
        return False
    if h.n <= 8 and hessenberg_qdet_expansion(h, max_blocks=8) != value:
        return False
    if any(qdet_factor_split(h, j) != value for j in range(1, h.n + 1)):
        return False
    return h.n < 2 or qdet_row_split(h) == value


@pytest.mark.criterion("AC4 method agreement, split independence, quasideterminant routes")
def test_ac4_method_agreement(matrices):
    bad = []
    for idx, mm in enumerate(matrices):
        ref = inverse_explicit(mm)
        if inverse_iterative(mm) != ref:
            bad.append((idx, "iterative"))
        for c in range(1, max(mm.n, 2)):
            if inverse_recursive(mm, c) != ref:
                bad.append((idx, f"recursive l={c}"))
        # the grids the explicit formula evaluates
        if idx % 4 == 0:
            for j in range(1, mm.n):
                for k in range(j + 1, mm.n + 1):
                    h = HessenbergGrid(mm.grid.sub_grid(j, j + 1, k - j))
                    if not _hessenberg_routes_agree(h):
                        bad.append((idx, f"qdet routes on ({j},{k})"))
    rng = random.Random(CORPUS_SEED)
    for idx in range(100):
        h = random_hessenberg(rng, rng.randint(1, 8))
        if not _hessenberg_routes_agree(h):
            bad.append((f"hessenberg {idx}", "qdet routes"))
    assert not bad, bad


@pytest.mark.criterion("AC5 perturbation update equals direct inverse on 100 triples")
def test_ac5_perturbation_equivalence():
    rng = random.Random(CORPUS_SEED + 5)
    bad = []
    for idx in range(100):
        mm = random_block_triangular(rng, rng.randint(2, 8))
        e = random_perturbation(rng, mm)
        inv = inverse_explicit(mm)
        deltas = perturbation_deltas(inv, e)
        l = e.split
        outside = [(j, k) for j in range(1, mm.n + 1) for k in range(1, mm.n + 1) if not (j <= l < k)]
        if any(not deltas.block(j, k).is_zero() for j, k in outside):
            bad.append((idx, "nonzero delta outside rectangle"))
        if perturbed_inverse(mm, e, inv) != inverse_explicit(apply_perturbation(mm, e)):
            bad.append((idx, "update differs from direct inverse"))
    assert not bad, bad


@pytest.mark.criterion("AC6 locality on 50 random instances")
def test_ac6_locality():
    rng = random.Random(CORPUS_SEED + 6)
    bad = []
    count = 0
    while count < 50:
        mm = random_block_triangular(rng, rng.randint(2, 8))
        n = mm.n
        j, k = rng.choice([(a, b) for a in range(1, n + 1) for b in range(a, n + 1) if (a, b) != (1, n)])
        before = inverse_block_explicit(mm, j, k)
        outside = [(a, b) for a in range(1, n + 1) for b in range(a, n + 1) if not (j <= a and b <= k)]
        grid = mm.grid
        # every block outside the sub-grid is replaced at once
        for a, b in outside:
            sa, sb = mm.partition[a], mm.partition[b]
            new = random_invertible(rng, R, sa) if a == b else random_mat(rng, R, sa, sb)
            grid = grid.with_block(a, b, new)
        after = inverse_iterative(BlockTriangularMatrix(grid)).block(j, k)
        if after != before:
            bad.append((count, j, k))
        count += 1
    assert not bad, bad


@pytest.mark.criterion("AC7 float mode agrees with exact mode within 1e-8 per block")
def test_ac7_float_agreement(matrices):
    bad = []
    for idx, mm in enumerate(matrices):
        fm = BlockTriangularMatrix(mm.grid.to_float())
        exact = inverse_explicit(mm).to_float()
        for name, inv in (
            ("explicit", inverse_explicit(fm)),
            ("iterative", inverse_iterative(fm)),
            ("recursive", inverse_recursive(fm)),
        ):
            for j in range(1, mm.n + 1):
                for k in range(j, mm.n + 1):
                    if not blocks_close(inv.block(j, k), exact.block(j, k), 1e-8):
                        bad.append((idx, name, j, k))
    assert not bad, bad


def _cli(*argv):
    proc = subprocess.run([sys.executable, "-m", "blockinv.cli", *map(str, argv)], capture_output=True, text=True)
    return proc.returncode, proc.stdout


def _canonical_block(components):
    lits = []
    for x in components:
        r = rational(x)
        lits.append(int(r.numerator) if r.denominator == 1 else f"{r.numerator}/{r.denominator}")
    return canonical_json([[lits]])


@pytest.mark.criterion("AC8 CLI invert and perturb on the worked example")
def test_ac8_cli_contract():
    problems = []
    code, out = _cli("invert", "--input", DATA / "m4.json", "--method", "explicit", "--check")
    expected = _canonical_block(["-1033/84", "1051/84", "193/84", "2103/84"])
    if code != 0:
        problems.append(f"invert exit {code}")
    else:
        got = canonical_json(json.loads(out)["blocks"]["1,5"])
        if got != expected:
            problems.append(f"invert block 1,5: {got} != {expected}")
    code, out = _cli("perturb", "--input", DATA / "m4.json", "--perturbation", DATA / "e4.json", "--split", 3)
    expected = _canonical_block(["10/21", "1/7", "-11/21", "20/21"])
    if code != 0:
        problems.append(f"perturb exit {code}")
    else:
        got = canonical_json(json.loads(out)["blocks"]["1,5"])
        if got != expected:
            problems.append(f"perturb block 1,5: {got} != {expected}")
    assert not problems, problems
