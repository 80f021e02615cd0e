"""Worst-case search over the profile simplex.

Searching profile space instead of position space drops the rotation
degree of freedom. Reversal symmetry is quotiented too: the ratio of an
instance equals the ratio of its mirror image, whose profile is (up to a
cyclic relabeling the evaluator also cannot see) the reversed vector, so
only the lexicographically smaller of a profile and its reversal is
evaluated.
"""

from __future__ import annotations

import math
import os
from collections import deque
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import BudgetExceeded, InvalidParams
from .geometry import ArcProfile, _half, _profile_values, instance_from_profile
from .ratios import clustering_max, gamma, gamma_hypothesis

LATTICE_CAP = 100_000_000
CHUNK_ROWS = 200_000

GRID_AGENT_COUNTS = (3, 5, 7, 9)
MIXTURE_RATIO_BOUND = 1.75


class SearchMethod(Enum):
    GRID = "grid"
    RANDOM = "random"
    REFINE = "refine"
    HYBRID = "hybrid"


@dataclass(frozen=True)
class SearchResult:
    best_gamma: float
    best_profile: ArcProfile
    evaluations: int
    method: SearchMethod


@dataclass(frozen=True)
class CurvePoint:
    n: int
    gamma_numeric: float
    gamma_hypothesis: float | None
    rd_ratio: float
    mix_bound: float


def worker_count() -> int:
    """Worker cap from the CML_THREADS environment variable, default 1."""
    raw = os.environ.get("CML_THREADS", "")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def profile_stats(rows: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Vectorized pipeline over rows of facing probabilities: returns
    (ratios, expected costs, per-agent cost matrix).

    Rows must be nonnegative; fp drift in the row sums is tolerated, not
    corrected. Instances whose optimum cost is zero get ratio 1.
    """
    rows = np.asarray(rows, dtype=np.float64)
    m, n = rows.shape
    half = (n - 1) // 2
    arcs = rows[:, [(j + half + 1) % n for j in range(n)]]
    x = np.empty((m, n))
    x[:, 0] = 0.0
    np.cumsum(arcs[:, :-1], axis=1, out=x[:, 1:])
    costs = np.zeros((m, n))
    for j in range(n - 1):
        for k in range(j + 1, n):
            d = x[:, k] - x[:, j]
            np.minimum(d, 1.0 - d, out=d)
            np.maximum(d, 0.0, out=d)
            costs[:, j] += d
            costs[:, k] += d
    sc = np.einsum("ij,ij->i", costs, rows)
    opt = costs.min(axis=1)
    out = np.ones(m)
    live = opt > 0.0
    out[live] = sc[live] / opt[live]
    return out, sc, costs


def evaluate_profile_rows(rows: np.ndarray) -> np.ndarray:
    """Ratio for each row of facing probabilities, vectorized."""
    return profile_stats(rows)[0]


def _emit(profile_row, evaluations: int, method: SearchMethod) -> SearchResult:
    prof = ArcProfile(tuple(float(v) for v in profile_row))
    # recomputed through the scalar pipeline so the reported ratio is
    # reproducible from the reported profile alone
    best = gamma(instance_from_profile(prof)).gamma
    return SearchResult(best, prof, evaluations, method)


class _TopReducer:
    """Streams profile chunks through the batch evaluator, keeping the
    top_k rows. Chunks merge in submission order, so serial and threaded
    runs reduce identically."""

    def __init__(self, top_k: int, workers: int = 1):
        self.top_k = top_k
        self.evaluations = 0
        self._top: list[tuple[float, tuple[float, ...]]] = []
        self._pool = ThreadPoolExecutor(workers) if workers > 1 else None
        self._pending: deque = deque()

    def add(self, rows: np.ndarray) -> None:
        self.evaluations += len(rows)
        if self._pool is None:
            self._merge(evaluate_profile_rows(rows), rows)
            return
        self._pending.append((self._pool.submit(evaluate_profile_rows, rows), rows))
        while len(self._pending) > 4:
            fut, pending_rows = self._pending.popleft()
            self._merge(fut.result(), pending_rows)

    def _merge(self, gammas: np.ndarray, rows: np.ndarray) -> None:
        if len(gammas) > self.top_k:
            idx = np.argpartition(-gammas, self.top_k - 1)[: self.top_k]
        else:
            idx = np.arange(len(gammas))
        for i in idx:
            self._top.append((float(gammas[i]), tuple(float(v) for v in rows[i])))
        self._top.sort(key=lambda entry: (-entry[0], entry[1]))
        del self._top[self.top_k :]

    def finish(self) -> list[tuple[float, tuple[float, ...]]]:
        while self._pending:
            fut, rows = self._pending.popleft()
            self._merge(fut.result(), rows)
        if self._pool is not None:
            self._pool.shutdown()
        return self._top


def _pair_table(m: int) -> tuple[np.ndarray, np.ndarray]:
    # rows (a, b) grouped by a+b ascending: pairs with a+b <= c occupy the
    # prefix of length (c+1)(c+2)/2
    a = np.concatenate([np.arange(s + 1, dtype=np.int64) for s in range(m + 1)])
    s = np.repeat(np.arange(m + 1, dtype=np.int64), np.arange(1, m + 2))
    return a, s - a


def _prefixes(budget: int, depth: int):
    if depth == 0:
        yield (), budget
        return
    for v in range(budget + 1):
        yield from (((v,) + tail, left) for tail, left in _prefixes(budget - v, depth - 1))


def _reversal_keep(iblock: np.ndarray) -> np.ndarray:
    # lexicographic canonical choice between a row and its reversal
    n = iblock.shape[1]
    keep = np.zeros(len(iblock), dtype=bool)
    undecided = np.ones(len(iblock), dtype=bool)
    for j in range(n // 2):
        a = iblock[:, j]
        b = iblock[:, n - 1 - j]
        lt = undecided & (a < b)
        keep |= lt
        undecided &= ~(lt | (undecided & (a > b)))
    return keep | undecided


def _lattice_search(n: int, m: int, top_k: int):
    pair_a, pair_b = _pair_table(m)
    scale = 1.0 / m
    reducer = _TopReducer(top_k, worker_count())
    pend: list[np.ndarray] = []
    pend_rows = 0
    for prefix, c in _prefixes(m, n - 3):
        ln = (c + 1) * (c + 2) // 2
        iblock = np.empty((ln, n), dtype=np.int64)
        for j, v in enumerate(prefix):
            iblock[:, j] = v
        a = pair_a[:ln]
        b = pair_b[:ln]
        iblock[:, n - 3] = a
        iblock[:, n - 2] = b
        iblock[:, n - 1] = c - a - b
        rows = iblock[_reversal_keep(iblock)] * scale
        if not len(rows):
            continue
        pend.append(rows)
        pend_rows += len(rows)
        if pend_rows >= CHUNK_ROWS:
            reducer.add(np.concatenate(pend))
            pend, pend_rows = [], 0
    if pend:
        reducer.add(np.concatenate(pend))
    top = reducer.finish()
    return _emit(top[0][1], reducer.evaluations, SearchMethod.GRID), top


def grid_search(n: int, resolution: float) -> SearchResult:
    """Exhaustive ratio maximization over the simplex lattice with spacing
    close to `resolution` (the lattice uses 1/round(1/resolution) so the
    grid sums to one exactly)."""
    if n not in GRID_AGENT_COUNTS:
        raise InvalidParams(f"grid search supports {GRID_AGENT_COUNTS} agents, got {n}")
    if not (isinstance(resolution, float) and 0.0 < resolution <= 1.0):
        raise InvalidParams(f"resolution must lie in (0, 1], got {resolution!r}")
    m = round(1.0 / resolution)
    size = math.comb(m + n - 1, n - 1)
    if size > LATTICE_CAP:
        raise BudgetExceeded(
            f"lattice holds {size} profiles, over the {LATTICE_CAP} cap"
        )
    result, _ = _lattice_search(n, m, top_k=1)
    return result


def _random_search(n: int, samples: int, seed: int, top_k: int):
    if not (isinstance(n, int) and n >= 3 and n % 2 == 1):
        raise InvalidParams(f"need an odd agent count of at least 3, got {n}")
    if not (isinstance(samples, int) and samples >= 1):
        raise InvalidParams(f"need at least one sample, got {samples}")
    rng = np.random.default_rng(seed)
    reducer = _TopReducer(top_k, worker_count())
    left = samples
    while left > 0:
        take = min(CHUNK_ROWS, left)
        reducer.add(rng.dirichlet(np.ones(n), size=take))
        left -= take
    top = reducer.finish()
    return _emit(top[0][1], reducer.evaluations, SearchMethod.RANDOM), top


def random_search(n: int, samples: int, seed: int) -> SearchResult:
    """Uniform Dirichlet sampling of the profile simplex; same seed, same
    result, regardless of worker count."""
    result, _ = _random_search(n, samples, seed, top_k=1)
    return result


REFINE_MIN_STEP = 1e-13
REFINE_GAIN = 1e-15


def refine(start, step0: float = 0.01, shrink: float = 0.5, iters: int = 200) -> SearchResult:
    """Coordinate-pair ascent from a starting profile.

    Each round tries moving `step` mass between every ordered pair of
    coordinates (clamped at zero) and takes the best strict improvement;
    a round with no improvement halves the step via `shrink`. The ratio
    sequence is non-decreasing by construction.
    """
    prof = _profile_values(start)
    if not (isinstance(step0, float) and step0 > 0.0):
        raise InvalidParams(f"step0 must be positive, got {step0!r}")
    if not (isinstance(shrink, float) and 0.0 < shrink < 1.0):
        raise InvalidParams(f"shrink must lie in (0, 1), got {shrink!r}")
    if not (isinstance(iters, int) and iters >= 0):
        raise InvalidParams(f"iters must be a nonnegative integer, got {iters!r}")
    p = np.array(prof, dtype=np.float64)
    n = len(p)
    pairs = [(j, k) for j in range(n) for k in range(n) if j != k]
    cur = float(evaluate_profile_rows(p[None, :])[0])
    evals = 1
    step = step0
    for _ in range(iters):
        if step < REFINE_MIN_STEP:
            break
        cands = []
        for j, k in pairs:
            d = min(step, p[j])
            if d <= 0.0:
                continue
            q = p.copy()
            q[j] -= d
            q[k] += d
            cands.append(q)
        gains = evaluate_profile_rows(np.stack(cands))
        evals += len(cands)
        i = int(np.argmax(gains))
        if gains[i] > cur + REFINE_GAIN:
            p = cands[i]
            cur = float(gains[i])
        else:
            step *= shrink
    p /= math.fsum(p.tolist())
    return _emit(p, evals, SearchMethod.REFINE)


def hybrid_search(
    n: int,
    resolution: float,
    samples: int,
    seed: int,
    top_k: int = 100,
    refine_iters: int = 200,
) -> SearchResult:
    """Grid plus random sampling, then local ascent from the pooled top_k
    profiles; the emitted best is recomputed from its profile."""
    if not (isinstance(top_k, int) and top_k >= 1):
        raise InvalidParams(f"top_k must be a positive integer, got {top_k!r}")
    if n not in GRID_AGENT_COUNTS:
        raise InvalidParams(f"grid search supports {GRID_AGENT_COUNTS} agents, got {n}")
    if not (isinstance(resolution, float) and 0.0 < resolution <= 1.0):
        raise InvalidParams(f"resolution must lie in (0, 1], got {resolution!r}")
    m = round(1.0 / resolution)
    size = math.comb(m + n - 1, n - 1)
    if size > LATTICE_CAP:
        raise BudgetExceeded(
            f"lattice holds {size} profiles, over the {LATTICE_CAP} cap"
        )
    grid_result, grid_top = _lattice_search(n, m, top_k)
    rand_result, rand_top = _random_search(n, samples, seed, top_k)
    pool = sorted(grid_top + rand_top, key=lambda entry: (-entry[0], entry[1]))[:top_k]
    evals = grid_result.evaluations + rand_result.evaluations
    best: tuple[float, tuple[float, ...]] | None = None
    for _, row in pool:
        res = refine(row, step0=1.0 / m, iters=refine_iters)
        evals += res.evaluations
        key = (res.best_gamma, res.best_profile.p)
        if best is None or res.best_gamma > best[0]:
            best = key
    assert best is not None
    return _emit(best[1], evals, SearchMethod.HYBRID)


def hypothesis_curve_dataset(
    n_max: int,
    samples_per_n: int = 10_000,
    seed: int = 0,
    refine_top: int = 2,
) -> tuple[CurvePoint, ...]:
    """Numeric-versus-conjectured ratio table for odd agent counts up to
    n_max.

    gamma_numeric for each n is the max of the clustering-family peak, a
    seeded random search, and local ascent from the best random rows; it
    is a lower bound on the true worst case, not a certificate. The
    closed-form column is absent at n=3, where the curve is undefined.
    """
    if not (isinstance(n_max, int) and n_max >= 5 and n_max % 2 == 1):
        raise InvalidParams(f"n_max must be an odd integer of at least 5, got {n_max!r}")
    if not (isinstance(samples_per_n, int) and samples_per_n >= 1):
        raise InvalidParams(f"samples_per_n must be positive, got {samples_per_n!r}")
    counts = list(range(3, n_max + 1, 2))
    if samples_per_n * len(counts) > LATTICE_CAP:
        raise BudgetExceeded(
            f"{samples_per_n} samples across {len(counts)} agent counts exceeds "
            f"the {LATTICE_CAP} evaluation cap"
        )
    points = []
    for n in counts:
        _, family_peak = clustering_max((n - 1) // 2)
        result, top = _random_search(n, samples_per_n, seed + n, top_k=refine_top)
        best = max(family_peak, result.best_gamma)
        for _, row in top:
            best = max(best, refine(row, step0=0.02, iters=80).best_gamma)
        hyp = None if n == 3 else gamma_hypothesis(n)
        points.append(CurvePoint(n, best, hyp, 2.0 - 2.0 / n, MIXTURE_RATIO_BOUND))
    return tuple(points)
