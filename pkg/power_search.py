"""
Recherche exhaustive bornée de a·x^m + k = (a+ell)·y^n.

Balayage par y : w = (a+ell)·y^n − k doit être > 0, divisible par a, et
w/a doit être une puissance m-ième exacte de racine ≤ x_bound.
Condition nécessaire : k ≡ 0 (mod gcd(a, ell)) ; sinon aucune solution.

Le domaine [1, y_bound] est découpé en bandes de y indépendantes ; la
fusion est triée, donc le résultat ne dépend pas du nombre de processus.
"""

import logging
from concurrent.futures import Executor, ProcessPoolExecutor
from contextlib import nullcontext
from dataclasses import dataclass
from functools import partial
from itertools import product

from tqdm import tqdm

from core_arith import gcd, iroot

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class PowerEquationQuery:
    a: int
    k: int
    ell: int
    m: int = 2
    n: int = 2
    x_bound: int = 1000
    y_bound: int = 1000
    min_xy: int = 1

    def __post_init__(self):
        if min(self.a, self.k, self.ell) < 1:
            raise ValueError(f"a, k, ell doivent être ≥ 1 (reçu {self.a}, {self.k}, {self.ell})")
        if self.m < 2 or self.n < 2:
            raise ValueError(f"m et n doivent être ≥ 2 (reçu m={self.m}, n={self.n})")
        if self.x_bound < 1 or self.y_bound < 1:
            raise ValueError(f"bornes ≥ 1 requises (reçu {self.x_bound}, {self.y_bound})")
        if self.min_xy not in (1, 2):
            raise ValueError(f"min_xy vaut 1 ou 2 (reçu {self.min_xy})")

    def holds(self, x: int, y: int) -> bool:
        return self.a * x ** self.m + self.k == (self.a + self.ell) * y ** self.n


@dataclass(frozen=True)
class SearchResult:
    solutions: tuple
    exhausted: bool
    obstructed: bool


@dataclass(frozen=True)
class SurveyRow:
    a: int
    k: int
    ell: int
    m: int
    n: int
    count: int
    obstructed: bool
    exhausted: bool

    def as_dict(self) -> dict:
        return {'a': self.a, 'k': self.k, 'ell': self.ell, 'm': self.m, 'n': self.n,
                'count': self.count, 'obstructed': self.obstructed, 'exhausted': self.exhausted}


def gcd_obstruction(q: PowerEquationQuery) -> bool:
    return q.k % gcd(q.a, q.ell) != 0


def scan_stripe(q: PowerEquationQuery, y_lo: int, y_hi: int) -> list:
    """Solutions avec y_lo ≤ y ≤ y_hi, triées par y."""
    found = []
    c = q.a + q.ell
    for y in range(max(y_lo, q.min_xy), y_hi + 1):
        w = c * y ** q.n - q.k
        if w <= 0:
            continue
        quotient, rest = divmod(w, q.a)
        if rest:
            continue
        x, exact = iroot(quotient, q.m)
        if exact and q.min_xy <= x <= q.x_bound:
            found.append((x, y))
    return found


def _stripes(y_bound: int, workers: int) -> list:
    size = max(1, -(-y_bound // (workers * 4)))
    return [(lo, min(lo + size - 1, y_bound)) for lo in range(1, y_bound + 1, size)]


def _run(q: PowerEquationQuery, pool, workers: int) -> list:
    if pool is None:
        return scan_stripe(q, 1, q.y_bound)
    stripes = _stripes(q.y_bound, workers)
    los, his = zip(*stripes)
    merged = []
    for part in pool.map(partial(scan_stripe, q), los, his):
        merged.extend(part)
    return merged


def search_solutions(q: PowerEquationQuery, workers: int = 1, pool: Executor = None) -> SearchResult:
    if gcd_obstruction(q):
        logger.debug(f"Obstruction gcd pour {q} : aucun balayage")
        return SearchResult(solutions=(), exhausted=False, obstructed=True)
    if pool is not None:
        solutions = _run(q, pool, workers)
    elif workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as own_pool:
            solutions = _run(q, own_pool, workers)
    else:
        solutions = _run(q, None, 1)
    solutions = sorted(solutions, key=lambda s: (s[1], s[0]))
    return SearchResult(solutions=tuple(solutions), exhausted=True, obstructed=False)


def scan_box(q: PowerEquationQuery) -> list:
    """Oracle : double boucle sur toute la boîte, triée par y."""
    if q.min_xy > max(q.x_bound, q.y_bound):
        return []
    xs = range(q.min_xy, q.x_bound + 1)
    left = [(q.a * x ** q.m + q.k, x) for x in xs]
    c = q.a + q.ell
    found = []
    for y in range(q.min_xy, q.y_bound + 1):
        right = c * y ** q.n
        for value, x in left:
            if value == right:
                found.append((x, y))
    return found


def survey(a_range, k_range, ell_range, m: int = 2, n: int = 2,
           x_bound: int = 1000, y_bound: int = 1000, min_xy: int = 1,
           workers: int = 1, distinct_shifts: bool = False, progress: bool = False) -> list:
    """Nombre de solutions par cellule (a, k, ell), ordre lexicographique."""
    a_values, k_values, ell_values = list(a_range), list(k_range), list(ell_range)
    if not a_values or not k_values or not ell_values:
        raise ValueError("les plages a, k, ell ne doivent pas être vides")
    cells = [(a, k, ell) for a, k, ell in product(sorted(a_values), sorted(k_values), sorted(ell_values))
             if not (distinct_shifts and k == ell)]
    logger.info(f"Survey : {len(cells)} cellule(s), m={m}, n={n}, bornes {x_bound}×{y_bound}")

    rows = []
    pool_ctx = ProcessPoolExecutor(max_workers=workers) if workers > 1 else nullcontext()
    with pool_ctx as pool:
        for a, k, ell in tqdm(cells, disable=not progress, desc='survey', unit='cellule'):
            q = PowerEquationQuery(a, k, ell, m, n, x_bound, y_bound, min_xy)
            result = search_solutions(q, workers=workers, pool=pool)
            rows.append(SurveyRow(a, k, ell, m, n, len(result.solutions),
                                  result.obstructed, result.exhausted))
    return rows
