"""
Échantillons finis d'ensembles syndétiques et paires géométriques {a, a·x²}.

Pour chaque paire {a, a+k} ⊆ A (a(a+k) non carré), on prend le témoin
(x, y) de a·x² + k = (a+k)·y² et b = a·x² :
  - b ∈ A          → {a, a·x²} ⊆ A          (branche directe)
  - sinon b+k ∈ A  → {a+k, (a+k)·y²} ⊆ A    (branche décalée)
L'hypothèse « {a, a+k} ∩ A ≠ ∅ pour tout a » garantit l'une des deux ;
sur un horizon fini on ne peut conclure que si b+k ≤ horizon.
"""

import logging
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from functools import cached_property, partial
from itertools import islice
from typing import Optional

from core_arith import ArithmeticDomainError
from shift_square import ShiftInstance, witness_family

logger = logging.getLogger(__name__)


class SampleFormatError(ArithmeticDomainError):
    """Fichier d'ensemble ou échantillon invalide."""


@dataclass(frozen=True)
class SyndeticSample:
    elements: tuple
    gap_bound: int
    horizon: int

    @cached_property
    def members(self) -> frozenset:
        return frozenset(self.elements)

    def __contains__(self, n: int) -> bool:
        return n in self.members


@dataclass(frozen=True)
class Violation:
    kind: str
    position: int
    detail: str


@dataclass(frozen=True)
class GapStats:
    count: int
    max_gap: int
    mean_gap: Fraction
    gaps: tuple = field(repr=False)


@dataclass(frozen=True)
class SampleReport:
    valid: bool
    violations: tuple
    stats: GapStats


class Branch(str, Enum):
    DIRECT = 'Direct'
    SHIFTED = 'Shifted'


class Status(str, Enum):
    FOUND = 'Found'
    OUT_OF_HORIZON = 'OutOfHorizon'
    SQUARE_SKIPPED = 'SquareSkipped'
    HYPOTHESIS_VIOLATION = 'HypothesisViolation'


@dataclass(frozen=True)
class GeometricPairWitness:
    base: int
    ratio_root: int
    product: int
    branch: Branch
    source_pair: tuple

    def as_dict(self) -> dict:
        return {'base': self.base, 'ratio_root': self.ratio_root, 'product': self.product,
                'branch': self.branch.value, 'source_pair': list(self.source_pair)}


@dataclass(frozen=True)
class PairOutcome:
    source: int
    status: Status
    b: Optional[int] = None
    witness: Optional[GeometricPairWitness] = None
    member_index: Optional[int] = None

    def as_dict(self) -> dict:
        return {
            'a': self.source,
            'status': self.status.value,
            'b': self.b,
            'member_index': self.member_index,
            'witness': self.witness.as_dict() if self.witness else None,
        }


# ── Écarts ────────────────────────────────────────────────────────────────────

def gap_stats(elements) -> GapStats:
    """Écarts entre éléments consécutifs (le premier compté depuis 0)."""
    nums = list(elements)
    if not nums:
        return GapStats(count=0, max_gap=0, mean_gap=Fraction(0), gaps=())
    gaps = [nums[0]] + [nums[i + 1] - nums[i] for i in range(len(nums) - 1)]
    return GapStats(count=len(nums), max_gap=max(gaps),
                    mean_gap=Fraction(sum(gaps), len(gaps)), gaps=tuple(gaps))


def verify_sample(s: SyndeticSample) -> SampleReport:
    violations = []
    elems = s.elements
    if s.gap_bound < 1 or s.horizon < 1:
        violations.append(Violation('parameters', 0,
                                    f"gap_bound={s.gap_bound}, horizon={s.horizon} doivent être ≥ 1"))
    if not elems:
        violations.append(Violation('empty', 0, "échantillon vide"))
        return SampleReport(valid=False, violations=tuple(violations), stats=gap_stats(elems))

    if elems[0] < 1:
        violations.append(Violation('non_positive', 0, f"élément {elems[0]} ≤ 0"))
    if elems[0] > s.gap_bound:
        violations.append(Violation('first_gap', 0,
                                    f"premier élément {elems[0]} > gap_bound {s.gap_bound}"))
    for i in range(len(elems) - 1):
        lo, hi = elems[i], elems[i + 1]
        if hi <= lo:
            violations.append(Violation('order', i + 1, f"{lo} → {hi} non strictement croissant"))
        elif lo < s.horizon and hi - lo > s.gap_bound:
            violations.append(Violation('gap', i + 1,
                                        f"écart {lo} → {hi} = {hi - lo} > {s.gap_bound}"))
    if elems[-1] < s.horizon:
        violations.append(Violation('horizon', len(elems) - 1,
                                    f"max {elems[-1]} < horizon {s.horizon}"))
    return SampleReport(valid=not violations, violations=tuple(violations), stats=gap_stats(elems))


# ── Hypothèses du théorème ────────────────────────────────────────────────────

def _check_shift(s: SyndeticSample, k: int):
    if k < 1 or k >= s.horizon:
        raise ValueError(f"k doit vérifier 1 ≤ k < horizon={s.horizon} (reçu {k})")


def find_adjacent_pairs(s: SyndeticSample, k: int) -> list:
    _check_shift(s, k)
    return [a for a in s.elements if a + k <= s.horizon and a + k in s]


def hitting_failures(s: SyndeticSample, k: int) -> list:
    _check_shift(s, k)
    return [a for a in range(1, s.horizon - k + 1) if a not in s and a + k not in s]


def verify_hitting(s: SyndeticSample, k: int) -> bool:
    _check_shift(s, k)
    return all(a in s or a + k in s for a in range(1, s.horizon - k + 1))


# ── Paires géométriques ───────────────────────────────────────────────────────

def _classify(s: SyndeticSample, k: int, a: int, x: int, y: int, index: int) -> PairOutcome:
    b = a * x * x
    if b <= s.horizon and b in s:
        w = GeometricPairWitness(base=a, ratio_root=x, product=b,
                                 branch=Branch.DIRECT, source_pair=(a, a + k))
        return PairOutcome(a, Status.FOUND, b=b, witness=w, member_index=index)
    if b + k <= s.horizon and b + k in s:
        w = GeometricPairWitness(base=a + k, ratio_root=y, product=(a + k) * y * y,
                                 branch=Branch.SHIFTED, source_pair=(a, a + k))
        return PairOutcome(a, Status.FOUND, b=b, witness=w, member_index=index)
    if b + k > s.horizon:
        return PairOutcome(a, Status.OUT_OF_HORIZON, b=b, member_index=index)
    return PairOutcome(a, Status.HYPOTHESIS_VIOLATION, b=b, member_index=index)


def _pair_outcome(s: SyndeticSample, k: int, tries: int, a: int) -> PairOutcome:
    inst = ShiftInstance(a, k)
    if inst.is_square:
        return PairOutcome(a, Status.SQUARE_SKIPPED)
    first = None
    for index, w in enumerate(islice(witness_family(inst), tries)):
        outcome = _classify(s, k, a, w.x, w.y, index)
        if outcome.status is Status.FOUND:
            return outcome
        if first is None:
            first = outcome
        if outcome.b > s.horizon:
            # les témoins suivants sont plus grands
            break
    return first


def find_geometric_pairs(s: SyndeticSample, k: int, tries: int = 1, workers: int = 1) -> list:
    """Issue de chaque paire {a, a+k} de l'échantillon, triée par a."""
    if tries < 1:
        raise ValueError(f"tries doit être ≥ 1 (reçu {tries})")
    pairs = find_adjacent_pairs(s, k)
    job = partial(_pair_outcome, s, k, tries)
    if workers > 1 and len(pairs) > 1:
        chunk = max(1, len(pairs) // (workers * 4))
        with ProcessPoolExecutor(max_workers=workers) as pool:
            outcomes = list(pool.map(job, pairs, chunksize=chunk))
    else:
        outcomes = [job(a) for a in pairs]
    logger.debug(f"k={k} : {len(pairs)} paire(s) adjacente(s) analysée(s)")
    return sorted(outcomes, key=lambda o: o.source)


def summarize_outcomes(outcomes) -> dict:
    counts = {status.value: 0 for status in Status}
    for o in outcomes:
        counts[o.status.value] += 1
    counts['Direct'] = sum(1 for o in outcomes if o.witness and o.witness.branch is Branch.DIRECT)
    counts['Shifted'] = sum(1 for o in outcomes if o.witness and o.witness.branch is Branch.SHIFTED)
    return counts


# ── Générateurs d'échantillons ────────────────────────────────────────────────

def sample_from_elements(elements, gap_bound: int, horizon: Optional[int] = None) -> SyndeticSample:
    elems = tuple(elements)
    if horizon is None:
        horizon = elems[-1] if elems else 1
    return SyndeticSample(elements=elems, gap_bound=gap_bound, horizon=horizon)


def generate_all(horizon: int) -> SyndeticSample:
    return SyndeticSample(tuple(range(1, horizon + 1)), gap_bound=1, horizon=horizon)


def generate_odd(horizon: int) -> SyndeticSample:
    return SyndeticSample(tuple(range(1, horizon + 2, 2)), gap_bound=2, horizon=horizon)


def generate_avoid_residue(residue: int, modulus: int, horizon: int) -> SyndeticSample:
    """Entiers n ≢ residue (mod modulus)."""
    if modulus < 2:
        raise ValueError(f"modulus doit être ≥ 2 (reçu {modulus})")
    residue %= modulus
    elems = [n for n in range(1, horizon + 3) if n % modulus != residue]
    # on coupe après le premier élément ≥ horizon
    cut = next(i for i, n in enumerate(elems) if n >= horizon)
    return SyndeticSample(tuple(elems[:cut + 1]), gap_bound=2, horizon=horizon)


def generate_random(gap_bound: int, horizon: int, seed: int = 0) -> SyndeticSample:
    """Ensemble aléatoire reproductible à écarts uniformes dans [1, gap_bound]."""
    if gap_bound < 1:
        raise ValueError(f"gap_bound doit être ≥ 1 (reçu {gap_bound})")
    rng = random.Random(seed)
    elems = [rng.randint(1, gap_bound)]
    while elems[-1] < horizon:
        elems.append(elems[-1] + rng.randint(1, gap_bound))
    return SyndeticSample(tuple(elems), gap_bound=gap_bound, horizon=horizon)
