"""
Équation de Pell u² − d·v² = 1.

Algorithme :
  1. Développement en fraction continue de √d par la récurrence PQa
     (entiers uniquement), arrêté au premier quotient 2·a0 qui ferme la période.
  2. Solution fondamentale = réduite de fin de période ; si la période est
     impaire cette réduite a la norme −1 et on double la période.
  3. Toutes les solutions positives sont les puissances de l'unité
     fondamentale : (u₁+v₁√d)(u₂+v₂√d).
"""

import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator

from core_arith import ArithmeticDomainError, is_perfect_square, isqrt

logger = logging.getLogger(__name__)


class SquareInput(ArithmeticDomainError):
    """d est un carré parfait : pas de solution positive."""


class MismatchedD(ArithmeticDomainError):
    """Composition de deux solutions de d différents."""


@dataclass(frozen=True)
class PellSolution:
    d: int
    u: int
    v: int

    def __post_init__(self):
        if self.u * self.u - self.d * self.v * self.v != 1:
            raise ValueError(f"({self.u}, {self.v}) ne vérifie pas u² − {self.d}·v² = 1")
        if self.u < 2 or self.v < 1:
            raise ValueError(f"solution non positive ({self.u}, {self.v})")


@dataclass(frozen=True)
class ContinuedFraction:
    d: int
    a0: int
    period: tuple

    @property
    def period_length(self) -> int:
        return len(self.period)

    def partial_quotients(self, count: int) -> list:
        """Les `count` premiers quotients partiels a0, a1, a2, …"""
        terms = [self.a0]
        i = 0
        while len(terms) < count:
            terms.append(self.period[i % len(self.period)])
            i += 1
        return terms[:count]

    def convergents(self, count: int) -> list:
        """Réduites (h_i, k_i) de √d."""
        h2, h1 = 0, 1
        k2, k1 = 1, 0
        result = []
        for q in self.partial_quotients(count):
            h2, h1 = h1, q * h1 + h2
            k2, k1 = k1, q * k1 + k2
            result.append((h1, k1))
        return result


def _require_nonsquare(d: int):
    if d < 1:
        raise ValueError(f"d doit être ≥ 1 (reçu {d})")
    r = is_perfect_square(d)
    if r is not None:
        raise SquareInput(f"d = {d} est un carré parfait ({r}²)", {'d': d, 'root': r})


def continued_fraction_sqrt(d: int) -> ContinuedFraction:
    _require_nonsquare(d)
    a0 = isqrt(d)
    p, q, a = 0, 1, a0
    period = []
    while a != 2 * a0:
        p = a * q - p
        q = (d - p * p) // q
        a = (a0 + p) // q
        period.append(a)
    logger.debug(f"√{d} : a0={a0}, période de longueur {len(period)}")
    return ContinuedFraction(d=d, a0=a0, period=tuple(period))


@lru_cache(maxsize=65536)
def fundamental_solution(d: int) -> PellSolution:
    cf = continued_fraction_sqrt(d)
    length = cf.period_length
    if length % 2:
        length *= 2
    u, v = cf.convergents(length)[-1]
    return PellSolution(d=d, u=u, v=v)


def compose(s: PellSolution, t: PellSolution) -> PellSolution:
    if s.d != t.d:
        raise MismatchedD(f"d différents : {s.d} ≠ {t.d}", {'d1': s.d, 'd2': t.d})
    d = s.d
    return PellSolution(d=d, u=s.u * t.u + d * s.v * t.v, v=s.u * t.v + t.u * s.v)


def pell_solutions(d: int) -> Iterator[PellSolution]:
    """Flux infini des solutions positives, croissantes en u et en v.

    d est validé tout de suite, pas au premier next().
    """
    fundamental = fundamental_solution(d)

    def _stream():
        current = fundamental
        while True:
            yield current
            current = compose(current, fundamental)

    return _stream()
