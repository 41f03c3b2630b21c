"""
Familles de solutions de a·x² + k = (a+k)·y².

Pour d = a(a+k) non carré et (u, v) solution de Pell :
    x = u + a·v + k·v,   y = u + a·v.

Vue norme : avec z = (a+k)·y on a z² − d·x² = k(a+k). La solution
particulière (z₀, x₀) = (a+k, 1), multipliée par les unités de Pell,
redonne exactement la famille ci-dessus.
"""

import logging
from dataclasses import dataclass, field
from typing import Iterator, Optional

from core_arith import ArithmeticDomainError, is_perfect_square
from pell import MismatchedD, PellSolution, fundamental_solution, pell_solutions

logger = logging.getLogger(__name__)


class SquareD(ArithmeticDomainError):
    """a(a+k) est un carré : pas de famille de Pell."""


@dataclass(frozen=True)
class ShiftInstance:
    a: int
    k: int
    d: int = field(init=False)

    def __post_init__(self):
        if self.a < 1 or self.k < 1:
            raise ValueError(f"a et k doivent être ≥ 1 (reçu a={self.a}, k={self.k})")
        object.__setattr__(self, 'd', self.a * (self.a + self.k))

    @property
    def square_root(self) -> Optional[int]:
        """r si d = r², sinon None."""
        return is_perfect_square(self.d)

    @property
    def is_square(self) -> bool:
        return self.square_root is not None


@dataclass(frozen=True)
class Witness:
    x: int
    y: int


@dataclass(frozen=True)
class NormFormSolution:
    z: int
    x: int


def _require_nonsquare(inst: ShiftInstance):
    r = inst.square_root
    if r is not None:
        raise SquareD(
            f"d = a(a+k) = {inst.d} est un carré ({r}²) pour a={inst.a}, k={inst.k}",
            {'a': inst.a, 'k': inst.k, 'd': inst.d, 'root': r},
        )


def witness_from_pell(inst: ShiftInstance, p: PellSolution) -> Witness:
    if p.d != inst.d:
        raise MismatchedD(f"solution de Pell pour d={p.d}, instance d={inst.d}",
                          {'d1': p.d, 'd2': inst.d})
    _require_nonsquare(inst)
    y = p.u + inst.a * p.v
    return Witness(x=y + inst.k * p.v, y=y)


def witness_family(inst: ShiftInstance) -> Iterator[Witness]:
    """Témoins par x strictement croissant, un par solution de Pell."""
    _require_nonsquare(inst)
    solutions = pell_solutions(inst.d)
    return (witness_from_pell(inst, p) for p in solutions)


def verify_witness(inst: ShiftInstance, w: Witness) -> bool:
    return inst.a * w.x * w.x + inst.k == (inst.a + inst.k) * w.y * w.y


def patil_witness(a: int) -> Witness:
    """(4a+3, 4a+1) : premier témoin de la famille k = 1."""
    if a < 1:
        raise ValueError(f"a doit être ≥ 1 (reçu {a})")
    return Witness(x=4 * a + 3, y=4 * a + 1)


def verify_patil_identity(a: int) -> bool:
    return a * (4 * a + 3) ** 2 + 1 == (a + 1) * (4 * a + 1) ** 2


def norm_form_base(inst: ShiftInstance) -> NormFormSolution:
    return NormFormSolution(z=inst.a + inst.k, x=1)


def norm_form_solutions(inst: ShiftInstance, include_base: bool = False) -> Iterator[NormFormSolution]:
    """Orbite de (a+k, 1) sous l'unité fondamentale.

    Par défaut l'orbite commence à base·unité, de sorte que l'élément i
    correspond au témoin i de `witness_family`.
    """
    _require_nonsquare(inst)
    unit = fundamental_solution(inst.d)
    d = inst.d

    def _stream():
        current = norm_form_base(inst)
        if include_base:
            yield current
        while True:
            current = NormFormSolution(
                z=current.z * unit.u + current.x * unit.v * d,
                x=current.z * unit.v + current.x * unit.u,
            )
            yield current

    return _stream()


def witness_to_norm_form(inst: ShiftInstance, w: Witness) -> NormFormSolution:
    return NormFormSolution(z=(inst.a + inst.k) * w.y, x=w.x)


def norm_form_to_witness(inst: ShiftInstance, s: NormFormSolution) -> Witness:
    y, rest = divmod(s.z, inst.a + inst.k)
    if rest:
        raise ArithmeticDomainError(
            f"z = {s.z} n'est pas divisible par a+k = {inst.a + inst.k}",
            {'z': s.z, 'a_plus_k': inst.a + inst.k},
        )
    return Witness(x=s.x, y=y)


def norm_value(inst: ShiftInstance, s: NormFormSolution) -> int:
    """z² − d·x², égal à k(a+k) sur toute l'orbite."""
    return s.z * s.z - inst.d * s.x * s.x
