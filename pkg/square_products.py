"""
Les a > 0 tels que a(a+k) soit un carré: ensemble fini pour tout k.

Si a(a+k) = r² et a = b²c (c sans facteur carré), alors r = b·c·t,
c divise k, et avec ell = k/c : t² − b² = ell. Chaque factorisation
ell = d₁·d₂ (d₁ < d₂, même parité) donne t = (d₁+d₂)/2, b = (d₂−d₁)/2.
"""

import logging
from dataclasses import dataclass
from typing import Optional

from core_arith import divisors, is_perfect_square, squarefree_decompose, squarefree_divisors

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SquareProductCertificate:
    a: int
    b: int
    c: int
    t: int
    ell: int
    k: int

    @property
    def root(self) -> int:
        """r = b·c·t, avec a(a+k) = r²."""
        return self.b * self.c * self.t

    def verify(self) -> bool:
        b, c = squarefree_decompose(self.a)
        return (
            (b, c) == (self.b, self.c)
            and self.c * self.ell == self.k
            and self.t * self.t - self.b * self.b == self.ell
            and self.a * (self.a + self.k) == self.root ** 2
        )

    def as_dict(self) -> dict:
        return {'a': self.a, 'b': self.b, 'c': self.c, 't': self.t,
                'ell': self.ell, 'k': self.k, 'root': self.root}


def enumerate_square_products(k: int) -> list:
    if k < 1:
        raise ValueError(f"k doit être ≥ 1 (reçu {k})")
    found = {}
    for c in squarefree_divisors(k):
        ell = k // c
        for d1 in divisors(ell):
            d2 = ell // d1
            if d1 >= d2 or (d1 - d2) % 2:
                continue
            t, b = (d1 + d2) // 2, (d2 - d1) // 2
            cert = SquareProductCertificate(a=b * b * c, b=b, c=c, t=t, ell=ell, k=k)
            if cert.a in found:
                # (b, c) est unique pour a ; on garde le plus petit c
                logger.warning(f"Doublon a={cert.a} pour k={k} (c={c}) ignoré")
                continue
            found[cert.a] = cert
    logger.debug(f"k={k} : {len(found)} valeur(s) de a avec a(a+k) carré")
    return [found[a] for a in sorted(found)]


def is_square_product(a: int, k: int) -> Optional[int]:
    if a < 1 or k < 1:
        raise ValueError(f"a et k doivent être ≥ 1 (reçu a={a}, k={k})")
    return is_perfect_square(a * (a + k))


def square_product_bound(k: int) -> int:
    """Majorant de tout a avec a(a+k) carré : a = b²c ≤ (k−1)²/4."""
    if k < 1:
        raise ValueError(f"k doit être ≥ 1 (reçu {k})")
    return (k - 1) ** 2 // 4


def scan_square_products(k: int, limit: int) -> list:
    """Oracle brute force : { a ≤ limit : a(a+k) carré }."""
    return [a for a in range(1, limit + 1) if is_square_product(a, k) is not None]
