"""
Arithmétique entière exacte partagée par tous les modules.

Tout passe par gmpy2 (racines exactes) et sympy (factorisation des petites
valeurs dérivées de k). Les mpz ne sortent jamais d'ici : chaque fonction
rend des int Python.
"""

from typing import Optional

import gmpy2
from sympy import divisors as _sympy_divisors
from sympy import factorint


class ArithmeticDomainError(Exception):
    """Erreur de domaine (d carré, fichier d'ensemble invalide, …).

    `details` transporte un éventuel certificat à afficher par la CLI.
    """

    def __init__(self, message: str, details: Optional[dict] = None):
        super().__init__(message)
        self.details = details or {}


def _check_natural(n: int, name: str = 'n', minimum: int = 0):
    if n < minimum:
        raise ValueError(f"{name} doit être ≥ {minimum} (reçu {n})")


def isqrt(n: int) -> int:
    """Plus grand r tel que r² ≤ n."""
    _check_natural(n)
    return int(gmpy2.isqrt(n))


def is_perfect_square(n: int) -> Optional[int]:
    """Retourne r si n = r², sinon None."""
    _check_natural(n)
    if not gmpy2.is_square(n):
        return None
    return int(gmpy2.isqrt(n))


def iroot(n: int, m: int):
    """Racine m-ième entière : (r, exact) avec r^m ≤ n < (r+1)^m."""
    _check_natural(n)
    if m < 1:
        raise ValueError(f"m doit être ≥ 1 (reçu {m})")
    root, exact = gmpy2.iroot(n, m)
    return int(root), bool(exact)


def squarefree_decompose(n: int):
    """Décomposition unique n = b²·c avec c sans facteur carré."""
    _check_natural(n, minimum=1)
    b = c = 1
    for p, e in factorint(n).items():
        b *= p ** (e // 2)
        if e % 2:
            c *= p
    return b, c


def divisors(n: int) -> list:
    """Diviseurs positifs de n, croissants."""
    _check_natural(n, minimum=1)
    return [int(q) for q in _sympy_divisors(n)]


def squarefree_divisors(n: int) -> list:
    """Diviseurs de n sans facteur carré, croissants."""
    _check_natural(n, minimum=1)
    primes = sorted(factorint(n))
    result = [1]
    for p in primes:
        result += [q * p for q in result]
    return sorted(result)


def gcd(a: int, b: int) -> int:
    _check_natural(a, 'a')
    _check_natural(b, 'b')
    if a == 0 and b == 0:
        raise ValueError("gcd(0, 0) n'est pas défini")
    return int(gmpy2.gcd(a, b))
