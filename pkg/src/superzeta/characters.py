"""Real primitive Dirichlet characters as Kronecker symbols."""

from dataclasses import dataclass, field
from math import gcd, pi, sqrt

import numpy as np

from .errors import CharacterError


def _squarefree(n):
    n = abs(n)
    p = 2
    while p * p <= n:
        if n % (p * p) == 0:
            return False
        p += 1
    return True


def is_fundamental_discriminant(D):
    if D in (0, 1):
        return False
    if D % 4 == 1:
        return _squarefree(D)
    if D % 4 == 0:
        m = D // 4
        return m % 4 in (2, 3) and _squarefree(m)
    return False


def kronecker_symbol(D, n):
    """(D/n) by quadratic reciprocity, for any integers D, n."""
    if n == 0:
        return 1 if abs(D) == 1 else 0
    result = 1
    if n < 0:
        n = -n
        if D < 0:
            result = -result
    # strip factors of 2 from n
    v = 0
    while n % 2 == 0:
        n //= 2
        v += 1
    if v:
        if D % 2 == 0:
            return 0
        if v % 2 and D % 8 in (3, 5):
            result = -result
    # Jacobi symbol (D/n) with n odd positive
    a = D % n
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


@dataclass(frozen=True)
class RealPrimitiveCharacter:
    modulus: int
    values: tuple
    parity: int
    discriminant: int
    _array: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_array", np.asarray(self.values, dtype=float))

    def __call__(self, n):
        return self.values[n % self.modulus]

    @property
    def array(self):
        return self._array


def kronecker_character(D):
    if abs(D) <= 1 or not is_fundamental_discriminant(D):
        raise CharacterError(f"{D} is not a fundamental discriminant with |D| > 1")
    d = abs(D)
    values = tuple(kronecker_symbol(D, n) for n in range(d))
    return RealPrimitiveCharacter(d, values, 0 if D > 0 else 1, D)


@dataclass
class Certificate:
    passed: bool
    failures: list
    gauss_sum: complex


def gauss_normalized(chi):
    """(-i)^a d^{-1/2} sum chi(n) e^{2 pi i n/d}; equals 1 for real primitive chi."""
    d = chi.modulus
    n = np.arange(d)
    g = np.sum(chi.array * np.exp(2j * pi * n / d))
    return complex((-1j) ** chi.parity * g / sqrt(d))


def validate(chi, tol=1e-10):
    """Check the character axioms; return a Certificate listing every failure."""
    d = chi.modulus
    v = chi.values
    failures = []
    if len(v) != d or any(x not in (-1, 0, 1) for x in v):
        failures.append("values: table must have length d with entries in {-1,0,1}")
        return Certificate(False, failures, complex("nan"))
    if any((v[n] == 0) != (gcd(n, d) > 1) for n in range(d)):
        failures.append("zero-on-noncoprime: chi(n)=0 must hold exactly when gcd(n,d)>1")
    if any(v[(m * n) % d] != v[m] * v[n] for m in range(d) for n in range(d)):
        failures.append("multiplicativity: chi(mn) != chi(m)chi(n)")
    if v[d - 1] != (-1) ** chi.parity:
        failures.append("parity: chi(-1) != (-1)^a")
    if sum(v) != 0:
        failures.append("orthogonality: sum of chi over residues is nonzero")
    for dp in range(1, d):
        if d % dp:
            continue
        if all(v[n] == 1 for n in range(1, d) if (n - 1) % dp == 0 and gcd(n, d) == 1):
            failures.append(f"primitivity: induced from modulus {dp}")
            break
    if chi.discriminant not in (d, -d) or (1 - np.sign(chi.discriminant)) // 2 != chi.parity:
        failures.append("discriminant: sign of D must match parity")
    g = gauss_normalized(chi)
    if abs(g - 1) > tol:
        failures.append(f"gauss-sum: normalized Gaussian sum {g:.12g} != 1")
    return Certificate(not failures, failures, g)
