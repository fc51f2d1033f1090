"""Integer and lattice utilities: primality, factorization, Euler phi,
Hermite-style integer elimination and integer kernels.

Factorization is deliberately desk-scale: trial division up to a configurable
limit followed by a deterministic Miller-Rabin test on the cofactor.  Inputs
whose rational parts do not fully factor are rejected rather than silently
handled with heavy machinery.
"""

import math
from functools import lru_cache

from .errors import FactorizationError

TRIAL_DIVISION_LIMIT = 10**6

# Miller-Rabin with this base set is deterministic below 3.317e24
# (Sorenson & Webster).
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
_MR_DETERMINISTIC_BOUND = 3317044064679887385961981


def is_prime(n):
    """Deterministic primality test for n < 3.317e24."""
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    if n >= _MR_DETERMINISTIC_BOUND:
        raise FactorizationError(
            f"cannot certify primality of {n}: above deterministic Miller-Rabin range"
        )
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def factorize(n, trial_limit=TRIAL_DIVISION_LIMIT):
    """Factor a positive integer into {prime: exponent}.

    Raises FactorizationError when the cofactor after trial division is
    composite (desk-scale inputs are expected to factor completely).
    """
    if n <= 0:
        raise ValueError("factorize expects a positive integer")
    factors = {}
    for p in (2, 3, 5):
        while n % p == 0:
            factors[p] = factors.get(p, 0) + 1
            n //= p
    p = 7
    wheel = (4, 2, 4, 2, 4, 6, 2, 6)
    i = 0
    while p * p <= n and p <= trial_limit:
        while n % p == 0:
            factors[p] = factors.get(p, 0) + 1
            n //= p
        p += wheel[i]
        i = (i + 1) % 8
    if n > 1:
        if is_prime(n):
            factors[n] = factors.get(n, 0) + 1
        else:
            raise FactorizationError(
                f"cofactor {n} is composite and exceeds the trial division limit"
            )
    return factors


@lru_cache(maxsize=None)
def euler_phi(n):
    if n < 1:
        raise ValueError("euler_phi expects n >= 1")
    result = n
    for p in factorize(n):
        result -= result // p
    return result


def divisors(n):
    """Sorted list of positive divisors."""
    divs = [1]
    for p, e in factorize(n).items():
        divs = [d * p**k for d in divs for k in range(e + 1)]
    return sorted(divs)


def find_primes_congruent_one(modulus, count, seed=0, bits=62, avoid=()):
    """Deterministic search for `count` primes p = 1 (mod modulus) of the
    given bit size, skipping any prime in `avoid`.

    The starting point is derived from (modulus, seed) so repeated runs give
    the same primes.
    """
    import random

    avoid = set(avoid)
    rng = random.Random(f"{modulus}:{seed}:{bits}")
    start = rng.getrandbits(bits - 1) | (1 << (bits - 1))
    c = start + ((1 - start) % modulus)
    if c <= 1 << (bits - 1):
        c += modulus
    found = []
    while len(found) < count:
        if c % 2 == 1 and (c - 1) % modulus == 0 and c not in avoid and is_prime(c):
            found.append(c)
        c += modulus
    return found


def _swap_rows(mat, i, j):
    mat[i], mat[j] = mat[j], mat[i]


def row_echelon_integer(rows):
    """Integer row echelon form with a unimodular transform.

    Returns (H, U) with U unimodular and U @ A = H, where H is in row
    echelon form with positive pivots and rows below each pivot zeroed by
    extended-gcd eliminations.  Zero rows of H sit at the bottom.
    """
    A = [list(r) for r in rows]
    n = len(A)
    m = len(A[0]) if n else 0
    U = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    pivot_row = 0
    for col in range(m):
        if pivot_row >= n:
            break
        # Eliminate entries below pivot_row in this column via gcd steps.
        piv = None
        for r in range(pivot_row, n):
            if A[r][col] != 0:
                piv = r
                break
        if piv is None:
            continue
        _swap_rows(A, pivot_row, piv)
        _swap_rows(U, pivot_row, piv)
        for r in range(pivot_row + 1, n):
            while A[r][col] != 0:
                if abs(A[pivot_row][col]) > abs(A[r][col]):
                    _swap_rows(A, pivot_row, r)
                    _swap_rows(U, pivot_row, r)
                q = A[r][col] // A[pivot_row][col]
                if q != 0:
                    for k in range(m):
                        A[r][k] -= q * A[pivot_row][k]
                    for k in range(n):
                        U[r][k] -= q * U[pivot_row][k]
                else:
                    break
        if A[pivot_row][col] < 0:
            A[pivot_row] = [-x for x in A[pivot_row]]
            U[pivot_row] = [-x for x in U[pivot_row]]
        pivot_row += 1
    return A, U


def integer_kernel(rows, width=None):
    """Basis of {k in Z^n : k @ rows-as-columns... } -- precisely, of
    {k in Z^n : sum_i k[i]*rows[i] = 0} for integer row vectors.

    Computed from the unimodular transform of the row echelon reduction:
    transform rows mapping to zero rows form a saturated kernel basis.
    """
    if not rows:
        return []
    H, U = row_echelon_integer(rows)
    basis = [tuple(U[i]) for i in range(len(H)) if all(x == 0 for x in H[i])]
    return [_normalize_sign(v) for v in basis]


def kernel_of_columns(matrix, ncols):
    """Basis of {k in Z^ncols : matrix @ k = 0} for an integer matrix given
    as a list of rows."""
    if ncols == 0:
        return []
    if not matrix:
        return [tuple(1 if i == j else 0 for j in range(ncols)) for i in range(ncols)]
    # Kernel vectors of A (as columns) = integer relations among the columns
    # of A = kernel of the transposed row list.
    cols = [tuple(row[j] for row in matrix) for j in range(ncols)]
    return integer_kernel(cols)


def _normalize_sign(vec):
    for x in vec:
        if x != 0:
            return tuple(vec) if x > 0 else tuple(-y for y in vec)
    return tuple(vec)


def hnf_basis(vectors):
    """Canonical (echelon, positive-pivot) basis for the lattice spanned by
    integer vectors; drops zero rows."""
    if not vectors:
        return []
    H, _ = row_echelon_integer(vectors)
    return [tuple(r) for r in H if any(x != 0 for x in r)]
