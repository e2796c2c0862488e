"""Exact resultants of homogeneous forms over Z.

Forms are dicts mapping exponent tuples to integer coefficients. Everything
here is sign-agnostic: callers consume |Res| or its valuation only.
"""

from __future__ import annotations

import itertools
import math
import random
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

Form = dict  # exponent tuple -> coefficient


def bareiss_det(matrix: Sequence[Sequence[int]]) -> int:
    """Fraction-free Gaussian elimination; exact for integer matrices."""
    M = [list(r) for r in matrix]
    n = len(M)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if M[k][k] == 0:
            for i in range(k + 1, n):
                if M[i][k] != 0:
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = M[k][k]
        rowk = M[k]
        for i in range(k + 1, n):
            rowi = M[i]
            a = rowi[k]
            if a:
                for j in range(k + 1, n):
                    rowi[j] = (rowi[j] * pivot - a * rowk[j]) // prev
            elif pivot != prev:
                for j in range(k + 1, n):
                    if rowi[j]:
                        rowi[j] = rowi[j] * pivot // prev
            rowi[k] = 0
        prev = pivot
    return sign * M[n - 1][n - 1]


def sylvester_matrix(f: Sequence[int], g: Sequence[int]) -> list[list[int]]:
    """Sylvester matrix of binary forms given as coefficient lists.

    ``f[i]`` is the coefficient of X^(m-i) Y^i, so len(f) = m + 1.
    """
    m, n = len(f) - 1, len(g) - 1
    size = m + n
    rows = []
    for s in range(n):
        rows.append([0] * s + list(f) + [0] * (size - m - 1 - s))
    for s in range(m):
        rows.append([0] * s + list(g) + [0] * (size - n - 1 - s))
    return rows


def sylvester_resultant(f: Sequence[int], g: Sequence[int]) -> int:
    return bareiss_det(sylvester_matrix(f, g))


def binary_coefficients(form: Form, d: int) -> list[int]:
    """Coefficient list of a binary form, highest power of the first variable first."""
    return [form.get((d - i, i), 0) for i in range(d + 1)]


@lru_cache(maxsize=None)
def monomials(nvars: int, degree: int) -> tuple[tuple[int, ...], ...]:
    """All exponent vectors of the given total degree, lex-descending."""
    if nvars == 1:
        return ((degree,),)
    out = []
    for a in range(degree, -1, -1):
        for rest in monomials(nvars - 1, degree - a):
            out.append((a,) + rest)
    return tuple(out)


def macaulay_matrices(forms: Sequence[Form], d: int) -> tuple[list[list[int]], list[list[int]]]:
    """Macaulay's matrix M and its extraneous minor M' for n forms of degree d in n variables.

    Rows and columns are indexed by the monomials of degree D = n(d-1)+1. The row
    of a monomial m is (m / x_i^d) * F_i for the least i with x_i^d | m. M' keeps
    the rows and columns of monomials divisible by x_i^d for two or more i.
    """
    nvars = len(forms)
    D = nvars * (d - 1) + 1
    mons = monomials(nvars, D)
    index = {m: k for k, m in enumerate(mons)}
    size = len(mons)
    M = []
    extraneous = []
    for k, m in enumerate(mons):
        big = [i for i in range(nvars) if m[i] >= d]
        i = big[0]
        if len(big) >= 2:
            extraneous.append(k)
        shift = list(m)
        shift[i] -= d
        row = [0] * size
        for exps, c in forms[i].items():
            col = index[tuple(s + e for s, e in zip(shift, exps))]
            row[col] += c
        M.append(row)
    Mp = [[M[r][c] for c in extraneous] for r in extraneous]
    return M, Mp


def _permute_variables(forms: Sequence[Form], perm: Sequence[int]) -> list[Form]:
    return [{tuple(e[perm[j]] for j in range(len(perm))): c for e, c in f.items()} for f in forms]


def _poly_mul(a: Form, b: Form) -> Form:
    out: Form = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = tuple(x + y for x, y in zip(ea, eb))
            out[e] = out.get(e, 0) + ca * cb
    return {e: c for e, c in out.items() if c}


def substitute_linear(forms: Sequence[Form], A: Sequence[Sequence[int]]) -> list[Form]:
    """F(A x): variable x_j is replaced by sum_k A[j][k] x_k."""
    n = len(A)
    linear = []
    for j in range(n):
        lf = {}
        for k in range(n):
            if A[j][k]:
                e = [0] * n
                e[k] = 1
                lf[tuple(e)] = A[j][k]
        linear.append(lf)
    one = {(0,) * n: 1}
    powers: dict[tuple[int, int], Form] = {}

    def power(j: int, e: int) -> Form:
        if e == 0:
            return one
        key = (j, e)
        if key not in powers:
            powers[key] = _poly_mul(power(j, e - 1), linear[j])
        return powers[key]

    out = []
    for f in forms:
        acc: Form = {}
        for exps, c in f.items():
            term = {(0,) * n: c}
            for j, e in enumerate(exps):
                if e:
                    term = _poly_mul(term, power(j, e))
            for m, v in term.items():
                acc[m] = acc.get(m, 0) + v
        out.append({m: v for m, v in acc.items() if v})
    return out


def _unimodular(n: int, rng: random.Random) -> list[list[int]]:
    A = [[int(i == j) for j in range(n)] for i in range(n)]
    for _ in range(3 * n):
        i, j = rng.sample(range(n), 2)
        c = rng.choice((-2, -1, 1, 2))
        for k in range(n):
            A[i][k] += c * A[j][k]
    return A


def _ratio(forms: Sequence[Form], d: int) -> Fraction | None:
    M, Mp = macaulay_matrices(forms, d)
    den = bareiss_det(Mp)
    if den == 0:
        return None
    return Fraction(bareiss_det(M), den)


def _perturbed_interpolation(forms: Sequence[Form], d: int) -> int:
    """Res(F + t x^d) is a polynomial in t of degree <= n d^(n-1); its value at t=0 is Res(F).

    The extraneous minor of the perturbed system is a nonzero polynomial in t
    (leading coefficient +-1), so all but finitely many t are usable.
    """
    nvars = len(forms)
    degree = nvars * d ** (nvars - 1)
    ts, vals = [], []
    t = 0
    while len(ts) < degree + 1:
        t += 1
        shifted = []
        for i, f in enumerate(forms):
            g = dict(f)
            e = tuple(d if j == i else 0 for j in range(nvars))
            g[e] = g.get(e, 0) + t
            shifted.append(g)
        r = _ratio(shifted, d)
        if r is not None:
            ts.append(t)
            vals.append(r)
    total = Fraction(0)
    for i, ti in enumerate(ts):
        w = Fraction(1)
        for j, tj in enumerate(ts):
            if j != i:
                w *= Fraction(-tj, ti - tj)
        total += w * vals[i]
    assert total.denominator == 1
    return int(total)


def integer_resultant(forms: Sequence[Form], d: int, seed: int = 0x5EED) -> int:
    """Macaulay resultant of integer forms, up to sign.

    Tries every variable ordering, then seeded unimodular changes of variables
    (both change Res by a sign only), then perturbation plus interpolation.
    """
    nvars = len(forms)
    forms = [{e: c for e, c in f.items() if c} for f in forms]
    for perm in itertools.permutations(range(nvars)):
        r = _ratio(_permute_variables(forms, perm), d)
        if r is not None:
            assert r.denominator == 1
            return int(r)
    rng = random.Random(seed)
    for _ in range(8):
        r = _ratio(substitute_linear(forms, _unimodular(nvars, rng)), d)
        if r is not None:
            assert r.denominator == 1
            return int(r)
    return _perturbed_interpolation(forms, d)


def rational_resultant(forms: Sequence[dict], d: int) -> Fraction:
    """Resultant of forms with Fraction coefficients, via Res(cF) = c^(n d^(n-1)) Res(F)."""
    nvars = len(forms)
    den = 1
    for f in forms:
        for c in f.values():
            q = Fraction(c).denominator
            den = den * q // math.gcd(den, q)
    cleared = [{e: int(Fraction(c) * den) for e, c in f.items()} for f in forms]
    return Fraction(integer_resultant(cleared, d), den ** (nvars * d ** (nvars - 1)))
