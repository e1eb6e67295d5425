"""Exact arithmetic over GF(p^m), polynomial factorization, linear algebra.

Field elements are integer codes in [0, p^m): the base-p digits of the
code are the coefficients of the element written in the power basis of a
fixed modulus.  The modulus is the lexicographically least monic
irreducible of the right degree, so serialized data is stable across
runs.  Small fields get full add/mul tables; larger ones (only reached
by the splitting-stability cross-checks) fall back to on-demand
polynomial arithmetic.
"""

from __future__ import annotations

from functools import lru_cache

from .errors import DimensionMismatch, NotPrime, ZeroPolynomial

_TABLE_LIMIT = 1024


def _is_prime(n):
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


# -- polynomial helpers over the prime field, used only to pick the modulus --

def _pf_trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _pf_mulmod(a, b, mod, p):
    out = [0] * (len(a) + len(b) - 1) if a and b else []
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    # reduce modulo the monic polynomial `mod`
    d = len(mod) - 1
    while len(out) > d:
        lead = out.pop()
        if lead:
            for k in range(d):
                out[-d + k] = (out[-d + k] - lead * mod[k]) % p
        _pf_trim(out)
    return _pf_trim(out)


def _pf_powmod(a, e, mod, p):
    result = [1]
    base = list(a)
    while e:
        if e & 1:
            result = _pf_mulmod(result, base, mod, p)
        base = _pf_mulmod(base, base, mod, p)
        e >>= 1
    return result


def _pf_gcd(a, b, p):
    a, b = list(a), list(b)
    while b:
        # a mod b with b made monic
        inv = pow(b[-1], p - 2, p)
        bm = [(c * inv) % p for c in b]
        while len(a) >= len(bm):
            lead = a[-1]
            if lead:
                shift = len(a) - len(bm)
                for k in range(len(bm)):
                    a[shift + k] = (a[shift + k] - lead * bm[k]) % p
            a.pop()
            _pf_trim(a)
            if not a:
                break
        a, b = b, a
    return a


def _pf_is_irreducible(f, p):
    m = len(f) - 1
    if m < 1:
        return False
    x = [0, 1]
    # x^(p^m) == x mod f
    if _pf_powmod(x, p ** m, f, p) != x:
        return False
    for ell in {q for q in range(2, m + 1) if m % q == 0 and _is_prime(q)}:
        h = _pf_powmod(x, p ** (m // ell), f, p)
        diff = list(h)
        while len(diff) < 2:
            diff.append(0)
        diff[1] = (diff[1] - 1) % p
        _pf_trim(diff)
        g = _pf_gcd(list(f), diff, p)
        if len(g) != 1:
            return False
    return True


def _least_irreducible(p, m):
    if m == 1:
        return (0, 1)
    for n in range(p ** m):
        coeffs = []
        k = n
        for _ in range(m):
            coeffs.append(k % p)
            k //= p
        f = coeffs + [1]
        if _pf_is_irreducible(f, p):
            return tuple(f)
    raise AssertionError("no irreducible polynomial found")


class Field:
    """GF(p^m) with elements encoded as integers in [0, p^m)."""

    def __init__(self, p, m):
        if not _is_prime(p):
            raise NotPrime(f"{p} is not prime")
        assert m >= 1
        self.p = p
        self.m = m
        self.q = p ** m
        self.modulus = _least_irreducible(p, m)
        self.zero = 0
        self.one = 1
        self._tables = None
        if self.q <= _TABLE_LIMIT:
            self._build_tables()

    def _build_tables(self):
        q, p, m = self.q, self.p, self.m
        add = [[0] * q for _ in range(q)]
        for a in range(q):
            for b in range(a, q):
                s = 0
                mult = 1
                x, y = a, b
                for _ in range(m):
                    s += ((x + y) % p) * mult
                    x //= p
                    y //= p
                    mult *= p
                add[a][b] = s
                add[b][a] = s
        mul = [[0] * q for _ in range(q)]
        for a in range(q):
            for b in range(a, q):
                v = self._poly_mul(a, b)
                mul[a][b] = v
                mul[b][a] = v
        inv = [0] * q
        for a in range(1, q):
            inv[a] = next(b for b in range(1, q) if mul[a][b] == 1)
        self._tables = (add, mul, inv)

    def _digits(self, a):
        out = []
        for _ in range(self.m):
            out.append(a % self.p)
            a //= self.p
        return out

    def _encode(self, digits):
        v = 0
        for d in reversed(digits):
            v = v * self.p + d
        return v

    def _poly_mul(self, a, b):
        p, m = self.p, self.m
        da, db = self._digits(a), self._digits(b)
        prod = [0] * (2 * m - 1)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    prod[i + j] = (prod[i + j] + x * y) % p
        mod = self.modulus
        for k in range(len(prod) - 1, m - 1, -1):
            c = prod[k]
            if c:
                prod[k] = 0
                for t in range(m):
                    prod[k - m + t] = (prod[k - m + t] - c * mod[t]) % p
        return self._encode(prod[:m])

    def add(self, a, b):
        if self._tables:
            return self._tables[0][a][b]
        da, db = self._digits(a), self._digits(b)
        return self._encode([(x + y) % self.p for x, y in zip(da, db)])

    def neg(self, a):
        return self._encode([(-x) % self.p for x in self._digits(a)])

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        if self._tables:
            return self._tables[1][a][b]
        return self._poly_mul(a, b)

    def inv(self, a):
        assert a != 0, "division by zero"
        if self._tables:
            return self._tables[2][a]
        return self.pow(a, self.q - 2)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, e):
        if e < 0:
            a, e = self.inv(a), -e
        r = 1
        while e:
            if e & 1:
                r = self.mul(r, a)
            a = self.mul(a, a)
            e >>= 1
        return r

    def frobenius(self, a):
        return self.pow(a, self.p)

    def scalar_from_int(self, n):
        return n % self.p

    def elements(self):
        return range(self.q)

    def coeffs(self, a):
        """Element as its coefficient list over GF(p), low degree first."""
        return self._digits(a)

    def from_coeffs(self, digits):
        digits = list(digits) + [0] * (self.m - len(digits))
        return self._encode([d % self.p for d in digits[: self.m]])

    def __eq__(self, other):
        return isinstance(other, Field) and (self.p, self.m) == (other.p, other.m)

    def __hash__(self):
        return hash((self.p, self.m))

    def __repr__(self):
        return f"GF({self.p}^{self.m})" if self.m > 1 else f"GF({self.p})"


@lru_cache(maxsize=None)
def field(p, m=1):
    return Field(p, m)


# -- polynomials over a Field (coefficient lists, low degree first) ----------

def poly_trim(f):
    f = list(f)
    while f and f[-1] == 0:
        f.pop()
    return f


def poly_degree(f):
    return len(f) - 1


def poly_add(K, f, g):
    n = max(len(f), len(g))
    f = list(f) + [0] * (n - len(f))
    g = list(g) + [0] * (n - len(g))
    return poly_trim([K.add(a, b) for a, b in zip(f, g)])


def poly_sub(K, f, g):
    return poly_add(K, f, [K.neg(c) for c in g])


def poly_scale(K, f, c):
    return poly_trim([K.mul(a, c) for a in f])


def poly_mul(K, f, g):
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] = K.add(out[i + j], K.mul(a, b))
    return poly_trim(out)


def poly_divmod(K, f, g):
    assert g, "division by zero polynomial"
    f = list(f)
    q = [0] * max(len(f) - len(g) + 1, 0)
    inv_lead = K.inv(g[-1])
    while len(f) >= len(g):
        c = K.mul(f[-1], inv_lead)
        shift = len(f) - len(g)
        q[shift] = c
        for k in range(len(g)):
            f[shift + k] = K.sub(f[shift + k], K.mul(c, g[k]))
        f.pop()
        f = poly_trim(f)
        if not f:
            break
    return poly_trim(q), f


def poly_mod(K, f, g):
    return poly_divmod(K, f, g)[1]


def poly_monic(K, f):
    if not f:
        return f
    return poly_scale(K, f, K.inv(f[-1]))


def poly_gcd(K, f, g):
    f, g = poly_trim(f), poly_trim(g)
    while g:
        f, g = g, poly_mod(K, f, g)
    return poly_monic(K, f)


def poly_powmod(K, f, e, mod):
    r = [1]
    f = poly_mod(K, f, mod)
    while e:
        if e & 1:
            r = poly_mod(K, poly_mul(K, r, f), mod)
        f = poly_mod(K, poly_mul(K, f, f), mod)
        e >>= 1
    return r


def poly_deriv(K, f):
    return poly_trim([K.mul(K.scalar_from_int(i), c) for i, c in enumerate(f)][1:])


def poly_eval(K, f, x):
    acc = 0
    for c in reversed(f):
        acc = K.add(K.mul(acc, x), c)
    return acc


def poly_is_irreducible(K, f):
    """Standard x^(q^k) - x criterion over GF(q)."""
    f = poly_monic(K, poly_trim(f))
    d = poly_degree(f)
    if d <= 0:
        return False
    if d == 1:
        return True
    x = [0, 1]
    if poly_powmod(K, x, K.q ** d, f) != x:
        return False
    for ell in {r for r in range(2, d + 1) if d % r == 0 and _is_prime(r)}:
        h = poly_sub(K, poly_powmod(K, x, K.q ** (d // ell), f), x)
        if poly_degree(poly_gcd(K, f, h)) != 0:
            return False
    return True


def _squarefree_parts(K, f):
    """Yield (squarefree factor, multiplicity) pairs; handles p-th powers."""
    f = poly_monic(K, f)
    if poly_degree(f) == 0:
        return
    df = poly_deriv(K, f)
    if not df:
        # f = g(x^p); take p-th root of coefficients via inverse Frobenius
        p = K.p
        root = [K.pow(f[i], K.q // p) for i in range(0, len(f), p)]
        for g, mult in _squarefree_parts(K, root):
            yield g, mult * p
        return
    c = poly_gcd(K, f, df)
    w = poly_divmod(K, f, c)[0]
    mult = 1
    while poly_degree(w) > 0:
        y = poly_gcd(K, w, c)
        z = poly_divmod(K, w, y)[0]
        if poly_degree(z) > 0:
            yield poly_monic(K, z), mult
        w = y
        c = poly_divmod(K, c, y)[0]
        mult += 1
    if poly_degree(c) > 0:
        # c is exactly the p-th power part, with full multiplicity; its
        # derivative vanishes, so the recursion takes the p-th root path.
        yield from _squarefree_parts(K, c)


def _monic_polys_of_degree(K, d):
    for n in range(K.q ** d):
        coeffs = []
        k = n
        for _ in range(d):
            coeffs.append(k % K.q)
            k //= K.q
        yield coeffs + [1]


def _split_equal_degree(K, f, d):
    """Factor a product of distinct degree-d irreducibles by a deterministic
    sweep of all monic degree-d candidates (tiny fields only)."""
    factors = []
    rem = f
    while poly_degree(rem) > d:
        for cand in _monic_polys_of_degree(K, d):
            q, r = poly_divmod(K, rem, cand)
            if not r and poly_is_irreducible(K, cand):
                factors.append(cand)
                rem = q
                break
        else:
            raise AssertionError("equal-degree split failed")
    factors.append(rem)
    return factors


def factor(K, f):
    """Full factorization: list of (monic irreducible, multiplicity).

    Squarefree decomposition, then distinct-degree splitting, then a
    deterministic trial sweep for the equal-degree step.  Factors are
    sorted; the product, scaled by the input's leading coefficient,
    reproduces the input exactly.
    """
    f = poly_trim(f)
    if not f:
        raise ZeroPolynomial("cannot factor the zero polynomial")
    out = []
    for g, mult in _squarefree_parts(K, f):
        d = 1
        rem = g
        while poly_degree(rem) > 0:
            x = [0, 1]
            h = poly_sub(K, poly_powmod(K, x, K.q ** d, rem), x)
            part = poly_gcd(K, rem, h)
            if poly_degree(part) > 0:
                if poly_degree(part) == d:
                    pieces = [part]
                else:
                    pieces = _split_equal_degree(K, part, d)
                for piece in pieces:
                    out.append((tuple(piece), mult))
                rem = poly_divmod(K, rem, part)[0]
            d += 1
            if d > poly_degree(rem) and poly_degree(rem) > 0:
                out.append((tuple(poly_monic(K, rem)), mult))
                break
    out.sort()
    return [(list(g), m) for g, m in out]


def poly_roots(K, f):
    """Roots in K with multiplicity, via the linear factors of `factor`."""
    roots = []
    for g, mult in factor(K, f):
        if poly_degree(g) == 1:
            roots.extend([K.neg(g[0])] * mult)
    return sorted(roots)


# -- dense matrices ----------------------------------------------------------

class Matrix:
    """Dense matrix over a Field; all operations exact."""

    def __init__(self, K, rows):
        self.K = K
        self.rows = [list(r) for r in rows]
        self.nrows = len(self.rows)
        self.ncols = len(self.rows[0]) if self.rows else 0
        for r in self.rows:
            if len(r) != self.ncols:
                raise DimensionMismatch("ragged rows")

    @classmethod
    def identity(cls, K, n):
        return cls(K, [[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def zero(cls, K, nrows, ncols):
        return cls(K, [[0] * ncols for _ in range(nrows)])

    def copy(self):
        return Matrix(self.K, self.rows)

    def transpose(self):
        return Matrix(self.K, [[self.rows[i][j] for i in range(self.nrows)]
                               for j in range(self.ncols)])

    def mul(self, other):
        if self.ncols != other.nrows:
            raise DimensionMismatch("matrix product shape mismatch")
        K = self.K
        out = [[0] * other.ncols for _ in range(self.nrows)]
        for i in range(self.nrows):
            row = self.rows[i]
            for k in range(self.ncols):
                a = row[k]
                if a:
                    orow = other.rows[k]
                    trow = out[i]
                    for j in range(other.ncols):
                        if orow[j]:
                            trow[j] = K.add(trow[j], K.mul(a, orow[j]))
        return Matrix(K, out)

    def rref(self):
        """(reduced row echelon form, rank, pivot columns)."""
        K = self.K
        rows = [list(r) for r in self.rows]
        pivots = []
        r = 0
        for c in range(self.ncols):
            pivot = next((i for i in range(r, len(rows)) if rows[i][c]), None)
            if pivot is None:
                continue
            rows[r], rows[pivot] = rows[pivot], rows[r]
            inv = K.inv(rows[r][c])
            rows[r] = [K.mul(inv, x) for x in rows[r]]
            for i in range(len(rows)):
                if i != r and rows[i][c]:
                    f = rows[i][c]
                    rows[i] = [K.sub(x, K.mul(f, y)) for x, y in zip(rows[i], rows[r])]
            pivots.append(c)
            r += 1
            if r == len(rows):
                break
        return Matrix(K, rows), r, tuple(pivots)

    def rank(self):
        return self.rref()[1]

    def solve(self, b):
        """A solution x of self * x = b, or None."""
        if len(b) != self.nrows:
            raise DimensionMismatch("rhs length mismatch")
        aug = Matrix(self.K, [row + [bv] for row, bv in zip(self.rows, b)])
        R, rank, pivots = aug.rref()
        if self.ncols in pivots:
            return None
        x = [0] * self.ncols
        for i, c in enumerate(pivots):
            x[c] = R.rows[i][-1]
        return x

    def kernel_basis(self):
        """Basis of the right kernel, one vector per free column."""
        K = self.K
        R, rank, pivots = self.rref()
        pivset = set(pivots)
        basis = []
        for free in range(self.ncols):
            if free in pivset:
                continue
            v = [0] * self.ncols
            v[free] = 1
            for i, c in enumerate(pivots):
                v[c] = K.neg(R.rows[i][free])
            basis.append(v)
        return basis

    def __eq__(self, other):
        return isinstance(other, Matrix) and self.K == other.K and self.rows == other.rows

    def __repr__(self):
        return f"Matrix({self.nrows}x{self.ncols} over {self.K!r})"


def row_space_contains(K, rows, vector):
    """Is `vector` in the row space of `rows`?"""
    if not rows:
        return all(v == 0 for v in vector)
    M = Matrix(K, rows)
    return M.rank() == Matrix(K, rows + [list(vector)]).rank()


def echelon_basis(K, rows):
    """Canonical (rref) basis of the row space of `rows`."""
    if not rows:
        return []
    R, rank, _ = Matrix(K, rows).rref()
    return [R.rows[i] for i in range(rank)]
