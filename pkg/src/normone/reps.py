"""Two-dimensional representations over prime fields.

Covers the degree sets that control when such a representation of a group
of order coprime to p can have zero fixed space while some line's
stabilizer acts trivially on the line, witness constructions for the
degrees where one exists, the explicit 2-Sylow generators of GL_2(F_p),
and an exhaustive subgroup scan certifying the non-existence half.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    BudgetExceeded,
    NotCoprime,
    NotPrime,
    PreconditionFailed,
    SpecInvalid,
)
from .groups import (
    FiniteGroup,
    SubgroupHandle,
    build_group,
    extend_from_generators,
    is_prime,
    semidirect_from_action,
    subgroup_closure,
    trivial_subgroup,
    vector_index,
)
from .lattices import j_lattice


# -- quadratic extension arithmetic ------------------------------------------


class QuadraticField:
    """F_{p^2} as F_p[w] with w^2 = c for the least non-residue c (p odd)
    or w^2 = w + 1 (p = 2).  Elements are pairs (a, b) = a + b w."""

    def __init__(self, p):
        p = int(p)
        if not is_prime(p):
            raise NotPrime(f"{p} is not prime")
        self.p = p
        if p == 2:
            self.c = None  # w^2 = w + 1
        else:
            residues = {(x * x) % p for x in range(1, p)}
            self.c = next(c for c in range(2, p) if c not in residues)

    def mul(self, x, y):
        p = self.p
        a, b = x
        c2, d = y
        if p == 2:
            # w^2 = w + 1
            hi = b * d
            return ((a * c2 + hi) % 2, (a * d + b * c2 + hi) % 2)
        return ((a * c2 + self.c * b * d) % p, (a * d + b * c2) % p)

    def pow(self, x, k):
        out = (1, 0)
        base = x
        k = int(k)
        while k:
            if k & 1:
                out = self.mul(out, base)
            base = self.mul(base, base)
            k >>= 1
        return out

    def order(self, x):
        if x == (0, 0):
            raise ValueError("zero has no multiplicative order")
        k, acc = 1, x
        while acc != (1, 0):
            acc = self.mul(acc, x)
            k += 1
        return k

    def generator(self):
        """Smallest (a, b) in lexicographic order generating the unit group."""
        full = self.p**2 - 1
        for a in range(self.p):
            for b in range(self.p):
                x = (a, b)
                if x == (0, 0):
                    continue
                if self.order(x) == full:
                    return x
        raise ArithmeticError("no generator found")  # unreachable

    def zeta(self, n):
        """A primitive n-th root of unity (requires n | p^2 - 1)."""
        full = self.p**2 - 1
        if full % int(n):
            raise ValueError(f"no {n}-th roots of unity in F_{self.p}^2")
        return self.pow(self.generator(), full // int(n))

    def trace(self, x):
        """x + x^p, an element of the prime field (second coordinate zero)."""
        a, b = self.frobenius_sum(x)
        if b:
            raise ArithmeticError("trace left the prime field")
        return a

    def frobenius_sum(self, x):
        y = self.pow(x, self.p)
        return ((x[0] + y[0]) % self.p, (x[1] + y[1]) % self.p)

    def norm(self, x):
        y = self.pow(x, self.p + 1)
        if y[1]:
            raise ArithmeticError("norm left the prime field")
        return y[0]


def prime_field_root(p, n):
    """A primitive n-th root of unity in F_p (requires n | p - 1)."""
    p, n = int(p), int(n)
    if (p - 1) % n:
        raise ValueError(f"no {n}-th roots of unity in F_{p}")
    for g in range(2, p):
        k, acc = 1, g
        while acc != 1:
            acc = acc * g % p
            k += 1
        if k == p - 1:
            return pow(g, (p - 1) // n, p)
    return 1 if n == 1 else None


# -- degree sets ---------------------------------------------------------------


@dataclass(frozen=True)
class DMembership:
    """Membership flags of a degree d for the prime p."""

    d: int
    p: int
    in_pZ: bool
    in_p2Z: bool
    in_D1: bool
    in_D2: bool
    in_S: bool


def _is_power_of_two(n):
    # 1 = 2^0 counts as a power of two
    return n >= 1 and n & (n - 1) == 0


def d_membership(d, p):
    """Exact membership of d in pZ, p^2 Z, and the two critical degree sets.

    The first set asks gcd(d, p-1) >= 3; the second asks gcd(d, p+1) not a
    power of two (with 1 counting as a power of two).
    """
    d, p = int(d), int(p)
    if d < 1:
        raise ValueError("degree must be positive")
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    in_p = d % p == 0
    in_p2 = d % (p * p) == 0
    in_d1 = in_p and math.gcd(d, p - 1) >= 3
    in_d2 = in_p and not _is_power_of_two(math.gcd(d, p + 1))
    return DMembership(d, p, in_p, in_p2, in_d1, in_d2, in_p2 or in_d1 or in_d2)


def s_min(p):
    """Smallest degree admitting a p-primary obstruction: 3p (p odd), 4 (p = 2).

    Cross-checked against a direct scan of the membership flags.
    """
    p = int(p)
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    formula = 4 if p == 2 else 3 * p
    scanned = next(d for d in range(1, formula + 1) if d_membership(d, p).in_S)
    if scanned != formula:
        raise ArithmeticError(f"membership scan disagrees with closed form at p={p}")
    return formula


# -- representations -----------------------------------------------------------


def normalize_line(v, p):
    """Canonical projective representative: first nonzero coordinate 1."""
    a, b = int(v[0]) % p, int(v[1]) % p
    if a:
        inv = pow(a, p - 2, p) if p > 2 else a
        return (1, b * inv % p)
    if b:
        return (0, 1)
    raise ValueError("zero vector spans no line")


def all_lines(p):
    return [(1, b) for b in range(p)] + [(0, 1)]


def line_image(M, line, p):
    v = (np.asarray(M, dtype=np.int64) @ np.array(line, dtype=np.int64)) % p
    return normalize_line(v, p)


def fixes_line_pointwise(M, line, p):
    v = np.array(line, dtype=np.int64)
    return ((np.asarray(M, dtype=np.int64) @ v) % p == v % p).all()


class RepTwoDim:
    """A 2-dimensional representation over F_p of a group of coprime order,
    with an optional marked line and line-stabilizing subgroup."""

    __slots__ = ("group", "p", "mats", "line", "hprime")

    def __init__(self, group, p, mats, line=None, hprime=None, validate=True):
        self.group = group
        self.p = int(p)
        mats = np.asarray(mats, dtype=np.int64) % self.p
        if mats.shape != (group.order, 2, 2):
            raise SpecInvalid("need one 2x2 matrix per group element")
        self.mats = mats
        self.line = normalize_line(line, self.p) if line is not None else None
        self.hprime = hprime
        if validate:
            self._validate()

    def _validate(self):
        G, p = self.group, self.p
        if G.order % p == 0:
            raise NotCoprime("the group order must be coprime to p")
        if not (self.mats[G.identity] == np.eye(2, dtype=np.int64)).all():
            raise SpecInvalid("identity must act trivially")
        for s in G.gens:
            prod = self.mats @ self.mats[s] % p
            if not (prod == self.mats[G.mul[:, s]]).all():
                raise SpecInvalid("matrices do not define a homomorphism")
        if self.hprime is not None and self.line is not None:
            for h in self.hprime.elements:
                if line_image(self.mats[h], self.line, p) != self.line:
                    raise SpecInvalid("marked subgroup does not stabilize the line")

    def matrix(self, g):
        return self.mats[int(g)]

    def __repr__(self):
        return f"RepTwoDim(order {self.group.order} over F_{self.p})"


def fixed_space_dim(mats, gens, p):
    """Dimension over F_p of the common fixed space of the generator matrices."""
    rows = []
    for s in gens:
        rows.extend(((np.asarray(mats[s]) - np.eye(2, dtype=np.int64)) % p).tolist())
    A = np.array(rows, dtype=np.int64) % p
    # rank over F_p by Gaussian elimination
    cols = A.shape[1]
    r = 0
    for c in range(cols):
        piv = None
        for i in range(r, A.shape[0]):
            if A[i, c] % p:
                piv = i
                break
        if piv is None:
            continue
        A[[r, piv]] = A[[piv, r]]
        inv = pow(int(A[r, c]), p - 2, p) if p > 2 else int(A[r, c])
        A[r] = A[r] * inv % p
        for i in range(A.shape[0]):
            if i != r and A[i, c] % p:
                A[i] = (A[i] - A[i, c] * A[r]) % p
        r += 1
    return cols - r


def check_bc(rep):
    """(no nonzero fixed vectors, the marked line's stabilizer fixes it pointwise)."""
    G, p = rep.group, rep.p
    gens = list(G.gens) or [G.identity]
    b = fixed_space_dim(rep.mats, gens, p) == 0
    if rep.line is None:
        raise SpecInvalid("the second condition needs a marked line")
    stab = [g for g in G.elements() if line_image(rep.mats[g], rep.line, p) == rep.line]
    c = all(fixes_line_pointwise(rep.mats[g], rep.line, p) for g in stab)
    return b, c


def cyclic_group(n, label=None):
    n = int(n)
    table = [[(i + j) % n for j in range(n)] for i in range(n)]
    return FiniteGroup(table, identity=0, label=label or f"Z{n}", gens=[1] if n > 1 else [], validate=False)


def _rep_from_generator_matrix(G, M, p, line=None, hprime=None):
    if G.order == 1:
        eye = np.eye(2, dtype=np.int64).reshape(1, 2, 2)
        return RepTwoDim(G, p, eye, line=line, hprime=hprime, validate=False)
    mats = extend_from_generators(
        G,
        [np.asarray(M, dtype=np.int64) % p],
        lambda A, B: (A @ B) % p,
        np.eye(2, dtype=np.int64),
        eq=lambda A, B: (A == B).all(),
    )
    if mats is None:
        raise SpecInvalid("generator matrix does not define a representation")
    return RepTwoDim(G, p, np.stack(mats), line=line, hprime=hprime, validate=False)


def reps_of_cyclic(p, n):
    """All isomorphism classes of 2-dimensional representations of Z/n over F_p.

    Split classes are unordered pairs of characters (orders divide
    gcd(n, p-1)); the rest are Frobenius orbits of primitive-field
    characters, realized by companion matrices with trace t = z + z^p and
    determinant z^{p+1} for an eigenvalue z of order dividing gcd(n, p^2-1)
    but not p-1, taken modulo z ~ z^p.
    """
    p, n = int(p), int(n)
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if math.gcd(p, n) != 1:
        raise NotCoprime(f"{n} is not coprime to {p}")
    G = cyclic_group(n)
    out = []
    m1 = math.gcd(n, p - 1)
    w = prime_field_root(p, m1)
    for j1 in range(m1):
        for j2 in range(j1, m1):
            M = np.diag([pow(w, j1, p), pow(w, j2, p)]).astype(np.int64)
            out.append(_rep_from_generator_matrix(G, M, p))
    m2 = math.gcd(n, p * p - 1)
    fp2 = QuadraticField(p)
    zeta = fp2.zeta(m2) if m2 > 1 else (1, 0)
    seen = set()
    for j in range(1, m2):
        jj = min(j, (p * j) % m2)
        if jj in seen:
            continue
        seen.add(jj)
        zj = fp2.pow(zeta, j)
        if zj[1] == 0:
            continue  # eigenvalue in the prime field: split case
        t = fp2.trace(zj)
        nrm = fp2.norm(zj)
        M = np.array([[0, -nrm], [1, t]], dtype=np.int64) % p
        out.append(_rep_from_generator_matrix(G, M, p))
    return out


def witness_rep(p, n):
    """A representation of Z/n with zero fixed space whose marked line has a
    pointwise-trivial stabilizer, when the degree p*n admits one; None
    otherwise.

    Built through the quotient Z/n -> Z/l (or Z/4): a pair of distinct
    nontrivial characters when gcd(n, p-1) has an odd prime divisor, the
    order-4 character pair when 4 | gcd(n, p-1), and the irreducible
    trace-companion representation for an odd prime divisor of gcd(n, p+1).
    """
    p, n = int(p), int(n)
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if math.gcd(p, n) != 1:
        raise NotCoprime(f"{n} is not coprime to {p}")
    flags = d_membership(p * n, p)
    if not (flags.in_D1 or flags.in_D2):
        return None
    G = cyclic_group(n)
    g1 = math.gcd(n, p - 1)
    odd1 = next((q for q in range(3, g1 + 1, 2) if g1 % q == 0 and is_prime(q)), None)
    if odd1 is not None:
        w = prime_field_root(p, odd1)
        M = np.diag([w, pow(w, 2, p)]).astype(np.int64)
        line = (1, 1)
    elif g1 % 4 == 0:
        w = prime_field_root(p, 4)
        M = np.diag([w, pow(w, 2, p)]).astype(np.int64)
        line = (1, 1)
    else:
        g2 = math.gcd(n, p + 1)
        odd2 = next(q for q in range(3, g2 + 1, 2) if g2 % q == 0 and is_prime(q))
        fp2 = QuadraticField(p)
        t = fp2.trace(fp2.zeta(odd2))
        M = np.array([[0, -1], [1, t]], dtype=np.int64) % p
        line = (1, 0)
    return _rep_from_generator_matrix(G, M, p, line=line, hprime=trivial_subgroup(G))


def s3_standard_rep(p):
    """The irreducible 2-dimensional representation of the order-6 symmetric
    group: the norm-one lattice of a point stabilizer reduced mod p, with
    the unique line fixed pointwise by that stabilizer marked.

    The marked line is spanned by 2*[eH] - [xH] - [yH] (the two cosets of
    the other point stabilizers), pushed through the quotient map.
    """
    p = int(p)
    if not is_prime(p) or p < 5:
        raise PreconditionFailed("a prime p >= 5 is required")
    s3 = build_group(
        {"kind": "permutations", "degree": 3, "generators": ["(1 2 3)", "(1 2)"], "label": "S3"}
    )
    H = subgroup_closure(s3, [s3.gens[1]])  # the marked point stabilizer
    J, qmap = j_lattice(s3, [(H, 1)])
    mats = J.act % p
    from .lattices import coset_table

    reps_list, coset_of = coset_table(s3, H)
    w = np.full(len(reps_list), -1, dtype=np.int64)
    w[coset_of[s3.identity]] = 2
    line = normalize_line((qmap.matrix @ w) % p, p)
    return RepTwoDim(s3, p, mats, line=line, hprime=H)


def _mat_tuple(M):
    return (int(M[0, 0]) , int(M[0, 1]), int(M[1, 0]), int(M[1, 1]))


def _tuple_mat(t):
    return np.array([[t[0], t[1]], [t[2], t[3]]], dtype=np.int64)


def _tmul(a, b, p):
    return (
        (a[0] * b[0] + a[1] * b[2]) % p,
        (a[0] * b[1] + a[1] * b[3]) % p,
        (a[2] * b[0] + a[3] * b[2]) % p,
        (a[2] * b[1] + a[3] * b[3]) % p,
    )


def _torder(t, p):
    ident = (1, 0, 0, 1)
    k, acc = 1, t
    while acc != ident:
        acc = _tmul(acc, t, p)
        k += 1
    return k


def _tclosure(gens, p, cap=None):
    ident = (1, 0, 0, 1)
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for x in frontier:
            for s in gens:
                y = _tmul(x, s, p)
                if y not in seen:
                    if cap is not None and len(seen) >= cap:
                        return None
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return frozenset(seen)


def sylow2_gl2(p):
    """Generators and order of a 2-Sylow subgroup of GL_2(F_p), p odd.

    For p = 1 mod 4 the generators are the two diagonal matrices with a
    primitive 2^s-th root of unity (s = ord_2(p-1)) and the coordinate
    swap.  For p = 3 mod 4 they are the trace companion X of a primitive
    2^{s+1}-th root of unity (s = ord_2(p+1)) and Y = rot90 * X, with
    X^{2^s} = -1, Y^2 = 1, Y X Y^{-1} = X^{2^s - 1}.
    """
    p = int(p)
    if not is_prime(p) or p == 2:
        raise PreconditionFailed("an odd prime is required")
    if p % 4 == 1:
        s = 0
        q = p - 1
        while q % 2 == 0:
            s += 1
            q //= 2
        zeta = prime_field_root(p, 2**s)
        X = np.array([[zeta, 0], [0, 1]], dtype=np.int64)
        Y = np.array([[1, 0], [0, zeta]], dtype=np.int64)
        Z = np.array([[0, 1], [1, 0]], dtype=np.int64)
        gens = [X, Y, Z]
    else:
        s = 0
        q = p + 1
        while q % 2 == 0:
            s += 1
            q //= 2
        fp2 = QuadraticField(p)
        t = fp2.trace(fp2.zeta(2 ** (s + 1)))
        X = np.array([[0, 1], [1, t]], dtype=np.int64) % p
        Y = np.array([[0, 1], [-1, 0]], dtype=np.int64) % p @ X % p
        gens = [X, Y]
        # defining relations, verified exactly
        xt = _mat_tuple(X)
        acc = (1, 0, 0, 1)
        for _ in range(2**s):
            acc = _tmul(acc, xt, p)
        if acc != ((p - 1) % p, 0, 0, (p - 1) % p):
            raise ArithmeticError("X does not have the expected 2-power relation")
        yt = _mat_tuple(Y)
        if _tmul(yt, yt, p) != (1, 0, 0, 1):
            raise ArithmeticError("Y is not an involution")
        conj = _tmul(_tmul(yt, xt, p), _tinv(yt, p), p)
        expected = (1, 0, 0, 1)
        for _ in range(2**s - 1):
            expected = _tmul(expected, xt, p)
        if conj != expected:
            raise ArithmeticError("the dihedral-type relation fails")
    group = _tclosure([_mat_tuple(M) for M in gens], p)
    order = len(group)
    glorder = p * (p - 1) ** 2 * (p + 1)
    expected = 1
    while glorder % 2 == 0:
        expected *= 2
        glorder //= 2
    if order != expected:
        raise ArithmeticError(f"Sylow order {order} != expected {expected}")
    return [np.array(M, dtype=np.int64) % p for M in gens], order


def _tinv(t, p):
    det = (t[0] * t[3] - t[1] * t[2]) % p
    dinv = pow(det, p - 2, p)
    return (t[3] * dinv % p, -t[1] * dinv % p, -t[2] * dinv % p, t[0] * dinv % p)


@dataclass
class ScanHit:
    """One (group, subgroup, line) triple passing both conditions."""

    group_class: int
    group_order: int
    group_elements: tuple
    subgroup_elements: tuple
    line: tuple
    group_cyclic: bool


@dataclass
class ScanReport:
    p: int
    n: int
    hits: list
    group_classes: int
    subgroups_seen: int
    complete: bool
    budget: dict = field(default_factory=dict)


def _gl2_elements(p):
    out = []
    for a in range(p):
        for b in range(p):
            for c in range(p):
                for d in range(p):
                    if (a * d - b * c) % p:
                        out.append((a, b, c, d))
    return out


_CLASS_CACHE = {}


def _pprime_subgroup_classes_cached(p, gl, cap, max_subgroups):
    # the enumeration is independent of the index n being scanned
    key = (p, cap, max_subgroups)
    if key not in _CLASS_CACHE:
        _CLASS_CACHE[key] = _pprime_subgroup_classes(p, gl, cap, max_subgroups)
    return _CLASS_CACHE[key]


def _pprime_subgroup_classes(p, gl, cap, max_subgroups):
    """All subgroups of GL_2(F_p) of order coprime to p, up to conjugacy.

    Saturation search: start from cyclic subgroups and repeatedly adjoin a
    single element; every subgroup arises along such a chain, so the
    enumeration is complete.  Conjugacy deduplication is by explicit
    conjugator search within invariant buckets.
    """
    ident = (1, 0, 0, 1)
    pprime = [t for t in gl if _torder(t, p) % p != 0]
    seen_sets = set()
    classes = []  # list of frozensets (class representatives)
    buckets = {}  # invariant key -> list of class indices

    def class_key(S):
        orders = sorted(_torder(t, p) for t in S)
        return (len(S), tuple(orders))

    def register(S):
        if S in seen_sets:
            return None
        if len(seen_sets) >= max_subgroups:
            raise BudgetExceeded(
                "subgroup enumeration budget exceeded",
                sizes={"subgroups": len(seen_sets), "budget": max_subgroups},
            )
        seen_sets.add(S)
        key = class_key(S)
        for ci in buckets.get(key, ()):  # conjugate to a known class?
            T = classes[ci]
            for g in gl:
                ginv = _tinv(g, p)
                if all(_tmul(_tmul(g, x, p), ginv, p) in T for x in S):
                    return None
        classes.append(S)
        buckets.setdefault(key, []).append(len(classes) - 1)
        return len(classes) - 1

    queue = []
    for t in pprime:
        S = _tclosure([t], p, cap=cap + 1)
        if S is not None and register(S) is not None:
            queue.append(S)
    qi = 0
    while qi < len(queue):
        S = queue[qi]
        qi += 1
        gens = list(S)
        for y in pprime:
            if y in S:
                continue
            T = _tclosure(gens + [y], p, cap=cap + 1)
            if T is None or len(T) % p == 0:
                continue
            if register(T) is not None:
                queue.append(T)
    return classes, len(seen_sets)


def _subgroups_of_matrix_group(S, p, want_index):
    """All subgroups of the matrix group S with the given index."""
    target = len(S) // want_index
    if len(S) % want_index:
        return []
    seen = set()
    queue = []
    ident = (1, 0, 0, 1)
    base = frozenset([ident])
    seen.add(base)
    queue.append(base)
    for t in S:
        c = _tclosure([t], p)
        if c not in seen:
            seen.add(c)
            queue.append(c)
    elems = sorted(S)
    qi = 0
    while qi < len(queue):
        H = queue[qi]
        qi += 1
        if len(H) >= target:
            continue
        for y in elems:
            if y in H:
                continue
            T = _tclosure(sorted(H) + [y], p, cap=len(S) + 1)
            if T is not None and T <= S and T not in seen:
                seen.add(T)
                queue.append(T)
    return sorted((H for H in seen if len(H) == target), key=sorted)


def exhaustive_scan(p, n, max_subgroups=200000):
    """Scan all coprime-order subgroups of GL_2(F_p) for (subgroup of index n,
    stable line) pairs with zero fixed space and pointwise-trivial line
    stabilizer; report every hit.

    The report is conclusive (complete=True) unless the subgroup budget was
    exhausted, in which case BudgetExceeded carries the partial counts.
    """
    p, n = int(p), int(n)
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if math.gcd(p, n) != 1:
        raise NotCoprime(f"{n} is not coprime to {p}")
    gl = _gl2_elements(p)
    glorder = len(gl)
    cap = glorder
    while cap % p == 0:
        cap //= p
    classes, subgroups_seen = _pprime_subgroup_classes_cached(p, gl, cap, max_subgroups)
    hits = []
    lines = all_lines(p)
    for ci, S in enumerate(classes):
        if len(S) % n:
            continue
        mats = sorted(S)
        mats_arr = {t: _tuple_mat(t) for t in mats}
        # zero fixed space for the whole group, once per class
        dim = fixed_space_dim(
            np.stack([mats_arr[t] for t in mats]), range(len(mats)), p
        )
        if dim != 0:
            continue
        is_cyc = any(_torder(t, p) == len(S) for t in S)
        for H in _subgroups_of_matrix_group(S, p, n):
            stable = [
                L
                for L in lines
                if all(line_image(mats_arr[h], L, p) == L for h in H)
            ]
            for L in stable:
                stab = [t for t in mats if line_image(mats_arr[t], L, p) == L]
                if all(fixes_line_pointwise(mats_arr[t], L, p) for t in stab):
                    hits.append(
                        ScanHit(
                            group_class=ci,
                            group_order=len(S),
                            group_elements=tuple(mats),
                            subgroup_elements=tuple(sorted(H)),
                            line=L,
                            group_cyclic=is_cyc,
                        )
                    )
    hits.sort(key=lambda h: (h.group_order, h.group_class, h.subgroup_elements, h.line))
    return ScanReport(
        p=p,
        n=n,
        hits=hits,
        group_classes=len(classes),
        subgroups_seen=subgroups_seen,
        complete=True,
        budget={"max_subgroups": max_subgroups, "pprime_order_cap": cap},
    )


def build_semidirect(rep):
    """The plane-by-group semidirect product of a marked representation.

    Returns (G, H, S) with G = V ⋊ G' of order p^2 |G'|, H = (marked line)
    ⋊ (marked subgroup), and S = V ⋊ 1 the normal Sylow p-subgroup.  The
    representation satisfies both marked-line conditions exactly when the
    commutator and normalizer-centralizer criteria hold for (G, H, p).
    """
    if rep.line is None or rep.hprime is None:
        raise SpecInvalid("a marked line and subgroup are required")
    p = rep.p
    Gp = rep.group
    G = semidirect_from_action(
        p, 2, Gp, rep.mats, label=f"F{p}^2:{Gp.label}", order_budget=4096
    )
    pm = p * p
    line_vec = np.array(rep.line, dtype=np.int64)
    h_elems = []
    for t in range(p):
        v = (t * line_vec) % p
        vn = vector_index(v, p)
        for h in rep.hprime.elements:
            h_elems.append(vn + pm * int(h))
    H = SubgroupHandle(G, tuple(sorted(set(h_elems))))
    S = SubgroupHandle(G, tuple(vn + pm * Gp.identity for vn in range(pm)))
    return G, H, S
