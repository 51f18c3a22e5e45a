"""Finite-group engine: construction, subgroup primitives, Sylow theory.

Groups are realized by full multiplication tables over element indices
0..n-1 (orders <= 512 by default), so every downstream computation gets
constant-time multiplication.  All values are immutable after construction
and the operations are pure functions; deterministic tie-breaking (least
element index, lexicographic element lists) is used throughout.
"""

from __future__ import annotations

import itertools
import random

import numpy as np

from .errors import (
    NotPrime,
    OrderBudgetExceeded,
    PreconditionFailed,
    SearchBudgetExceeded,
    SpecInvalid,
)
from .finab import FinAb
from . import intmat

DEFAULT_ORDER_BUDGET = 512
_ASSOC_EXHAUSTIVE_BOUND = 64
_ASSOC_SAMPLES = 20000


def is_prime(p):
    p = int(p)
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


class GroupSpec:
    """Declarative description of a finite group (see cli for the schema)."""

    KINDS = ("table", "permutations", "semidirect", "product")

    def __init__(self, kind, payload):
        if kind not in self.KINDS:
            raise SpecInvalid(f"unknown group-spec kind {kind!r}")
        self.kind = kind
        self.payload = dict(payload)

    def to_dict(self):
        out = {"kind": self.kind}
        out.update(self.payload)
        return out

    def __repr__(self):
        return f"GroupSpec({self.kind})"


class FiniteGroup:
    """Explicit finite group: multiplication table plus element indexing."""

    __slots__ = ("order", "mul", "inv", "identity", "label", "gens", "_orders", "_abelian")

    def __init__(self, mul, identity, label="", gens=None, validate=True):
        mul = np.asarray(mul, dtype=np.int64)
        if mul.ndim != 2 or mul.shape[0] != mul.shape[1]:
            raise SpecInvalid("multiplication table must be square")
        self.order = int(mul.shape[0])
        self.mul = mul
        self.identity = int(identity)
        self.label = label
        self._orders = None
        self._abelian = None
        inv = np.full(self.order, -1, dtype=np.int64)
        for g in range(self.order):
            hits = np.flatnonzero(mul[g] == self.identity)
            if hits.size != 1:
                raise SpecInvalid(f"element {g} has no unique right inverse")
            inv[g] = hits[0]
        self.inv = inv
        if validate:
            self._validate()
        if gens is None:
            gens = self._greedy_generators()
        self.gens = tuple(int(g) for g in gens)

    def _validate(self):
        n, mul, e = self.order, self.mul, self.identity
        if not (mul[e] == np.arange(n)).all() or not (mul[:, e] == np.arange(n)).all():
            raise SpecInvalid("identity is not two-sided")
        for g in range(n):
            if mul[self.inv[g], g] != e:
                raise SpecInvalid(f"inv[{g}] is not a left inverse")
        if n <= _ASSOC_EXHAUSTIVE_BOUND:
            ab_c = mul[mul, :]  # (a,b,c) -> (ab)c
            a_bc = mul[:, mul]  # (a,b,c) -> a(bc), axes (a,b,c)
            if not (ab_c == a_bc).all():
                raise SpecInvalid("multiplication table is not associative")
        else:
            rng = random.Random(0xA55)
            for _ in range(_ASSOC_SAMPLES):
                a, b, c = (rng.randrange(n) for _ in range(3))
                if mul[mul[a, b], c] != mul[a, mul[b, c]]:
                    raise SpecInvalid("multiplication table is not associative")

    def _greedy_generators(self):
        gens = []
        current = {self.identity}
        while len(current) < self.order:
            g = min(x for x in range(self.order) if x not in current)
            gens.append(g)
            current = set(closure_elements(self.mul, self.identity, gens))
        return gens

    def op(self, a, b):
        return int(self.mul[a, b])

    def conj(self, g, x):
        """g x g^{-1}"""
        return int(self.mul[self.mul[g, x], self.inv[g]])

    def power(self, x, k):
        k = int(k)
        if k < 0:
            x, k = int(self.inv[x]), -k
        acc = self.identity
        for _ in range(k):
            acc = int(self.mul[acc, x])
        return acc

    def element_order(self, x):
        return int(self.element_orders[x])

    @property
    def element_orders(self):
        if self._orders is None:
            orders = np.zeros(self.order, dtype=np.int64)
            for g in range(self.order):
                k, acc = 1, g
                while acc != self.identity:
                    acc = int(self.mul[acc, g])
                    k += 1
                orders[g] = k
            self._orders = orders
        return self._orders

    @property
    def is_abelian(self):
        if self._abelian is None:
            self._abelian = bool((self.mul == self.mul.T).all())
        return self._abelian

    def elements(self):
        return range(self.order)

    def __repr__(self):
        return f"FiniteGroup({self.label or 'order ' + str(self.order)})"


def closure_elements(mul, identity, gens, cap=None):
    """Sorted tuple of the subgroup generated by gens.

    With a cap, raises OrderBudgetExceeded as soon as the closure grows
    past it (used to abort doomed searches early).
    """
    seen = {int(identity)}
    frontier = [int(identity)]
    gens = [int(g) for g in gens]
    while frontier:
        nxt = []
        for x in frontier:
            for s in gens:
                y = int(mul[x, s])
                if y not in seen:
                    if cap is not None and len(seen) >= cap:
                        raise OrderBudgetExceeded(f"closure exceeded {cap} elements")
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return tuple(sorted(seen))


class SubgroupHandle:
    """A subgroup of a parent group as a strictly sorted element set."""

    __slots__ = ("parent", "elements", "_set", "_cache")

    def __init__(self, parent, elements):
        self.parent = parent
        elems = tuple(sorted(int(x) for x in elements))
        if len(set(elems)) != len(elems):
            raise SpecInvalid("subgroup elements must be distinct")
        if not elems or elems[0] < 0 or elems[-1] >= parent.order:
            raise SpecInvalid("subgroup elements out of range")
        eset = frozenset(elems)
        if parent.identity not in eset:
            raise SpecInvalid("subgroup must contain the identity")
        for x in elems:
            if int(parent.inv[x]) not in eset:
                raise SpecInvalid("subgroup is not closed under inversion")
        products = parent.mul[np.ix_(elems, elems)]
        if not frozenset(np.unique(products).tolist()) <= eset:
            raise SpecInvalid("subgroup is not closed under multiplication")
        self.elements = elems
        self._set = eset
        self._cache = {}

    def __eq__(self, other):
        return (
            isinstance(other, SubgroupHandle)
            and self.parent is other.parent
            and self.elements == other.elements
        )

    def __hash__(self):
        return hash((id(self.parent), self.elements))

    @property
    def order(self):
        return len(self.elements)

    @property
    def index(self):
        return self.parent.order // self.order

    def contains(self, x):
        return int(x) in self._set

    def contains_subgroup(self, other):
        return self._set >= other._set

    @property
    def is_normal(self):
        if "normal" not in self._cache:
            G = self.parent
            self._cache["normal"] = all(
                G.conj(g, x) in self._set for g in G.elements() for x in self.elements
            )
        return self._cache["normal"]

    @property
    def is_cyclic(self):
        if "cyclic" not in self._cache:
            n = self.order
            self._cache["cyclic"] = any(
                self.parent.element_order(x) == n for x in self.elements
            )
        return self._cache["cyclic"]

    def conjugate(self, g):
        G = self.parent
        return SubgroupHandle(G, tuple(G.conj(g, x) for x in self.elements))

    def canonical_conjugate(self):
        """The lexicographically least conjugate (deterministic reports)."""
        G = self.parent
        best = self.elements
        for g in G.elements():
            cand = tuple(sorted(G.conj(g, x) for x in self.elements))
            if cand < best:
                best = cand
        return SubgroupHandle(G, best)

    def as_group(self, label=None):
        """Re-indexed FiniteGroup plus the local->parent element map."""
        if "group" not in self._cache:
            elems = self.elements
            pos = {x: i for i, x in enumerate(elems)}
            table = [[pos[int(self.parent.mul[a, b])] for b in elems] for a in elems]
            sub = FiniteGroup(
                table,
                identity=pos[self.parent.identity],
                label=label or f"{self.parent.label}|sub{self.order}",
                validate=False,
            )
            self._cache["group"] = (sub, elems)
        return self._cache["group"]

    def __repr__(self):
        return f"Subgroup(order {self.order} of {self.parent.label or self.parent.order})"


def subgroup_closure(G, gens):
    """Smallest subgroup of G containing the given element indices."""
    for g in gens:
        if not 0 <= int(g) < G.order:
            raise SpecInvalid(f"element index {g} out of range")
    return SubgroupHandle(G, closure_elements(G.mul, G.identity, gens))


def trivial_subgroup(G):
    return SubgroupHandle(G, (G.identity,))


def full_subgroup(G):
    return SubgroupHandle(G, tuple(range(G.order)))


def cyclic_subgroups(G):
    """All cyclic subgroups of G, trivial subgroup included, deduplicated."""
    seen = set()
    out = []
    for g in G.elements():
        elems = closure_elements(G.mul, G.identity, [g])
        if elems not in seen:
            seen.add(elems)
            out.append(SubgroupHandle(G, elems))
    out.sort(key=lambda h: (h.order, h.elements))
    return out


def sylow_subgroup(G, p):
    """A p-Sylow subgroup, deterministic: the lexicographically least conjugate.

    Grown by the normalizer ladder: a proper p-subgroup has p dividing the
    order of its normalizer quotient, so some element of p-power order in
    the normalizer extends it.
    """
    p = int(p)
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    target, n = 1, G.order
    while n % p == 0:
        target *= p
        n //= p
    P = trivial_subgroup(G)
    while P.order < target:
        N, _ = normalizer_centralizer(G, P)
        grown = False
        for x in N.elements:
            if P.contains(x):
                continue
            o = G.element_order(x)
            while o % p == 0:
                o //= p
            if o != 1:
                continue
            elems = closure_elements(G.mul, G.identity, list(P.elements) + [x])
            size = len(elems)
            while size % p == 0:
                size //= p
            if size == 1 and len(elems) > P.order:
                P = SubgroupHandle(G, elems)
                grown = True
                break
        if not grown:  # unreachable for a genuine group table
            raise SpecInvalid("Sylow growth failed; table is not a group")
    return P.canonical_conjugate()


def core(G, H):
    """Normal core: the intersection of all conjugates of H in G."""
    inter = set(H.elements)
    for g in G.elements():
        inter &= {G.conj(g, x) for x in H.elements}
        if len(inter) == 1:
            break
    return SubgroupHandle(G, tuple(sorted(inter)))


def normalizer_centralizer(G, H):
    """(N_G(H), Z_G(H)); the centralizer is contained in the normalizer."""
    hset = H._set
    norm, cent = [], []
    for g in G.elements():
        if all(G.conj(g, x) in hset for x in H.elements):
            norm.append(g)
            if all(G.mul[g, x] == G.mul[x, g] for x in H.elements):
                cent.append(g)
    return SubgroupHandle(G, tuple(norm)), SubgroupHandle(G, tuple(cent))


def commutator_subgroup(G, A, B):
    """Subgroup generated by commutators a b a^{-1} b^{-1}, a in A, b in B."""
    comms = set()
    for a in A.elements:
        for b in B.elements:
            comms.add(int(G.mul[G.mul[a, b], G.mul[G.inv[a], G.inv[b]]]))
    return SubgroupHandle(G, closure_elements(G.mul, G.identity, comms))


def derived_subgroup(G):
    full = full_subgroup(G)
    return commutator_subgroup(G, full, full)


def double_cosets(G, D, H):
    """Partition of G into D\\G/H classes as (least representative, class).

    Classes come out sorted by representative, so the identity's class is
    listed first.
    """
    d_elems = np.array(D.elements, dtype=np.int64)
    h_elems = np.array(H.elements, dtype=np.int64)
    assigned = np.zeros(G.order, dtype=bool)
    out = []
    for g in G.elements():
        if assigned[g]:
            continue
        dg = G.mul[d_elems, g]
        cls = np.unique(G.mul[np.ix_(dg, h_elems)])
        assigned[cls] = True
        out.append((int(g), tuple(int(x) for x in cls)))
    return out


def abelianization(G):
    """(G/[G,G] in invariant-factor form, per-element coordinate tuples).

    The relation lattice of the abelianized group is read off the Cayley
    graph: every edge g -> g*s yields the relation w(g) + e_s - w(g*s) in
    Z^gens, and these generate the kernel of Z^gens -> G^ab.
    """
    gens = list(G.gens)
    k = len(gens)
    if k == 0:
        return FinAb.trivial(), [()] * G.order
    words = np.zeros((G.order, k), dtype=object)
    seen = np.zeros(G.order, dtype=bool)
    seen[G.identity] = True
    frontier = [G.identity]
    while frontier:
        nxt = []
        for g in frontier:
            for i, s in enumerate(gens):
                h = int(G.mul[g, s])
                if not seen[h]:
                    seen[h] = True
                    words[h] = words[g].copy()
                    words[h][i] += 1
                    nxt.append(h)
        frontier = nxt
    relations = []
    for g in G.elements():
        for i, s in enumerate(gens):
            h = int(G.mul[g, s])
            rel = words[g].copy()
            rel[i] += 1
            rel -= words[h]
            if np.any(rel):
                relations.append(rel)
    if not relations:
        raise SpecInvalid("nontrivial finite group with free abelianization")
    R = np.array(relations, dtype=object).T  # columns are relations
    diag, _, _, U = intmat.smith(R, carry=np.eye(k, dtype=object))
    if len(diag) != k:
        raise SpecInvalid("abelianization is not finite")
    kept = [(i, d) for i, d in enumerate(diag) if d > 1]
    structure = FinAb(tuple(d for _, d in kept))
    proj = []
    for g in G.elements():
        y = U @ words[g]
        proj.append(tuple(int(y[i]) % d for i, d in kept))
    return structure, proj


def complement(G, S, budget=200000):
    """A complement of a normal Sylow subgroup S: C with C*S = G, C∩S = 1.

    Deterministic breadth-first search over generator subsets of size <= 3
    drawn from elements whose order divides the index; raises
    SearchBudgetExceeded past the subset-size bound or the closure budget.
    """
    size, rest = S.order, G.order // S.order
    if size > 1:
        p = next(q for q in range(2, size + 1) if size % q == 0)
        q = size
        while q % p == 0:
            q //= p
        if q != 1 or rest % p == 0:
            raise PreconditionFailed("S is not a Sylow subgroup")
        if not S.is_normal:
            raise PreconditionFailed("S is not normal")
    if size == 1:
        return full_subgroup(G)
    if rest == 1:
        return trivial_subgroup(G)
    pool = [
        x for x in G.elements() if x != G.identity and rest % G.element_order(x) == 0
    ]
    sset = S._set
    tried = 0
    for take in (1, 2, 3):
        for combo in itertools.combinations(pool, take):
            tried += 1
            if tried > budget:
                raise SearchBudgetExceeded("complement search budget exhausted")
            try:
                elems = closure_elements(G.mul, G.identity, combo, cap=rest)
            except OrderBudgetExceeded:
                continue
            if len(elems) == rest and len(sset.intersection(elems)) == 1:
                return SubgroupHandle(G, elems)
    raise SearchBudgetExceeded("no complement found with <= 3 generators")


def all_subgroups(G, max_count=100000):
    """Every subgroup of G, by saturating cyclic subgroups under joins.

    Exhaustive (any subgroup is reachable by adjoining one generator at a
    time); intended for the small catalog orders.
    """
    seen = {}
    queue = []
    for h in cyclic_subgroups(G):
        if h.elements not in seen:
            seen[h.elements] = h
            queue.append(h)
    qi = 0
    while qi < len(queue):
        h = queue[qi]
        qi += 1
        for x in G.elements():
            if h.contains(x):
                continue
            elems = closure_elements(G.mul, G.identity, list(h.elements) + [x])
            if elems not in seen:
                if len(seen) >= max_count:
                    raise SearchBudgetExceeded("subgroup enumeration budget")
                nh = SubgroupHandle(G, elems)
                seen[elems] = nh
                queue.append(nh)
    return sorted(seen.values(), key=lambda h: (h.order, h.elements))


def extend_from_generators(G, images, compose, identity_image, eq=None):
    """Extend gens[i] |-> images[i] to a homomorphism on all of G.

    Walks the Cayley graph, defining f(g*s) = f(g) o f(s), then checks
    consistency on every edge, which forces the homomorphism property on
    all pairs.  Returns the per-element image list, or None if the
    assignment is not a homomorphism.
    """
    if eq is None:
        eq = lambda a, b: a == b
    gens = list(G.gens)
    if len(images) != len(gens):
        raise ValueError("one image per canonical generator required")
    if not gens:
        return [identity_image] if G.order == 1 else None
    f = [None] * G.order
    f[G.identity] = identity_image
    frontier = [G.identity]
    while frontier:
        nxt = []
        for g in frontier:
            for s, img in zip(gens, images):
                h = int(G.mul[g, s])
                if f[h] is None:
                    f[h] = compose(f[g], img)
                    nxt.append(h)
        frontier = nxt
    for g in G.elements():
        for s, img in zip(gens, images):
            h = int(G.mul[g, s])
            if not eq(f[h], compose(f[g], img)):
                return None
    return f


# -- group construction ------------------------------------------------------


def _det_mod_p(M, p):
    M = np.array(M, dtype=np.int64) % p
    m = M.shape[0]
    det = 1
    for c in range(m):
        piv = None
        for r in range(c, m):
            if M[r, c] % p:
                piv = r
                break
        if piv is None:
            return 0
        if piv != c:
            M[[c, piv]] = M[[piv, c]]
            det = -det
        det = det * int(M[c, c]) % p
        inv = pow(int(M[c, c]), p - 2, p)
        for r in range(c + 1, m):
            M[r] = (M[r] - int(M[r, c]) * inv * M[c]) % p
    return det % p


def _parse_cycles(text, degree):
    """Parse one-line cycle notation like "(1 2 3)(4 5)" (1-based points)."""
    perm = list(range(degree))
    text = text.strip()
    if text in ("", "()", "e", "id"):
        return tuple(perm)
    depth = 0
    cycles = []
    cur = []
    token = ""
    for ch in text + " ":
        if ch == "(":
            if depth:
                raise SpecInvalid(f"nested parenthesis in cycle {text!r}")
            depth = 1
            cur = []
            token = ""
        elif ch == ")":
            if token:
                cur.append(token)
                token = ""
            cycles.append(cur)
            depth = 0
        elif ch in " ,":
            if token:
                cur.append(token)
                token = ""
        elif depth:
            token += ch
        else:
            raise SpecInvalid(f"stray character {ch!r} in cycle {text!r}")
    if depth:
        raise SpecInvalid(f"unbalanced parenthesis in cycle {text!r}")
    for cyc in cycles:
        pts = []
        for t in cyc:
            try:
                v = int(t)
            except ValueError as exc:
                raise SpecInvalid(f"bad cycle point {t!r}") from exc
            if not 1 <= v <= degree:
                raise SpecInvalid(f"cycle point {v} outside degree {degree}")
            pts.append(v - 1)
        if len(set(pts)) != len(pts):
            raise SpecInvalid(f"repeated point in cycle {cyc}")
        for i, a in enumerate(pts):
            perm[a] = pts[(i + 1) % len(pts)]
    return tuple(perm)


def _group_from_permutations(payload, order_budget, label):
    degree = int(payload["degree"])
    perms = []
    for g in payload["generators"]:
        if isinstance(g, str):
            perms.append(_parse_cycles(g, degree))
        else:
            perm = tuple(int(x) for x in g)
            if sorted(perm) != list(range(degree)):
                raise SpecInvalid(f"not a permutation of 0..{degree - 1}: {g}")
            perms.append(perm)
    ident = tuple(range(degree))
    elems = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for x in frontier:
            for s in perms:
                y = tuple(x[s[i]] for i in range(degree))  # x after s
                if y not in elems:
                    if len(elems) >= order_budget:
                        raise OrderBudgetExceeded(
                            f"permutation closure exceeded {order_budget}"
                        )
                    elems.add(y)
                    nxt.append(y)
        frontier = nxt
    ordered = sorted(elems)  # the identity tuple sorts first
    pos = {x: i for i, x in enumerate(ordered)}
    n = len(ordered)
    mul = np.zeros((n, n), dtype=np.int64)
    for i, a in enumerate(ordered):
        for j, b in enumerate(ordered):
            mul[i, j] = pos[tuple(a[b[t]] for t in range(degree))]
    gens = [pos[s] for s in perms]
    return FiniteGroup(mul, identity=pos[ident], label=label, gens=gens, validate=False)


def _group_from_table(payload, label):
    mul = payload["mul"]
    n = int(payload["n"])
    if len(mul) == n * n and not isinstance(mul[0], (list, tuple)):
        mul = [mul[i * n : (i + 1) * n] for i in range(n)]
    if len(mul) != n or any(len(r) != n for r in mul):
        raise SpecInvalid("table has wrong shape")
    arr = np.asarray(mul, dtype=np.int64)
    if n and (arr.min() < 0 or arr.max() >= n):
        raise SpecInvalid("table entries out of range")
    ident = None
    for e in range(n):
        if (arr[e] == np.arange(n)).all() and (arr[:, e] == np.arange(n)).all():
            ident = e
            break
    if ident is None:
        raise SpecInvalid("table has no two-sided identity")
    return FiniteGroup(arr, identity=ident, label=label)


def vector_index(v, p):
    """Little-endian index of a vector over F_p: (a_0,...,a_{m-1}) -> sum a_i p^i."""
    num = 0
    for i in range(len(v) - 1, -1, -1):
        num = num * p + int(v[i]) % p
    return num


def index_vector(num, p, m):
    return np.array([(num // p**i) % p for i in range(m)], dtype=np.int64)


def semidirect_from_action(p, m, acting, action, label="", order_budget=DEFAULT_ORDER_BUDGET):
    """V ⋊ Q for V = F_p^m given one invertible action matrix per element of Q.

    Element (v, q) has index vindex(v) + p^m * q, so V occupies indices
    0..p^m-1 of the identity-of-Q block and is normal by construction.
    """
    p, m = int(p), int(m)
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    pm = p**m
    if pm * acting.order > order_budget:
        raise OrderBudgetExceeded(
            f"semidirect order {pm * acting.order} exceeds budget {order_budget}"
        )
    vecs = [index_vector(i, p, m) for i in range(pm)]
    nq = acting.order
    n = pm * nq
    mul = np.zeros((n, n), dtype=np.int64)
    for q1 in range(nq):
        act = np.asarray(action[q1], dtype=np.int64) % p
        moved = [vector_index((v1 + act @ v2) % p, p) for v1 in vecs for v2 in vecs]
        moved = np.array(moved, dtype=np.int64).reshape(pm, pm)
        rows = range(pm * q1, pm * (q1 + 1))
        for q2 in range(nq):
            q3 = int(acting.mul[q1, q2])
            cols = range(pm * q2, pm * (q2 + 1))
            mul[np.ix_(rows, cols)] = moved + pm * q3
    gens = [p**i for i in range(m)] + [pm * q for q in acting.gens]
    return FiniteGroup(
        mul, identity=pm * acting.identity, label=label, gens=gens, validate=False
    )


def semidirect_product(p, m, acting, matrices, label="", order_budget=DEFAULT_ORDER_BUDGET):
    """V ⋊ Q with Q acting through matrices given on Q's canonical generators."""
    p, m = int(p), int(m)
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    mats = []
    for M in matrices:
        M = np.asarray(M, dtype=np.int64) % p
        if M.shape != (m, m):
            raise SpecInvalid(f"action matrix must be {m}x{m}")
        if _det_mod_p(M, p) == 0:
            raise SpecInvalid("action matrix is singular mod p")
        mats.append(M)
    eye = np.eye(m, dtype=np.int64)
    action = extend_from_generators(
        acting,
        mats,
        lambda A, B: (A @ B) % p,
        eye,
        eq=lambda A, B: (A == B).all(),
    )
    if action is None:
        raise SpecInvalid("matrices do not define a homomorphism")
    return semidirect_from_action(p, m, acting, action, label, order_budget)


def direct_product(G1, G2, label=""):
    """Direct product; element (a, b) has index a*|G2| + b."""
    n1, n2 = G1.order, G2.order
    a = np.repeat(np.arange(n1), n2)
    b = np.tile(np.arange(n2), n1)
    mul = G1.mul[np.ix_(a, a)] * n2 + G2.mul[np.ix_(b, b)]
    gens = [g * n2 + G2.identity for g in G1.gens] + [
        G1.identity * n2 + g for g in G2.gens
    ]
    return FiniteGroup(
        mul,
        identity=G1.identity * n2 + G2.identity,
        label=label or f"{G1.label}x{G2.label}",
        gens=gens,
        validate=False,
    )


def build_group(spec, order_budget=DEFAULT_ORDER_BUDGET):
    """Materialize a GroupSpec (or plain dict with a 'kind' key)."""
    if isinstance(spec, dict):
        payload = dict(spec)
        kind = payload.pop("kind", None)
        if kind is None:
            raise SpecInvalid("group spec needs a 'kind'")
        spec = GroupSpec(kind, payload)
    label = spec.payload.get("label", spec.kind)
    if spec.kind == "table":
        G = _group_from_table(spec.payload, label)
    elif spec.kind == "permutations":
        G = _group_from_permutations(spec.payload, order_budget, label)
    elif spec.kind == "semidirect":
        acting = build_group(spec.payload["acting"], order_budget)
        G = semidirect_product(
            spec.payload["p"],
            spec.payload["m"],
            acting,
            spec.payload["matrices"],
            label=label,
            order_budget=order_budget,
        )
    else:  # product
        factors = [build_group(f, order_budget) for f in spec.payload["factors"]]
        if not factors:
            raise SpecInvalid("product needs at least one factor")
        G = factors[0]
        for F in factors[1:]:
            if G.order * F.order > order_budget:
                raise OrderBudgetExceeded("product order exceeds budget")
            G = direct_product(G, F)
        if label != G.label:
            G = FiniteGroup(G.mul, G.identity, label=label, gens=G.gens, validate=False)
    if G.order > order_budget:
        raise OrderBudgetExceeded(f"group order {G.order} exceeds budget {order_budget}")
    return G
