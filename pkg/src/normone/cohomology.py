"""Brute-force integer group cohomology via the normalized bar complex.

Degrees 0, 1, 2 only.  Normalized cochains vanish whenever an argument is
the identity, which shrinks every matrix by a factor ((n-1)/n)^degree with
the same cohomology.  H^1 and H^2 are read off as the torsion of the
cokernels of the coboundary maps d^0 and d^1:

    a cochain class is torsion in C^j/im(d^{j-1}) iff some multiple is a
    coboundary, and a multiple of a coboundary is a cocycle, so the torsion
    subgroup of the cokernel is exactly Z^j/B^j (and |G| annihilates it).

Explicit generating cocycles come out of the Smith transform: if
U A V = D, the columns (A V e_i)/d_i are integral cocycles whose classes
have exactly the orders d_i and generate the torsion.
"""

from __future__ import annotations

import numpy as np

from .errors import BudgetExceeded, EmptyFamily, GroupMismatch, NotCyclic
from .finab import FinAb
from .groups import abelianization, cyclic_subgroups
from .lattices import restrict
from . import intmat

DEFAULT_COCHAIN_BUDGET = 200_000


def _nonid(G):
    return [g for g in G.elements() if g != G.identity]


def _check_budget(G, rank, degree, budget):
    cols = max(G.order - 1, 1) ** degree * max(rank, 1)
    if cols > budget:
        raise BudgetExceeded(
            f"cochain space of dimension {cols} exceeds budget {budget}",
            sizes={"columns": cols, "budget": budget, "order": G.order, "rank": rank},
        )


def coboundary0_matrix(M):
    """d^0: M -> C^1, m |-> (g.m - m)_g, stacked over non-identity g."""
    G, r = M.group, M.rank
    nonid = _nonid(G)
    eye = np.eye(r, dtype=np.int64)
    return np.vstack([M.act[g] - eye for g in nonid]) if nonid else np.zeros((0, r), dtype=np.int64)


def apply_coboundary1(M, x):
    """d^1 on a 1-cochain given as an (n-1, r) array (identity row omitted).

    (d^1 f)(g, h) = g.f(h) - f(gh) + f(g), returned as (n-1, n-1, r).
    """
    G, r = M.group, M.rank
    nonid = _nonid(G)
    k = len(nonid)
    xfull = np.zeros((G.order, r), dtype=x.dtype)
    xfull[nonid] = x
    acts = M.act[nonid]  # (k, r, r)
    out = np.einsum("gij,hj->ghi", acts, x)
    prod = G.mul[np.ix_(nonid, nonid)]
    out -= xfull[prod]
    out += x[:, None, :]
    return out


def coboundary1_rows(M, g, pos):
    """Dense d^1 rows for all pairs (g, h), h non-identity: ((n-1)*r, (n-1)*r).

    `pos` maps element index -> position among non-identity elements.
    """
    G, r = M.group, M.rank
    nonid = _nonid(G)
    k = len(nonid)
    rows = np.zeros((k * r, k * r), dtype=np.int64)
    gact = M.act[g]
    gi = pos[g]
    eye = np.eye(r, dtype=np.int64)
    for hi, h in enumerate(nonid):
        blk = slice(hi * r, (hi + 1) * r)
        rows[blk, hi * r : (hi + 1) * r] += gact
        gh = int(G.mul[g, h])
        if gh != G.identity:
            ghi = pos[gh]
            rows[blk, ghi * r : (ghi + 1) * r] -= eye
        rows[blk, gi * r : (gi + 1) * r] += eye
    return rows


def coboundary1_matrix(M):
    """Dense d^1: C^1 -> C^2 as ((n-1)^2 r, (n-1) r); small groups only."""
    G, r = M.group, M.rank
    nonid = _nonid(G)
    pos = {g: i for i, g in enumerate(nonid)}
    if not nonid:
        return np.zeros((0, 0), dtype=np.int64)
    return np.vstack([coboundary1_rows(M, g, pos) for g in nonid])


def cocycle2_defect(M, c):
    """Max |d^2 c| over all triples; 0 iff c is a 2-cocycle.

    c has shape (n, n, r) with identity rows/columns zero.
    """
    G = M.group
    gc = np.einsum("gij,hkj->ghki", M.act, c)  # g.c(h,k)
    t1 = c[G.mul]  # [g,h,k,:] = c(gh, k)
    t2 = c[:, G.mul]  # [g,h,k,:] = c(g, hk)
    defect = gc - t1 + t2 - c[:, :, None, :]
    return int(np.abs(defect).max()) if defect.size else 0


def embed_cochain2(G, arr):
    """Lift an (n-1, n-1, r) normalized table to (n, n, r) with identity zeros."""
    nonid = _nonid(G)
    n = G.order
    r = arr.shape[-1]
    out = np.zeros((n, n, r), dtype=arr.dtype)
    out[np.ix_(nonid, nonid)] = arr
    return out


def embed_cochain1(G, arr):
    nonid = _nonid(G)
    out = np.zeros((G.order, arr.shape[-1]), dtype=arr.dtype)
    out[nonid] = arr
    return out


class CohomologyGroup:
    """H^j(G, M) for j in {0, 1, 2} with explicit generating cocycles.

    Degree 0 carries the free rank and a basis of the fixed sublattice;
    degrees 1 and 2 carry a FinAb structure together with one generating
    cocycle per invariant factor (generators[i] has order structure[i]).
    """

    __slots__ = ("degree", "group", "lattice", "structure", "free_rank", "generators")

    def __init__(self, degree, group, lattice, structure=None, free_rank=None, generators=()):
        self.degree = degree
        self.group = group
        self.lattice = lattice
        self.structure = structure
        self.free_rank = free_rank
        self.generators = list(generators)

    def __repr__(self):
        if self.degree == 0:
            return f"H^0 = Z^{self.free_rank}"
        return f"H^{self.degree} = {self.structure}"


def fixed_sublattice(M):
    """Basis (columns) of M^G, the fixed sublattice."""
    G, r = M.group, M.rank
    eye = np.eye(r, dtype=np.int64)
    gens = list(G.gens) or [G.identity]
    stacked = np.vstack([M.act[s] - eye for s in gens])
    return intmat.kernel_basis(stacked)


def _torsion_with_generators(A_rowstream, ncols, apply_op):
    """Torsion of the cokernel of an operator fed as row chunks.

    A_rowstream yields row chunks of the matrix A; apply_op(vec) computes
    A @ vec exactly (object ints welcome).  Returns (orders, vectors) where
    vectors[i] = (A V e_i)/orders[i] lives in the codomain.
    """
    reducer = intmat.RowEchelon(ncols)
    for chunk in A_rowstream:
        if chunk.size:
            reducer.add_rows(chunk)
    R = reducer.matrix()
    if R.shape[0] == 0:
        return [], []
    diag, _, V, _ = intmat.smith(R, want_v=True)
    orders, vecs = [], []
    for i, d in enumerate(diag):
        if d <= 1:
            continue
        w = V[:, i]
        img = np.array(apply_op(w), dtype=object)
        q = img // d
        if np.any(img - q * d):  # impossible if the reduction is sound
            raise ArithmeticError("generator extraction produced a non-integral vector")
        orders.append(int(d))
        vecs.append(q)
    return orders, vecs


def cohomology(G, M, degree, budget=DEFAULT_COCHAIN_BUDGET):
    """H^degree(G, M) by the normalized bar complex, exactly over Z."""
    if M.group is not G:
        raise GroupMismatch("lattice is not defined over the given group")
    if degree not in (0, 1, 2):
        raise ValueError("only degrees 0, 1, 2 are supported")
    _check_budget(G, M.rank, degree, budget)
    r = M.rank
    nonid = _nonid(G)
    k = len(nonid)

    if degree == 0:
        basis = fixed_sublattice(M)
        return CohomologyGroup(
            0, G, M, free_rank=int(basis.shape[1]),
            generators=[basis[:, i] for i in range(basis.shape[1])],
        )

    if r == 0 or k == 0:
        return CohomologyGroup(degree, G, M, structure=FinAb.trivial())

    if degree == 1:
        A = coboundary0_matrix(M)
        orders, vecs = _torsion_with_generators(
            iter([A]), r, lambda w: np.array(A, dtype=object) @ w
        )
        gens = [embed_cochain1(G, v.reshape(k, r)) for v in vecs]
        return CohomologyGroup(1, G, M, structure=FinAb(tuple(orders)), generators=gens)

    pos = {g: i for i, g in enumerate(nonid)}

    def rowstream():
        for g in nonid:
            yield coboundary1_rows(M, g, pos)

    def apply_op(w):
        x = np.array(w, dtype=object).reshape(k, r)
        return apply_coboundary1(M, x).reshape(-1)

    orders, vecs = _torsion_with_generators(rowstream(), k * r, apply_op)
    gens = []
    for v in vecs:
        c = embed_cochain2(G, v.reshape(k, k, r))
        if cocycle2_defect(M, c):
            raise ArithmeticError("extracted generator is not a cocycle")
        gens.append(c)
    return CohomologyGroup(2, G, M, structure=FinAb(tuple(orders)), generators=gens)


def restriction_class(c, D):
    """Restrict a degree-2 cocycle table over G to D-local indexing.

    On the bar complex the restriction map is literal function restriction.
    """
    elems = np.array(D.elements, dtype=np.int64)
    return np.array(c, dtype=object)[np.ix_(elems, elems)]


def is_coboundary(D, M, c):
    """Decide whether a 2-cocycle over D bounds; return (flag, witness).

    `c` uses D-local element indexing, shape (|D|, |D|, rank); `M` is the
    ambient G-lattice (it is restricted internally).  The witness is a
    normalized 1-cochain b with d^1 b = c, in D-local indexing.
    """
    RM = restrict(M, D) if M.group is D.parent else M
    sub = RM.group
    r = RM.rank
    nonid = _nonid(sub)
    k = len(nonid)
    c = np.asarray(c)
    if c.shape != (sub.order, sub.order, r):
        raise ValueError("cocycle table has wrong shape")
    if k == 0 or r == 0:
        ok = not np.any(c)
        return ok, (np.zeros((sub.order, r), dtype=object) if ok else None)
    A = coboundary1_matrix(RM)
    rhs = np.array(c, dtype=object)[np.ix_(nonid, nonid)].reshape(-1)
    x = intmat.solve(A, rhs)
    if x is None:
        return False, None
    return True, embed_cochain1(sub, x.reshape(k, r))


def tate_cyclic(D, M, j):
    """Tate cohomology of a cyclic group, period 2.

    Even j: (fixed points)/(norm image); odd j: ker(norm)/im(sigma - 1),
    where sigma is the least generator of the acting cyclic group.  M must
    be defined over D itself (e.g. produced by `restrict`).
    """
    sub = M.group
    if sub.order != D.order:
        raise GroupMismatch("lattice is not defined over the cyclic subgroup")
    if not D.is_cyclic:
        raise NotCyclic("subgroup is not cyclic")
    n, r = sub.order, M.rank
    if r == 0:
        return FinAb.trivial()
    sigma = next(g for g in sub.elements() if sub.element_order(g) == n)
    A = M.act[sigma].astype(object)
    eye = np.eye(r, dtype=object)
    norm = np.zeros((r, r), dtype=object)
    power = eye
    for _ in range(n):
        norm += power
        power = A @ power
    diff = A - eye
    if int(j) % 2 == 0:
        K = intmat.kernel_basis(diff)
        image = norm
    else:
        K = intmat.kernel_basis(norm)
        image = diff
    if K.shape[1] == 0:
        return FinAb.trivial()
    image = intmat.column_lattice_basis(image)
    X = intmat.solve_many(K, image)
    if X is None:  # the image always lies in the kernel
        raise ArithmeticError("norm/difference image escaped its kernel")
    diag, _, _, _ = intmat.smith(X)
    if len(diag) < K.shape[1]:
        raise ArithmeticError("cyclic quotient is not finite")
    return FinAb.from_factors([d for d in diag if d > 1])


class ShaGroup:
    """Kernel of total restriction on H^2 against a closed family of subgroups."""

    __slots__ = ("base", "dset_raw", "dset_closed", "structure", "generators")

    def __init__(self, base, dset_raw, dset_closed, structure, generators):
        self.base = base
        self.dset_raw = list(dset_raw)
        self.dset_closed = list(dset_closed)
        self.structure = structure
        self.generators = list(generators)

    def __repr__(self):
        return f"Sha^2 = {self.structure}"


def close_dset(G, dset):
    """Augment a family of subgroups with all cyclic subgroups, dedupe, sort."""
    seen = {}
    for h in list(dset) + cyclic_subgroups(G):
        if h.parent is not G:
            raise GroupMismatch("dset member lives in a different group")
        seen[h.elements] = h
    return sorted(seen.values(), key=lambda h: (h.order, h.elements))


def _effective_dset(G, closed):
    """Prune the closed family for the kernel computation.

    Restriction kernels agree on conjugate subgroups, and a subgroup
    contained in another member imposes a weaker condition, so only
    maximal members up to conjugacy matter.
    """
    canon = {}
    for h in closed:
        c = h.canonical_conjugate()
        canon[c.elements] = c
    members = sorted(canon.values(), key=lambda h: (-h.order, h.elements))
    kept = []
    for h in members:
        if any(k.contains_subgroup(h) for k in kept):
            continue
        # also drop if contained in a conjugate of a kept member
        absorbed = False
        for k in kept:
            if h.order <= k.order:
                for g in G.elements():
                    if k.conjugate(g).contains_subgroup(h):
                        absorbed = True
                        break
            if absorbed:
                break
        if not absorbed:
            kept.append(h)
    return kept


def sha(G, M, dset, budget=DEFAULT_COCHAIN_BUDGET):
    """The subgroup of H^2(G, M) killed by restriction to every member of
    the closed dset (user-supplied members plus all cyclic subgroups)."""
    base = cohomology(G, M, 2, budget)
    raw = list(dset)
    closed = close_dset(G, raw)
    orders = list(base.structure.factors)
    kcount = len(orders)
    if kcount == 0:
        return ShaGroup(base, raw, closed, FinAb.trivial(), [])

    lam0 = np.zeros((kcount, kcount), dtype=object)
    for i, d in enumerate(orders):
        lam0[i, i] = d

    lattice = np.eye(kcount, dtype=object)
    for D in _effective_dset(G, closed):
        if D.order == G.order:
            cond = lam0
        elif D.order == 1:
            continue
        else:
            RM = restrict(M, D)
            sub = RM.group
            nonid = _nonid(sub)
            kd = len(nonid)
            if kd == 0 or RM.rank == 0:
                continue
            A = coboundary1_matrix(RM)
            cols = []
            for c in base.generators:
                local = np.array(c, dtype=object)[np.ix_(D.elements, D.elements)]
                cols.append(local[np.ix_(nonid, nonid)].reshape(-1))
            C = np.stack(cols, axis=1)
            combined = np.hstack([C, A.astype(object)])
            K = intmat.kernel_basis(combined)
            cond = intmat.column_lattice_basis(K[:kcount, :])
        lattice = intmat.lattice_intersect(lattice, cond)

    qorders, qgens = intmat.quotient_group(lattice, lam0)
    structure = FinAb.from_factors(qorders)
    gens = []
    for coeff in qgens:
        c = np.zeros_like(np.array(base.generators[0], dtype=object))
        for a, d, gen in zip(coeff, orders, base.generators):
            a = int(a) % d  # d * [gen] vanishes, so reduce for small entries
            c = c + a * np.array(gen, dtype=object)
        gens.append(c)
    return ShaGroup(base, raw, closed, structure, gens)


def h1_character_kernel(G, pairs):
    """H^1 of the norm-one lattice computed from characters alone.

    It is the kernel of restriction from the character group of G to the
    direct sum of the character groups of the H_i (multiplicities are
    irrelevant).  Must agree with the bar-complex H^1 on the same family.
    """
    pairs = list(pairs)
    if not pairs:
        raise EmptyFamily("at least one subgroup is required")
    abG, proj = abelianization(G)
    ds = list(abG.factors)
    J = len(ds)
    if J == 0:
        return FinAb.trivial()
    L = abG.exponent
    rows = []
    seen = set()
    for H, _ in pairs:
        if H.elements in seen:
            continue
        seen.add(H.elements)
        for h in H.elements:
            row = [(L // ds[j]) * proj[h][j] for j in range(J)]
            if any(row):
                rows.append(row)
    lam = np.zeros((J, J), dtype=object)
    for j, d in enumerate(ds):
        lam[j, j] = d
    if not rows:
        sol = np.eye(J, dtype=object)
    else:
        Mrow = np.array(rows, dtype=object)
        combined = np.hstack([Mrow, -L * np.eye(Mrow.shape[0], dtype=object)])
        K = intmat.kernel_basis(combined)
        sol = intmat.column_lattice_basis(np.hstack([K[:J, :], lam]))
    qorders, _ = intmat.quotient_group(sol, lam)
    return FinAb.from_factors(qorders)
