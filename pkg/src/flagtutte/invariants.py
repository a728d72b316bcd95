"""Polynomial invariants of matroids, matroid quotients, and flag matroids.

The corank-nullity family (Tutte, characteristic, Las Vergnas Tutte) is
computed by direct subset sums.  The flag-geometric family (KT, its
equivariant refinement, the h-polynomial) is computed from the localization
sum over flag bases: one half-open triangulation of the tangent cone per
flag basis, with all numerator monomials carried as a kernel, evaluated
either at t = 1 through a one-variable specialization or in full through
the engine's support extraction.
"""

from __future__ import annotations

import hashlib
import time
from collections import OrderedDict
from fractions import Fraction

import numpy as np

from .cones import (
    HalfOpenSimplicialCone, default_direction, tangent_cone_generators,
    triangulate_half_open,
)
from .errors import (
    HasLoopOrColoop, InputError, LoopOrColoop, NonCancellingPole, NotAQuotient,
    NotDivisible, NotInUV, RankGapZero, RankZeroConstituent,
)
from .genfun import (
    EquivariantPolynomial, GenFun, GenFunTerm, _flip, _support_core,
    _weight_candidates, support_pure,
)
from .errors import DegenerateWeights
from .linalg import vec_dot
from .matroid import (
    FlagMatroid, Matroid, _bits, flag, flag_dual, higgs_factorization,
    is_quotient, pseudo_basis_masks,
)
from .polynomial import AuxPolynomial


# ------------------------------------------------------ corank-nullity family


def tutte(m):
    """The Tutte polynomial by the corank-nullity sum, in x and y."""
    r = m.rank_value
    counts = {}
    for s in range(1 << m.n):
        key = (r - m.rank(s), s.bit_count() - m.rank(s))
        counts[key] = counts.get(key, 0) + 1
    x1 = AuxPolynomial.variable("x") - 1
    y1 = AuxPolynomial.variable("y") - 1
    total = AuxPolynomial.zero(("x", "y"))
    for (cr, nl), cnt in sorted(counts.items()):
        total = total + (x1 ** cr) * (y1 ** nl) * cnt
    return total


def characteristic(m):
    """The characteristic polynomial chi(q) = (-1)^r T(1-q, 0)."""
    q = AuxPolynomial.variable("q")
    t = tutte(m).substitute({"x": 1 - q, "y": 0})
    return t * ((-1) ** m.rank_value)


def lv_tutte(m1, m2):
    """The three-variable corank-nullity polynomial of a quotient, in x,y,z."""
    if not is_quotient(m1, m2):
        raise NotAQuotient("second matroid is not a quotient target of the "
                           "first")
    r1, r2 = m1.rank_value, m2.rank_value
    counts = {}
    for s in range(1 << m1.n):
        cr = r1 - m1.rank(s)
        nl = s.bit_count() - m2.rank(s)
        gap = (r2 - m2.rank(s)) - cr
        key = (cr, nl, gap)
        counts[key] = counts.get(key, 0) + 1
    x1 = AuxPolynomial.variable("x") - 1
    y1 = AuxPolynomial.variable("y") - 1
    z = AuxPolynomial.variable("z")
    total = AuxPolynomial.zero(("x", "y", "z"))
    for (cr, nl, gap), cnt in sorted(counts.items()):
        total = total + (x1 ** cr) * (y1 ** nl) * (z ** gap) * cnt
    return total


def lv_tutte_equivariant(m1, m2):
    """The subset-graded refinement: value u^cr v^nl w^gap at each t^{e_S}."""
    if not is_quotient(m1, m2):
        raise NotAQuotient("second matroid is not a quotient target of the "
                           "first")
    n = m1.n
    r1, r2 = m1.rank_value, m2.rank_value
    support = {}
    for s in range(1 << n):
        cr = r1 - m1.rank(s)
        nl = s.bit_count() - m2.rank(s)
        gap = (r2 - m2.rank(s)) - cr
        w = tuple(1 if s >> i & 1 else 0 for i in range(n))
        support[w] = AuxPolynomial.monomial(("u", "v", "w"), (cr, nl, gap))
    return EquivariantPolynomial(n, support)


# ------------------------------------------------- localization sum machinery


_CELLS_CACHE = OrderedDict()
_CELLS_CAP = 1024
_VALUE_CACHE = OrderedDict()
_VALUE_CAP = 8192
_SUPPORT_CACHE = OrderedDict()
_SUPPORT_CAP = 2048


def _cache_get(cache, key):
    hit = cache.get(key)
    if hit is not None:
        cache.move_to_end(key)
    return hit


def _cache_put(cache, key, value, cap):
    cache[key] = value
    if len(cache) > cap:
        cache.popitem(last=False)


def _flag_cells(fm):
    """Per flag basis, the half-open triangulation of its tangent cone."""
    key = fm.key()
    hit = _cache_get(_CELLS_CACHE, key)
    if hit is not None:
        return hit
    origin = (0,) * fm.n
    out = []
    for fb in fm.flag_bases():
        gens = tangent_cone_generators(fm, fb)
        out.append((fb, triangulate_half_open(origin, gens)))
    out = tuple(out)
    _cache_put(_CELLS_CACHE, key, out, _CELLS_CAP)
    return out


def _basis_kernel(fm, fb, mode="kt"):
    """Numerator monomials of one flag basis as integer arrays.

    Mode "kt": rows are apex vectors e_{B_1}+...+e_{B_{k-1}}+e_p+e_q over
    all p inside B_k and q outside B_1; U holds the u-exponent r_k - |p|,
    V the v-exponent |q|.  Mode "h": rows are -e_p+e_q with the same index
    ranges and U = |p|.  Mode "h_lv": p runs inside B_1 and q outside B_k,
    with the apex shifted by the indicator of B_k minus B_1.  vals holds
    multiplicities after deduplication.
    """
    n = fm.n
    base = [0] * n
    if mode == "kt":
        for bmask in fb[:-1]:
            for i in _bits(bmask):
                base[i] += 1
        pmask, pshift, ubump = fb[-1], 1, (1, 0)
        qmask = ~fb[0] & ((1 << n) - 1)
    elif mode == "h":
        pmask, pshift, ubump = fb[-1], -1, (0, 1)
        qmask = ~fb[0] & ((1 << n) - 1)
    else:
        for i in _bits(fb[-1] & ~fb[0]):
            base[i] += 1
        pmask, pshift, ubump = fb[0], -1, (0, 1)
        qmask = ~fb[-1] & ((1 << n) - 1)
    A = np.array([base], dtype=np.int64)
    U = np.array([0], dtype=np.int64)
    V = np.array([0], dtype=np.int64)
    for i in _bits(pmask):
        shift = np.zeros(n, dtype=np.int64)
        shift[i] = pshift
        A = np.concatenate([A, A + shift])
        U = np.concatenate([U + ubump[0], U + ubump[1]])
        V = np.concatenate([V, V])
    for j in _bits(qmask):
        shift = np.zeros(n, dtype=np.int64)
        shift[j] = 1
        A = np.concatenate([A, A + shift])
        U = np.concatenate([U, U])
        V = np.concatenate([V, V + 1])
    return _dedup_kernel(A, U, V)


def _dedup_kernel(A, U, V):
    amin = int(A.min()) if A.size else 0
    span = int(A.max()) - amin + 1 if A.size else 1
    code = np.zeros(len(A), dtype=np.int64)
    stride = 1
    for c in range(A.shape[1]):
        code += (A[:, c] - amin) * stride
        stride *= span
    code += U * stride
    stride *= int(U.max()) + 1
    code += V * stride
    uniq, first, inv = np.unique(code, return_index=True, return_inverse=True)
    vals = np.zeros(len(uniq), dtype=np.int64)
    np.add.at(vals, inv, 1)
    return A[first], U[first], V[first], vals


def _ktt_support(fm, direction=None, mode="kt"):
    """The full equivariant localization sum as a Laurent polynomial.

    Valid for any quotient chain, including a rank-0 first constituent
    (the sum itself makes sense verbatim there).  The mode selects the
    numerator kernel; see _basis_kernel.
    """
    if direction is None:
        direction = default_direction(fm.n)
    key = (fm.key(), direction.key(), mode)
    hit = _cache_get(_SUPPORT_CACHE, key)
    if hit is not None:
        return hit
    n = fm.n
    vstr = n + 1
    staged = []
    used = set()
    los = None
    his = None
    for fb, cells in _flag_cells(fm):
        A, U, V, vals = _basis_kernel(fm, fb, mode)
        codes = U * vstr + V
        used.update(int(c) for c in np.unique(codes))
        lo, hi = A.min(axis=0), A.max(axis=0)
        los = lo if los is None else np.minimum(los, lo)
        his = hi if his is None else np.maximum(his, hi)
        staged.append((cells, A, codes, vals))
    used_sorted = np.array(sorted(used), dtype=np.int64)
    class_polys = [AuxPolynomial.monomial(("u", "v"), divmod(int(c), vstr))
                   for c in used_sorted]
    kernels = []
    for cells, A, codes, vals in staged:
        cls = np.searchsorted(used_sorted, codes)
        for cell in cells:
            fc = _flip(cell, direction)
            kernels.append((fc.rays, fc.open_flags, fc.sign, A, cls, vals))
    los = tuple(int(x) for x in los)
    his = tuple(int(x) for x in his)
    support_dict = _support_core(n, los, his, kernels, class_polys, direction)
    if support_dict is None:
        terms = []
        for rays, flags, sign, A, cls, vals in kernels:
            for row, c, v in zip(A, cls, vals):
                cone = HalfOpenSimplicialCone(
                    tuple(int(x) for x in row), rays, flags, sign,
                    _trusted=True)
                terms.append(GenFunTerm(class_polys[int(c)] * int(v), cone))
        result = support_pure(GenFun(n, terms), direction)
    else:
        result = EquivariantPolynomial(n, support_dict)
    _cache_put(_SUPPORT_CACHE, key, result, _SUPPORT_CAP)
    return result


def kt_equivariant(fm):
    """The torus-equivariant flag-geometric Tutte polynomial, aux u and v.

    The result is the equivariant polynomial at arguments (u+1, v+1).
    """
    if fm.ranks[0] == 0:
        raise RankZeroConstituent(
            "the equivariant form needs a first constituent of rank >= 1; "
            "the rank-0 case is defined only after specializing t to 1")
    return _ktt_support(fm)


def _basis_zkernel(fm, fb, weights, mode):
    """The one-variable specialization t_i = z^(c_i) of a basis kernel.

    Returns dict (z-exponent, u-exponent, v-exponent) -> integer count.
    mode "kt": apex e_{B_1}+..+e_{B_{k-1}}+e_p+e_q, u-exponent r_k - |p|;
    mode "h": apex -e_p+e_q with p in B_k, q outside B_1, u-exponent |p|;
    mode "h_lv": same exponents but p in B_1, q outside B_k.
    """
    n = fm.n
    if mode == "kt":
        z0 = 0
        for bmask in fb[:-1]:
            for i in _bits(bmask):
                z0 += weights[i]
        cur = {(z0, 0, 0): 1}
        for i in _bits(fb[-1]):
            c = weights[i]
            nxt = {}
            for (z, a, b), cnt in cur.items():
                k1 = (z, a + 1, b)
                nxt[k1] = nxt.get(k1, 0) + cnt
                k2 = (z + c, a, b)
                nxt[k2] = nxt.get(k2, 0) + cnt
            cur = nxt
        qmask = ~fb[0] & ((1 << n) - 1)
    else:
        z0 = 0
        if mode == "h_lv":
            pmask = fb[0]
            qmask = ~fb[-1] & ((1 << n) - 1)
            # line-bundle twist of the Las Vergnas diagram, trivial for k = 1
            for i in _bits(fb[-1] & ~fb[0]):
                z0 += weights[i]
        else:
            pmask = fb[-1]
            qmask = ~fb[0] & ((1 << n) - 1)
        cur = {(z0, 0, 0): 1}
        for i in _bits(pmask):
            c = weights[i]
            nxt = {}
            for (z, a, b), cnt in cur.items():
                k1 = (z, a, b)
                nxt[k1] = nxt.get(k1, 0) + cnt
                k2 = (z - c, a + 1, b)
                nxt[k2] = nxt.get(k2, 0) + cnt
            cur = nxt
    for j in _bits(qmask):
        c = weights[j]
        nxt = {}
        for (z, a, b), cnt in cur.items():
            k1 = (z, a, b)
            nxt[k1] = nxt.get(k1, 0) + cnt
            k2 = (z + c, a, b + 1)
            nxt[k2] = nxt.get(k2, 0) + cnt
        cur = nxt
    return cur


def _divide_once(sl, d):
    """Exact ascending division of a sparse z-polynomial by (1 - z^d)."""
    if not sl:
        return sl
    emin = min(sl)
    emax = max(sl)
    q = {}
    for e in range(emin, emax + 1):
        val = sl.get(e, 0) + q.get(e - d, 0)
        if val:
            q[e] = val
    for e in range(emax - d + 1, emax + 1):
        if q.get(e):
            raise NonCancellingPole(
                "factor (1 - z^%d) does not divide the numerator" % d)
        q.pop(e, None)
    return q


def _localization_value(fm, mode, seed=0):
    """The t -> 1 value of a localization sum, as a polynomial in u and v."""
    key = (fm.key(), mode, seed)
    hit = _cache_get(_VALUE_CACHE, key)
    if hit is not None:
        return hit
    n = fm.n
    data = _flag_cells(fm)
    rays = sorted({v for _, cells in data for cell in cells for v in cell.rays})
    weights = None
    for cand in _weight_candidates(n, seed):
        if all(vec_dot(cand, v) != 0 for v in rays):
            weights = cand
            break
    if weights is None:
        raise DegenerateWeights("no generic weight vector found")

    groups = {}
    for fb, cells in data:
        zker = _basis_zkernel(fm, fb, weights, mode)
        for cell in cells:
            sign = cell.sign
            shift = 0
            dens = []
            for v, is_open in zip(cell.rays, cell.open_flags):
                d = vec_dot(weights, v)
                if d > 0:
                    dens.append(d)
                    if is_open:
                        shift += d
                else:
                    dens.append(-d)
                    sign = -sign
                    if not is_open:
                        shift += -d
            gkey = tuple(sorted(dens))
            tgt = groups.setdefault(gkey, {})
            for (z, a, b), cnt in zker.items():
                kk = (z + shift, a, b)
                val = tgt.get(kk, 0) + sign * cnt
                if val:
                    tgt[kk] = val
                else:
                    tgt.pop(kk, None)

    target = {}
    for gkey in groups:
        counts = {}
        for d in gkey:
            counts[d] = counts.get(d, 0) + 1
        for d, c in counts.items():
            if target.get(d, 0) < c:
                target[d] = c

    combined = {}
    for gkey, num in groups.items():
        counts = {}
        for d in gkey:
            counts[d] = counts.get(d, 0) + 1
        cur = num
        for d, want in sorted(target.items()):
            for _ in range(want - counts.get(d, 0)):
                nxt = {}
                for (z, a, b), cnt in cur.items():
                    k1 = (z, a, b)
                    v1 = nxt.get(k1, 0) + cnt
                    if v1:
                        nxt[k1] = v1
                    else:
                        nxt.pop(k1, None)
                    k2 = (z + d, a, b)
                    v2 = nxt.get(k2, 0) - cnt
                    if v2:
                        nxt[k2] = v2
                    else:
                        nxt.pop(k2, None)
                cur = nxt
        for kk, cnt in cur.items():
            val = combined.get(kk, 0) + cnt
            if val:
                combined[kk] = val
            else:
                combined.pop(kk, None)

    slices = {}
    for (z, a, b), cnt in combined.items():
        slices.setdefault((a, b), {})[z] = cnt
    terms = {}
    for (a, b), sl in sorted(slices.items()):
        for d, mult in sorted(target.items()):
            for _ in range(mult):
                sl = _divide_once(sl, d)
        total = sum(sl.values())
        if total:
            terms[(a, b)] = Fraction(total)
    result = AuxPolynomial(("u", "v"), terms)
    _cache_put(_VALUE_CACHE, key, result, _VALUE_CAP)
    return result


def kt(fm):
    """The flag-geometric Tutte polynomial in x and y.

    Computed as the t = 1 value of the localization sum (which also covers
    a rank-0 first constituent) followed by u = x-1, v = y-1.
    """
    phi = _localization_value(fm, "kt")
    x = AuxPolynomial.variable("x")
    y = AuxPolynomial.variable("y")
    return phi.substitute({"u": x - 1, "v": y - 1})


# ----------------------------------------------------------------- h family


def _check_loops_coloops(fm):
    if fm.constituents[0].loops():
        raise HasLoopOrColoop("first constituent has a loop")
    if fm.constituents[-1].coloops():
        raise HasLoopOrColoop("last constituent has a coloop")


def _is_diagonal(phi):
    """Whether a (u,v)-polynomial has equal u- and v-exponents throughout."""
    ui = phi.vars.index("u") if "u" in phi.vars else None
    vi = phi.vars.index("v") if "v" in phi.vars else None
    for exps in phi.terms:
        a = exps[ui] if ui is not None else 0
        b = exps[vi] if vi is not None else 0
        if a != b:
            return False
    return True


def h_value_uv(fm):
    """The t -> 1 value of the untwisted localization sum, in u and v."""
    _check_loops_coloops(fm)
    return _localization_value(fm, "h")


def h_polynomial(fm):
    """The one-variable h-polynomial, via the uv-diagonal substitution.

    The untwisted sum is a polynomial in the product uv; writing it as
    sum c_m (uv)^m, the h-polynomial is sum c_m (1-s)^m.
    """
    phi = h_value_uv(fm)
    if not _is_diagonal(phi):
        raise NotInUV("untwisted localization value has a term off the "
                      "uv-diagonal")
    s = AuxPolynomial.variable("s")
    total = AuxPolynomial.zero(("s",))
    for exps, coeff in sorted(phi.terms.items()):
        m_exp = exps[phi.vars.index("u")]
        total = total + ((1 - s) ** m_exp) * coeff
    return total


def h_candidate_lv(fm):
    """The analogous construction built from the coarse/fine diagram.

    Per flag basis this sums p inside B_1 and q outside B_k, with the cone
    apex shifted by the indicator of B_k minus B_1 (the line-bundle twist
    native to that diagram; it vanishes when k = 1, so single matroids give
    the same polynomial as h_value_uv).  Returns the (u,v)-polynomial and
    whether it lies on the uv-diagonal, which it need not in general.
    """
    _check_loops_coloops(fm)
    phi = _localization_value(fm, "h_lv")
    return phi, _is_diagonal(phi)


# --------------------------------------------------------------- beta family


def beta_invariant(m):
    """Signed derivative of the characteristic polynomial at q = 1."""
    chi = characteristic(m)
    deriv = Fraction(0)
    for exps, coeff in chi.terms.items():
        e = exps[chi.vars.index("q")]
        deriv += e * coeff
    sign = -1 if (m.rank_value - 1) % 2 else 1
    return sign * deriv


def _divide_by_q_minus_1(poly):
    coeffs = {}
    qi = poly.vars.index("q") if "q" in poly.vars else None
    for exps, coeff in poly.terms.items():
        e = exps[qi] if qi is not None else 0
        coeffs[e] = coeffs.get(e, Fraction(0)) + coeff
    if sum(coeffs.values(), Fraction(0)) != 0:
        raise NotDivisible("beta polynomial is not divisible by (q - 1)")
    out = {}
    if coeffs:
        acc = Fraction(0)
        for e in range(0, max(coeffs) + 1):
            acc = acc - coeffs.get(e, Fraction(0))
            if acc and e < max(coeffs):
                out[(e,)] = acc
    return AuxPolynomial(("q",), out)


def beta_polynomial(m1, m2):
    """The beta polynomial of a quotient and its (q-1)-reduced form."""
    if not is_quotient(m1, m2):
        raise NotAQuotient("second matroid is not a quotient target of the "
                           "first")
    if m1.rank_value == m2.rank_value:
        raise RankGapZero("beta polynomial reduction needs r2 > r1")
    q = AuxPolynomial.variable("q")
    lvt = lv_tutte(m1, m2)
    beta = lvt.substitute({"x": 0, "y": 0, "z": -q})
    beta = beta * ((-1) ** (m2.rank_value - m1.rank_value))
    beta = beta.align(_merge_q(beta))
    reduced = _divide_by_q_minus_1(beta)
    return beta, reduced


def _merge_q(poly):
    return poly.vars if "q" in poly.vars else poly.vars + ("q",)


def reduced_beta_via_higgs(m1, m2):
    """The alternating Higgs-layer expression for the reduced beta."""
    if not is_quotient(m1, m2):
        raise NotAQuotient("second matroid is not a quotient target of the "
                           "first")
    d = m2.rank_value - m1.rank_value
    if d == 0:
        raise RankGapZero("Higgs expression needs r2 > r1")
    layers = higgs_factorization(m1, m2)
    betas = [beta_invariant(layer) for layer in layers]
    q = AuxPolynomial.variable("q")
    total = AuxPolynomial.zero(("q",))
    for i in range(d):
        total = total + (q ** i) * ((-1) ** (d - 1 - i)
                                    * (betas[i] + betas[i + 1]))
    return total


def poincare(m1, m2):
    """The two-variable specialization (-1)^{r2} LVT(1-q, 0, -s)."""
    q = AuxPolynomial.variable("q")
    s = AuxPolynomial.variable("s")
    lvt = lv_tutte(m1, m2)
    out = lvt.substitute({"x": 1 - q, "y": 0, "z": -s})
    return out * ((-1) ** m2.rank_value)


def k_char(fm):
    """The flag-geometric characteristic polynomial (-1)^{r_k} KT(1-q, 0)."""
    q = AuxPolynomial.variable("q")
    out = kt(fm).substitute({"x": 1 - q, "y": 0})
    return out * ((-1) ** fm.ranks[-1])


# ------------------------------------------------------------- verification


class VerifyReport:
    """Outcome of one identity check: passed flag plus per-check details."""

    __slots__ = ("name", "passed", "details", "data")

    def __init__(self, name):
        self.name = name
        self.passed = True
        self.details = []
        self.data = {}

    def check(self, label, ok):
        self.details.append((label, bool(ok)))
        if not ok:
            self.passed = False
        return ok

    def __repr__(self):
        return "VerifyReport(%s, %s)" % (self.name,
                                         "PASS" if self.passed else "FAIL")


def _mask_vector(n, s):
    return tuple(1 if s >> i & 1 else 0 for i in range(n))


def kt22_rhs_equivariant(m1, m2):
    """Product side of the pseudo-basis identity, with aux variable q."""
    n = m1.n
    pbs = pseudo_basis_masks(m1, m2)
    support = {}
    for t_sub in range(1 << n):
        wt = _mask_vector(n, t_sub)
        qt = t_sub.bit_count()
        for s in pbs:
            w = tuple(a + b for a, b in zip(wt, _mask_vector(n, s)))
            mono = AuxPolynomial.monomial(("q",), (qt + s.bit_count(),))
            cur = support.get(w)
            support[w] = mono if cur is None else cur + mono
    return EquivariantPolynomial(n, support)


def verify_kt22(fm):
    """Check the pseudo-basis expansion of a two-step localization sum.

    The identity compared is q^{r1+r2} KT^T(1+1/q, 1+q) = prod (1+t_i q)
    times sum over pseudo-bases S of t^{e_S} q^{|S|}; the q-grading follows
    from regrouping the numerator sum over (p, q) into subsets R of the
    ground set and subsets S of B_2 minus B_1.
    """
    if fm.k != 2:
        raise InputError("the pseudo-basis identity is for two-step flags")
    m1, m2 = fm.constituents
    n = fm.n
    rsum = m1.rank_value + m2.rank_value
    report = VerifyReport("kt22")
    pbs = pseudo_basis_masks(m1, m2)
    report.data["pseudo_bases"] = len(pbs)

    phi_t = _ktt_support(fm)
    qinv = AuxPolynomial.monomial(("q",), (-1,))
    q = AuxPolynomial.variable("q")
    lhs_support = {}
    for w, coeff in phi_t.support.items():
        val = coeff.substitute({"u": qinv, "v": q}) * (q ** rsum)
        if val:
            lhs_support[w] = val
    lhs = EquivariantPolynomial(n, lhs_support)
    rhs = kt22_rhs_equivariant(m1, m2)
    report.check("equivariant pseudo-basis identity", lhs == rhs)

    phi = _localization_value(fm, "kt")
    lhs_q = phi.substitute({"u": qinv, "v": q}) * (q ** rsum)
    rhs_q = ((1 + q) ** n) * sum(
        (q ** s.bit_count() for s in pbs), AuxPolynomial.zero(("q",)))
    report.check("one-variable pseudo-basis identity", lhs_q == rhs_q)

    at22 = phi.substitute({"u": 1, "v": 1})
    expect = Fraction(2 ** n * len(pbs))
    got = at22.constant_term()
    report.data["kt_at_2_2"] = got
    report.check("value at (2,2) equals 2^n times the pseudo-basis count",
                 at22 == AuxPolynomial.constant(expect) and got == expect)
    return report


def delcont_rhs_supports(m, e, ell):
    """Right-hand side of the l-fold deletion-contraction identity."""
    dele, relabel1 = m.minor(delete=(e,))
    cont, relabel2 = m.minor(contract=(e,))
    assert relabel1 == relabel2
    parts = []
    for i in range(ell + 1):
        constituents = (cont,) * (ell - i) + (dele,) * i
        sub = FlagMatroid(constituents)
        piece = _ktt_support(sub).insert_coordinate(e - 1, ell - i)
        parts.append(piece)
    total = parts[0]
    for piece in parts[1:]:
        total = total + piece
    return total


def verify_delcont(m, e, ell=2):
    """Check the l-fold equivariant deletion-contraction identity at e."""
    loops = m.loops()
    coloops = m.coloops()
    if e in loops or e in coloops:
        raise LoopOrColoop("element %d is a loop or coloop" % e)
    report = VerifyReport("delcont")
    fm = FlagMatroid((m,) * ell)
    lhs = _ktt_support(fm)
    rhs = delcont_rhs_supports(m, e, ell)
    report.check("equivariant %d-fold identity at element %d" % (ell, e),
                 lhs == rhs)

    dele, _ = m.minor(delete=(e,))
    cont, _ = m.minor(contract=(e,))
    lhs_v = _localization_value(fm, "kt")
    rhs_v = AuxPolynomial.zero(("u", "v"))
    for i in range(ell + 1):
        sub = FlagMatroid((cont,) * (ell - i) + (dele,) * i)
        rhs_v = rhs_v + _localization_value(sub, "kt")
    report.check("value identity at t = 1", lhs_v == rhs_v)
    return report


def check_lvt_special(m1, m2):
    """Specializations of the three-variable quotient polynomial.

    The subset-graded refinement collapses to the corank-nullity sum at
    t = 1; identical pairs reduce to the one-matroid polynomial; a rank-zero
    bottom shifts x to z + 1; and the value at (2, 2, 1) counts subsets.
    """
    report = VerifyReport("lvt-special")
    lvt = lv_tutte(m1, m2)
    x = AuxPolynomial.variable("x")
    y = AuxPolynomial.variable("y")
    z = AuxPolynomial.variable("z")
    collapsed = lv_tutte_equivariant(m1, m2).specialize_t1().substitute(
        {"u": x - 1, "v": y - 1, "w": z})
    report.check("subset-weighted sum matches corank-nullity", collapsed == lvt)
    if m1.key() == m2.key():
        report.check("identical pair reduces to the one-matroid polynomial",
                     lvt == tutte(m1))
    if m1.rank_value == 0:
        report.check("rank-zero bottom substitutes x to z + 1",
                     lvt == tutte(m2).substitute({"x": z + 1}))
    val = lvt.evaluate({"x": 2, "y": 2, "z": 1})
    report.check("value 2^n at (2, 2, 1)", val == 1 << m1.n)
    report.data["value_2_2_1"] = int(val)
    return report


def check_beta_higgs(m1, m2):
    """The reduced beta polynomial against its Higgs-layer expression."""
    report = VerifyReport("beta-higgs")
    beta, red = beta_polynomial(m1, m2)
    report.check("reduction matches the Higgs-layer expression",
                 red == reduced_beta_via_higgs(m1, m2))
    report.data["beta"] = beta
    report.data["reduced"] = red
    return report


def verify_h_uv(fm):
    """Cross-check both h constructions between two evaluation routes.

    The one-variable weight specialization and the full support extraction
    must give the same t -> 1 value for the untwisted sum and for the
    diagram candidate, the untwisted value must lie in Q[uv], and the
    candidate's diagonality flag must agree with the support route.
    """
    _check_loops_coloops(fm)
    report = VerifyReport("h-uv")
    phi = h_value_uv(fm)
    sup = _ktt_support(fm, mode="h").specialize_t1()
    report.check("untwisted routes agree", phi == sup)
    report.check("untwisted value lies in Q[uv]", _is_diagonal(phi))
    cand, in_uv = h_candidate_lv(fm)
    cand_sup = _ktt_support(fm, mode="h_lv").specialize_t1()
    report.check("diagram-candidate routes agree", cand == cand_sup)
    report.check("diagonality detection confirmed",
                 in_uv == _is_diagonal(cand_sup))
    report.data["candidate_in_uv"] = in_uv
    return report


def check_lvt_delcont(m1, m2, e=None):
    """Deletion-contraction for the three-variable quotient polynomial.

    For e neither a loop nor a coloop of the second constituent, the
    polynomial of the pair is the sum of the polynomials of the deleted and
    contracted pairs.  With e omitted, every eligible element is checked.
    """
    if not is_quotient(m1, m2):
        raise NotAQuotient("second matroid is not a quotient target of the "
                           "first")
    bad = m2.loops() | m2.coloops()
    if e is not None:
        if e in bad:
            raise LoopOrColoop("element %d is a loop or coloop" % e)
        elements = [e]
    else:
        elements = [i for i in range(1, m2.n + 1) if i not in bad]
    report = VerifyReport("lvt-delcont")
    lhs = lv_tutte(m1, m2)
    for el in elements:
        d1, _ = m1.minor(delete=(el,))
        d2, _ = m2.minor(delete=(el,))
        c1, _ = m1.minor(contract=(el,))
        c2, _ = m2.minor(contract=(el,))
        rhs = lv_tutte(d1, d2) + lv_tutte(c1, c2)
        report.check("three-term identity at element %d" % el, lhs == rhs)
    return report


def count_lattice_points(fm):
    """Lattice points of the base polytope by direct membership testing."""
    n, k = fm.n, fm.k
    total_rank = sum(fm.ranks)
    count = 0

    def rec(prefix, remaining):
        nonlocal count
        if len(prefix) == n:
            if remaining == 0 and fm.polytope_membership(prefix):
                count += 1
            return
        left = n - len(prefix) - 1
        for v in range(0, min(k, remaining) + 1):
            if remaining - v > k * left:
                continue
            rec(prefix + [v], remaining - v)

    rec([], total_rank)
    return count


def check_duality(fm):
    """Equivariant and plain duality: reverse-dualize, swap u and v.

    Support exponents of a k-step flag live in [0, k]^n, so the dual support
    is the image under w -> k - w coordinatewise.
    """
    dual = flag_dual(fm)
    report = VerifyReport("duality")
    a = _ktt_support(fm)
    b = _ktt_support(dual)
    n, k = fm.n, fm.k
    u = AuxPolynomial.variable("u")
    v = AuxPolynomial.variable("v")
    mapped = {}
    for w, coeff in a.support.items():
        w2 = tuple(k - x for x in w)
        mapped[w2] = coeff.substitute({"u": v, "v": u})
    report.check("equivariant duality", EquivariantPolynomial(n, mapped) == b)
    x = AuxPolynomial.variable("x")
    y = AuxPolynomial.variable("y")
    report.check("plain duality",
                 kt(fm).substitute({"x": y, "y": x}) == kt(dual))
    return report


def check_direct_sum(fm1, fm2):
    """Multiplicativity over a split ground set, equivariantly."""
    from .matroid import flag_direct_sum
    report = VerifyReport("direct-sum")
    fm = flag_direct_sum(fm1, fm2)
    a = _ktt_support(fm1)
    b = _ktt_support(fm2)
    prod_support = {}
    for w1, c1 in a.support.items():
        for w2, c2 in b.support.items():
            prod_support[w1 + w2] = c1 * c2
    report.check("equivariant direct-sum multiplicativity",
                 EquivariantPolynomial(fm.n, prod_support) == _ktt_support(fm))
    report.check("plain direct-sum multiplicativity",
                 kt(fm1) * kt(fm2) == kt(fm))
    return report


def check_latticepoints(fm):
    """The (1,1) value against direct polytope point enumeration."""
    report = VerifyReport("latticepoints")
    expected = count_lattice_points(fm)
    report.data["lattice_points"] = expected
    phi = _localization_value(fm, "kt")
    value = phi.constant_term()
    report.check("kt at (1,1) equals the lattice-point count",
                 value == expected
                 and kt(fm).substitute({"x": 1, "y": 1})
                 == AuxPolynomial.constant(expected))
    eq = _ktt_support(fm).substitute_aux({"u": 0, "v": 0})
    pts = {w: AuxPolynomial.constant(1) for w in _enumerate_polytope(fm)}
    report.check("equivariant (1,1) value lists the lattice points",
                 eq == EquivariantPolynomial(fm.n, pts))
    return report


def _enumerate_polytope(fm):
    n, k = fm.n, fm.k
    total = sum(fm.ranks)
    out = []

    def rec(prefix, remaining):
        if len(prefix) == n:
            if remaining == 0 and fm.polytope_membership(prefix):
                out.append(tuple(prefix))
            return
        left = n - len(prefix) - 1
        for v in range(0, min(k, remaining) + 1):
            if remaining - v > k * left:
                continue
            rec(prefix + [v], remaining - v)

    rec([], total)
    return out


def check_loop_coloop_divisibility(fm):
    """x^(coloops of last) y^(loops of first) divides the kt polynomial."""
    report = VerifyReport("divisibility")
    nl = len(fm.constituents[0].loops())
    nc = len(fm.constituents[-1].coloops())
    poly = kt(fm)
    ok = True
    for exps in poly.terms:
        xi = exps[poly.vars.index("x")] if "x" in poly.vars else 0
        yi = exps[poly.vars.index("y")] if "y" in poly.vars else 0
        if xi < nc or yi < nl:
            ok = False
            break
    report.data["loops"] = nl
    report.data["coloops"] = nc
    report.check("monomial-wise divisibility by x^%d y^%d" % (nc, nl), ok)
    return report


def check_coefficient_theorem(fm):
    """Support-wide check of the two-step 0/1 coefficient rule."""
    if fm.k != 2:
        raise InputError("the coefficient rule is for two-step flags")
    m1, m2 = fm.constituents
    r1, r2 = fm.ranks
    report = VerifyReport("coefficients")
    phi_t = _ktt_support(fm)
    ok_sum = True
    ok_rule = True
    for w, coeff in phi_t.support.items():
        for exps, gamma in coeff.terms.items():
            a = exps[coeff.vars.index("u")]
            b = exps[coeff.vars.index("v")]
            i, j = r2 - a, b
            if sum(w) != r1 + i + j:
                ok_sum = False
            c = sum(1 for x in w if x == 1)
            bound = abs(r1 + j - i)
            if c < bound:
                ok_rule = False
            elif c == bound:
                s2 = sum(1 << idx for idx, x in enumerate(w) if x >= 1)
                s1 = sum(1 << idx for idx, x in enumerate(w) if x == 2)
                good = (m1.rank(s2) == r1
                        and m2.rank(s1) == s1.bit_count())
                if gamma != 1 or not good:
                    ok_rule = False
    report.check("coordinate sums match r1 + i + j", ok_sum)
    report.check("0/1 coefficient rule at the few-ones boundary", ok_rule)
    return report


def check_kchi_conjecture(m):
    """Observe whether k_char of (U_{1,n}, M) collapses to (q-1)^rank."""
    n = m.n
    if m.loops():
        raise InputError("conjecture check needs a loopless matroid")
    u1n = Matroid.uniform(1, n)
    fm = FlagMatroid((u1n, m))
    got = k_char(fm)
    q = AuxPolynomial.variable("q")
    expected = (q - 1) ** m.rank_value
    report = VerifyReport("kchi-conjecture")
    report.data["matches"] = bool(got == expected)
    report.data["value"] = got
    report.details.append(("k_char equals (q-1)^r", bool(got == expected)))
    return report


def brion_example_report():
    """Reproduce the five-term trapezoid sum from the six vertex cones."""
    report = VerifyReport("brion-example")
    fm = flag(Matroid.uniform(1, 3), Matroid.uniform(2, 3))
    pairs = [
        ((1, 1, 0), (0b001, 0b011)),
        ((1, 0, 1), (0b001, 0b101)),
        ((0, 2, 0), (0b010, 0b011)),
        ((0, 0, 2), (0b100, 0b101)),
        ((0, 2, 0), (0b010, 0b110)),
        ((0, 0, 2), (0b100, 0b110)),
    ]
    terms = []
    for apex, fb in pairs:
        gens = tangent_cone_generators(fm, fb)
        for cell in triangulate_half_open(apex, gens):
            terms.append(GenFunTerm(AuxPolynomial.constant(1), cell))
    from .genfun import coefficient_at, slice_genfun, support
    g = GenFun(3, terms)
    phi = support(g)
    expected = EquivariantPolynomial(3, {
        (1, 1, 0): 1, (1, 0, 1): 1, (0, 2, 0): 1, (0, 1, 1): 1, (0, 0, 2): 1,
    })
    report.check("vertex-cone sum equals the five-term polynomial",
                 phi == expected)
    sl = support(slice_genfun(g, (1, 0, 0), 0))
    report.check("slice at e1 = 0",
                 sl == EquivariantPolynomial(3, {(0, 2, 0): 1, (0, 1, 1): 1,
                                                 (0, 0, 2): 1}))
    report.check("coefficient of t1^2 vanishes",
                 coefficient_at(g, (2, 0, 0)).is_zero())
    report.check("coefficient of t2^2 is one",
                 coefficient_at(g, (0, 2, 0)) == AuxPolynomial.constant(1))
    report.data["polynomial"] = phi
    return report


# ------------------------------------------------------------- CLI plumbing


class InvariantResult:
    """A computed invariant with its provenance metadata."""

    __slots__ = ("polynomial", "equivariant", "metadata")

    def __init__(self, polynomial, equivariant=None, metadata=None):
        self.polynomial = polynomial
        self.equivariant = equivariant
        self.metadata = metadata or {}


def _input_hash(obj):
    if isinstance(obj, FlagMatroid):
        key = obj.key()
    elif isinstance(obj, Matroid):
        key = obj.key()
    else:
        key = tuple(obj)
    return hashlib.sha256(repr(key).encode()).hexdigest()[:16]


def _as_flag(obj):
    if isinstance(obj, FlagMatroid):
        return obj
    return FlagMatroid((obj,))


def _as_matroid(obj):
    if isinstance(obj, Matroid):
        return obj
    if isinstance(obj, FlagMatroid) and obj.k == 1:
        return obj.constituents[0]
    raise InputError("this invariant needs a single matroid")


def _as_quotient_pair(obj):
    if isinstance(obj, FlagMatroid) and obj.k == 2:
        return obj.constituents
    if isinstance(obj, Matroid):
        return obj, obj
    raise InputError("this invariant needs a two-step flag matroid")


def compute_invariant(name, obj, equivariant=False, seed=0):
    """Dispatch a named invariant computation; see the CLI for names."""
    t0 = time.perf_counter()
    eq = None
    if name == "tutte":
        poly = tutte(_as_matroid(obj))
    elif name == "characteristic":
        poly = characteristic(_as_matroid(obj))
    elif name == "lvt":
        m1, m2 = _as_quotient_pair(obj)
        poly = lv_tutte(m1, m2)
        if equivariant:
            eq = lv_tutte_equivariant(m1, m2)
    elif name == "kt":
        fm = _as_flag(obj)
        poly = kt(fm)
        if equivariant:
            eq = kt_equivariant(fm)
    elif name == "h":
        poly = h_polynomial(_as_flag(obj))
    elif name == "h-lv":
        poly, in_uv = h_candidate_lv(_as_flag(obj))
    elif name == "beta":
        m1, m2 = _as_quotient_pair(obj)
        poly, _ = beta_polynomial(m1, m2)
    elif name == "beta-reduced":
        m1, m2 = _as_quotient_pair(obj)
        _, poly = beta_polynomial(m1, m2)
    elif name == "beta-invariant":
        poly = AuxPolynomial.constant(beta_invariant(_as_matroid(obj)))
    elif name == "poincare":
        m1, m2 = _as_quotient_pair(obj)
        poly = poincare(m1, m2)
    elif name == "kchar":
        poly = k_char(_as_flag(obj))
    else:
        from .errors import UnknownInvariant
        raise UnknownInvariant("no invariant named %r" % name)
    meta = {
        "invariant": name,
        "input": _input_hash(obj),
        "seconds": time.perf_counter() - t0,
    }
    return InvariantResult(poly, eq, meta)
