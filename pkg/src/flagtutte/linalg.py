"""Exact integer and rational linear algebra on small dense matrices.

Everything here is deliberately plain: vectors are tuples of ints, matrices
are lists of row tuples, arithmetic is exact (Python ints and Fractions).
Sizes are tiny (dimensions up to the ground-set size, so <= 64 and in the
invariant pipeline <= 8), so cubic algorithms are fine.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd


def vec_add(a, b):
    return tuple(x + y for x, y in zip(a, b))


def vec_sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def vec_neg(a):
    return tuple(-x for x in a)


def vec_dot(a, b):
    return sum(x * y for x, y in zip(a, b))


def vec_scale(c, a):
    return tuple(c * x for x in a)


def primitive(v):
    """Divide an integer vector by the gcd of its entries (zero stays zero)."""
    g = 0
    for x in v:
        g = gcd(g, x)
    if g <= 1:
        return tuple(v)
    return tuple(x // g for x in v)


def _echelon(rows):
    """Row-reduce a list of Fraction rows in place; return pivot column list."""
    m = [list(r) for r in rows]
    pivots = []
    rank = 0
    ncols = len(m[0]) if m else 0
    for col in range(ncols):
        piv = None
        for i in range(rank, len(m)):
            if m[i][col] != 0:
                piv = i
                break
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        inv = Fraction(1, 1) / m[rank][col]
        m[rank] = [x * inv for x in m[rank]]
        for i in range(len(m)):
            if i != rank and m[i][col] != 0:
                c = m[i][col]
                m[i] = [x - c * y for x, y in zip(m[i], m[rank])]
        pivots.append(col)
        rank += 1
        if rank == len(m):
            break
    return m, pivots


def matrix_rank(rows):
    """Rank over Q of a matrix given as an iterable of numeric rows."""
    rows = [tuple(Fraction(x) for x in r) for r in rows]
    if not rows:
        return 0
    _, pivots = _echelon(rows)
    return len(pivots)


def solve_exact(cols, target):
    """Solve sum_j a_j * cols[j] = target exactly over Q.

    `cols` is a list of integer vectors (the columns), `target` an integer
    vector of the same dimension.  Returns the unique Fraction tuple `a` when
    the columns are independent and the system is consistent, else None.
    """
    n = len(target)
    d = len(cols)
    if d == 0:
        return () if all(x == 0 for x in target) else None
    aug = [[Fraction(cols[j][i]) for j in range(d)] + [Fraction(target[i])]
           for i in range(n)]
    m, pivots = _echelon(aug)
    if d in pivots:
        return None
    if len(pivots) != d:
        return None
    sol = [Fraction(0)] * d
    for r, col in enumerate(pivots):
        sol[col] = m[r][d]
    return tuple(sol)


def integer_coordinates(cols, target):
    """Like solve_exact but demands integer coordinates; None otherwise."""
    a = solve_exact(cols, target)
    if a is None:
        return None
    out = []
    for x in a:
        if x.denominator != 1:
            return None
        out.append(x.numerator)
    return tuple(out)


def kernel_basis_int(cols):
    """Integer row vectors h spanning {h : h . c = 0 for every column c}.

    `cols` is a list of integer n-vectors; the result is a list of primitive
    integer n-vectors forming a Q-basis of the left annihilator.
    """
    if not cols:
        return []
    n = len(cols[0])
    rows = [tuple(Fraction(x) for x in c) for c in cols]
    m, pivots = _echelon(rows)
    free = [j for j in range(n) if j not in pivots]
    basis = []
    for j in free:
        h = [Fraction(0)] * n
        h[j] = Fraction(1)
        for r, col in enumerate(pivots):
            h[col] = -m[r][j]
        lcm = 1
        for x in h:
            lcm = lcm * x.denominator // gcd(lcm, x.denominator)
        basis.append(primitive(tuple(int(x * lcm) for x in h)))
    return basis


def smith_diagonal(rows):
    """Absolute values of the diagonal after integer diagonalization.

    Unimodular row and column operations preserve the product of invariant
    factors, which is all the callers need (lattice index = product).
    """
    a = [list(map(int, r)) for r in rows]
    if not a or not a[0]:
        return []
    nr, nc = len(a), len(a[0])
    diag = []
    top = 0
    left = 0
    while top < nr and left < nc:
        piv = None
        best = None
        for i in range(top, nr):
            for j in range(left, nc):
                if a[i][j] != 0 and (best is None or abs(a[i][j]) < best):
                    best = abs(a[i][j])
                    piv = (i, j)
        if piv is None:
            break
        pi, pj = piv
        a[top], a[pi] = a[pi], a[top]
        for row in a:
            row[left], row[pj] = row[pj], row[left]
        # clear the pivot row and column; restart if a remainder shrinks the pivot
        again = True
        while again:
            again = False
            p = a[top][left]
            for i in range(top + 1, nr):
                if a[i][left] != 0:
                    q = a[i][left] // p
                    for j in range(left, nc):
                        a[i][j] -= q * a[top][j]
                    if a[i][left] != 0:
                        a[top], a[i] = a[i], a[top]
                        again = True
                        break
            if again:
                continue
            for j in range(left + 1, nc):
                if a[top][j] != 0:
                    q = a[top][j] // p
                    for i in range(top, nr):
                        a[i][j] -= q * a[i][left]
                    if a[top][j] != 0:
                        for row in a:
                            row[left], row[j] = row[j], row[left]
                        again = True
                        break
        diag.append(abs(a[top][left]))
        top += 1
        left += 1
    return diag


def lattice_index(rays):
    """Index of the lattice spanned by integer rays inside span cap Z^n.

    Rays must be Q-linearly independent; the index is the product of the
    Smith invariant factors, and equals 1 exactly for unimodular systems.
    """
    diag = smith_diagonal(rays)
    idx = 1
    for d in diag:
        idx *= d
    return idx


def nonneg_combination_exists(cols, target):
    """Exact feasibility of sum_j lam_j cols[j] = target with lam >= 0.

    Phase-1 simplex with Bland's rule over Fractions.  `cols` integer (or
    Fraction) vectors, `target` same dimension.  Returns bool.
    """
    n = len(target)
    m = len(cols)
    b = [Fraction(x) for x in target]
    rows = []
    for i in range(n):
        row = [Fraction(cols[j][i]) for j in range(m)]
        if b[i] < 0:
            row = [-x for x in row]
            b[i] = -b[i]
        rows.append(row)
    # tableau: columns = m structural + n artificial + rhs
    tab = []
    for i in range(n):
        art = [Fraction(0)] * n
        art[i] = Fraction(1)
        tab.append(rows[i] + art + [b[i]])
    basis = [m + i for i in range(n)]
    # objective: minimize sum of artificials -> row of reduced costs
    cost = [Fraction(0)] * (m + n + 1)
    for i in range(n):
        for j in range(m + n + 1):
            cost[j] -= tab[i][j]
    for i in range(n):
        cost[m + i] = Fraction(0)
    while True:
        enter = None
        for j in range(m + n):
            if cost[j] < 0:
                enter = j
                break
        if enter is None:
            break
        leave = None
        best = None
        for i in range(n):
            if tab[i][enter] > 0:
                ratio = tab[i][-1] / tab[i][enter]
                if best is None or ratio < best or (
                        ratio == best and basis[i] < basis[leave]):
                    best = ratio
                    leave = i
        if leave is None:
            # unbounded phase-1 objective cannot happen; treat as infeasible
            return False
        piv = tab[leave][enter]
        tab[leave] = [x / piv for x in tab[leave]]
        for i in range(n):
            if i != leave and tab[i][enter] != 0:
                c = tab[i][enter]
                tab[i] = [x - c * y for x, y in zip(tab[i], tab[leave])]
        if cost[enter] != 0:
            c = cost[enter]
            cost = [x - c * y for x, y in zip(cost, tab[leave])]
        basis[leave] = enter
    return -cost[-1] == 0


def difference_vector_graph(rays, n):
    """If every ray is e_j - e_i, return the edge list [(i, j)]; else None.

    Coordinates are 0-based positions into vectors of length n.
    """
    edges = []
    for v in rays:
        pos = neg = None
        ok = True
        for idx, x in enumerate(v):
            if x == 1 and pos is None:
                pos = idx
            elif x == -1 and neg is None:
                neg = idx
            elif x != 0:
                ok = False
                break
        if not ok or pos is None or neg is None:
            return None
        if sum(v[idx] != 0 for idx in range(n)) != 2:
            return None
        edges.append((neg, pos))
    return edges


def digraph_has_cycle(edges, n):
    adj = [[] for _ in range(n)]
    for i, j in edges:
        adj[i].append(j)
    color = [0] * n
    for start in range(n):
        if color[start]:
            continue
        stack = [(start, iter(adj[start]))]
        color[start] = 1
        while stack:
            node, it = stack[-1]
            advanced = False
            for nxt in it:
                if color[nxt] == 1:
                    return True
                if color[nxt] == 0:
                    color[nxt] = 1
                    stack.append((nxt, iter(adj[nxt])))
                    advanced = True
                    break
            if not advanced:
                color[node] = 2
                stack.pop()
    return False


def digraph_reachable(edges, n, src, dst):
    adj = [[] for _ in range(n)]
    for i, j in edges:
        adj[i].append(j)
    seen = [False] * n
    stack = [src]
    seen[src] = True
    while stack:
        node = stack.pop()
        if node == dst:
            return True
        for nxt in adj[node]:
            if not seen[nxt]:
                seen[nxt] = True
                stack.append(nxt)
    return False
