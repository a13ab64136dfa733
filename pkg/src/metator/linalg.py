"""Linear algebra over Q(zeta_N).

Two solvers live here.  ``MonomialSystem`` handles equations of the form
x_a = zeta^k x_b (every equivariance system in the package has this shape)
with a union-find carrying exponents.  ``nullspace`` is plain Gaussian
elimination on CycNumber matrices and is used to cross-check the first on
small instances.
"""

from __future__ import annotations


class MonomialSystem:
    """Solve x_a = zeta_N^k * x_b over a finite set of unknowns."""

    def __init__(self, size, N):
        self.size = size
        self.N = N
        self.parent = list(range(size))
        self.pot = [0] * size  # x_a = zeta^pot[a] * x_parent[a]
        self.dead = set()
        self.relations = []

    def find(self, a):
        path = []
        while self.parent[a] != a:
            path.append(a)
            a = self.parent[a]
        root = a
        # compress, accumulating exponents from the top down
        acc = 0
        for node in reversed(path):
            acc = (acc + self.pot[node]) % self.N
            self.pot[node] = acc
            self.parent[node] = root
        return root

    def relate(self, a, b, k):
        """Impose x_a = zeta^k x_b."""
        k %= self.N
        self.relations.append((a, b, k))
        ra, rb = self.find(a), self.find(b)
        pa = self.pot[a] if a != ra else 0
        pb = self.pot[b] if b != rb else 0
        if ra == rb:
            if (pa - k - pb) % self.N:
                self.dead.add(ra)
            return
        # x_ra = zeta^(k + pb - pa) x_rb
        self.parent[ra] = rb
        self.pot[ra] = (k + pb - pa) % self.N
        if ra in self.dead:
            self.dead.discard(ra)
            self.dead.add(rb)

    def kill(self, a):
        """Impose x_a = 0."""
        self.relations.append((a, None, None))
        self.dead.add(self.find(a))

    def _exp(self, a):
        r = self.find(a)
        return 0 if a == r else self.pot[a]

    def components(self):
        comps = {}
        for a in range(self.size):
            comps.setdefault(self.find(a), []).append(a)
        return comps

    def basis(self):
        """Solution basis as a list of {index: exponent} (value zeta^exponent)."""
        out = []
        for root, members in sorted(self.components().items()):
            if root in self.dead:
                continue
            out.append({a: self._exp(a) for a in members})
        return out

    def dimension(self):
        return len(self.basis())

    def matrix(self, field):
        """The relations as rows of a CycNumber matrix (for cross-checks)."""
        rows = []
        zero = field.zero()
        for a, b, k in self.relations:
            row = [zero] * self.size
            if b is None:
                row[a] = field.one()
            elif a == b:
                row[a] = field.one() - field.zeta_power(k)
            else:
                row[a] = field.one()
                row[b] = -field.zeta_power(k)
            rows.append(row)
        return rows


def rref(rows, ncols, field):
    """Reduced row echelon form; returns (rows, pivot columns)."""
    A = [list(r) for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(A)) if not A[i][c].is_zero()), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        inv = A[r][c].inverse()
        A[r] = [x * inv for x in A[r]]
        for i in range(len(A)):
            if i != r and not A[i][c].is_zero():
                f = A[i][c]
                A[i] = [x - f * y for x, y in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
        if r == len(A):
            break
    return A[:r], pivots


def nullspace(rows, ncols, field):
    """Basis of {x : rows * x = 0} as a list of CycNumber vectors."""
    R, pivots = rref(rows, ncols, field) if rows else ([], [])
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [field.zero() for _ in range(ncols)]
        v[f] = field.one()
        for row, pc in zip(R, pivots):
            v[pc] = -row[f]
        basis.append(v)
    return basis


def rank(rows, ncols, field):
    if not rows:
        return 0
    return len(rref(rows, ncols, field)[1])


def proportional(u, v):
    """Return c with u = c*v if it exists (v nonzero), else None."""
    c = None
    for a, b in zip(u, v):
        if b.is_zero():
            if not a.is_zero():
                return None
            continue
        r = a / b
        if c is None:
            c = r
        elif r != c:
            return None
    return c
