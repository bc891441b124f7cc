"""Brute-force counting of (special) unitary groups over residue rings.

Matrices A with A.Lam.conj(A)' = Lam (and det A = 1 for the special count)
are enumerated row by row: a candidate k-th row must have the prescribed
Hermitian self-pairing Lam_kk, pair to zero against every previously chosen
row, and the determinant condition is checked on the final row.  Ring
elements are integer-encoded (x = a + m*b for a + b*eps, coordinates mod
m = p^N) and all filtering is vectorized; the recursion bottoms out in a
blocked broadcast over the last two rows, so the innermost work is pure
numpy.  A full Cartesian sweep over all q^((n+1)^2) matrices is available
as a cross-check mode for the smallest cases.

Work is metered in visited partial assignments (candidate rows examined,
broadcast cells swept).  Exceeding the budget raises BudgetExceeded, which
deliberately distinguishes "infeasible under this budget" from a zero count.
"""

from __future__ import annotations

import os
import time
from dataclasses import dataclass
from fractions import Fraction
from multiprocessing import Pool

import numpy as np

from .arith import is_prime
from .quadfield import FieldData, make_field
from .residue_ring import ResidueRing

DEFAULT_BUDGET = 10**9
# Hard cap on the size of the candidate row table, independent of the budget;
# beyond this the table itself does not fit comfortably in memory.
_MAX_ROW_TABLE = 3 * 10**7
_CHUNK_CELLS = 1 << 21


class BudgetExceeded(RuntimeError):
    """Enumeration refused: the node budget would be exceeded (not a zero count)."""


def default_budget() -> int:
    raw = os.environ.get("HMVOL_BUDGET")
    if raw:
        return int(float(raw))
    return DEFAULT_BUDGET


def lattice_diag(lattice: str, n: int) -> tuple[int, ...]:
    """Diagonal of the Hermitian form: (1,...,1,-1) for L, (1,...,1,-2) for M."""
    if lattice not in ("L", "M"):
        raise ValueError(f"lattice must be 'L' or 'M', got {lattice!r}")
    return (1,) * n + (-1 if lattice == "L" else -2,)


@dataclass
class CountReport:
    ring: ResidueRing
    lattice: str
    n: int
    group: str
    count: int
    elapsed: float
    nodes: int


class _Meter:
    def __init__(self, budget: int):
        self.budget = budget
        self.visited = 0

    def bump(self, k: int):
        self.visited += int(k)
        if self.visited > self.budget:
            raise BudgetExceeded(
                f"enumeration budget exceeded: {self.visited} > {self.budget} visited partial assignments")


class _Engine:
    """Vectorized ring arithmetic on integer-encoded elements mod p^N."""

    def __init__(self, m: int, t: int, nu: int, lam: tuple[int, ...], su: bool):
        self.m = m
        self.t = t % m
        self.nu = nu % m
        self.lam = tuple(l % m for l in lam)
        self.su = su
        self.w = len(lam)

    def decode(self, x):
        return x % self.m, x // self.m

    def encode(self, a, b):
        return a % self.m + self.m * (b % self.m)

    def mul_vec(self, x, y):
        m, t, nu = self.m, self.t, self.nu
        a1, b1 = x % m, x // m
        a2, b2 = y % m, y // m
        bb = b1 * b2
        return self.encode(a1 * a2 - nu * bb, a1 * b2 + b1 * a2 + t * bb)

    def selfnorm(self, rows):
        """Hermitian self-pairing sum(lam_i |v_i|^2), a scalar mod m."""
        m, t, nu = self.m, self.t, self.nu
        acc = np.zeros(rows.shape[0], dtype=np.int64)
        for i in range(self.w):
            a, b = rows[:, i] % m, rows[:, i] // m
            acc += self.lam[i] * (a * a + t * a * b + nu * b * b)
        return acc % m

    def pair_mask(self, U, V):
        """Boolean mask of h(u, v) == 0 with broadcasting: U (B, w) against V (L, w)
        gives (B, L); U (B, w) against a single row v gives (B,)."""
        m, t, nu = self.m, self.t, self.nu
        single = V.ndim == 1
        ha = 0
        hb = 0
        for i in range(self.w):
            au, bu = U[:, i] % m, U[:, i] // m
            if single:
                av, bv = int(V[i]) % m, int(V[i]) // m
            else:
                av, bv = V[:, i] % m, V[:, i] // m
                au, bu = au[:, None], bu[:, None]
                av, bv = av[None, :], bv[None, :]
            ca, cb = av + t * bv, -bv  # conjugate of v_i, unreduced
            bb = bu * cb
            ha = ha + self.lam[i] * (au * ca - nu * bb)
            hb = hb + self.lam[i] * (au * cb + bu * ca + t * bb)
        return (ha % m == 0) & (hb % m == 0)

    def det_stack(self, rows):
        """Determinant over a list of (B, k) row arrays, expansion along row 0."""
        k = rows[0].shape[-1]
        if k == 1:
            return rows[0][..., 0]
        acc = None
        for j in range(k):
            cols = [c for c in range(k) if c != j]
            minor = self.det_stack([r[..., cols] for r in rows[1:]])
            term = self.mul_vec(rows[0][..., j], minor)
            if acc is None:
                acc = term if j % 2 == 0 else self.encode(-(term % self.m), -(term // self.m))
            else:
                ta, tb = term % self.m, term // self.m
                aa, ab = acc % self.m, acc // self.m
                acc = self.encode(aa + ta, ab + tb) if j % 2 == 0 else self.encode(aa - ta, ab - tb)
        return acc

    def last_row_cofactors(self, chosen, Z):
        """Signed cofactors for expansion of det along the last row, vectorized
        over Z (B, w): cof[:, j] = (-1)^(w-1+j) * minor_j(chosen..., Z)."""
        B = Z.shape[0]
        stack = [np.broadcast_to(r[None, :], (B, self.w)) for r in chosen] + [Z]
        cols = np.arange(self.w)
        out = np.empty((B, self.w), dtype=np.int64)
        for j in range(self.w):
            keep = cols[cols != j]
            minor = self.det_stack([r[:, keep] for r in stack])
            if (self.w - 1 + j) % 2 == 1:
                minor = self.encode(-(minor % self.m), -(minor // self.m))
            out[:, j] = minor
        return out


def _norm_class(eng: _Engine, rows, norms, value: int):
    return rows[norms == value % eng.m]


def _filter_by_row(eng: _Engine, meter: _Meter, C, z):
    meter.bump(C.shape[0])
    return C[eng.pair_mask(C, z)]


def _count_last_two(eng: _Engine, meter: _Meter, chosen, Ca, Cb) -> int:
    na, nb = Ca.shape[0], Cb.shape[0]
    if na == 0 or nb == 0:
        return 0
    if meter.visited + na * nb > meter.budget:
        raise BudgetExceeded(
            f"enumeration budget exceeded: final sweep needs {na * nb} cells "
            f"on top of {meter.visited} visited (budget {meter.budget})")
    m = eng.m
    one = 1 % m
    block = max(1, _CHUNK_CELLS // max(1, nb))
    total = 0
    for lo in range(0, na, block):
        blk = Ca[lo:lo + block]
        meter.bump(blk.shape[0] * nb)
        mask = eng.pair_mask(blk, Cb)
        if eng.su:
            cof = eng.last_row_cofactors(chosen, blk)
            da = np.zeros((blk.shape[0], nb), dtype=np.int64)
            db = np.zeros_like(da)
            for i in range(eng.w):
                xa, xb = (cof[:, i] % m)[:, None], (cof[:, i] // m)[:, None]
                ya, yb = (Cb[:, i] % m)[None, :], (Cb[:, i] // m)[None, :]
                bb = xb * yb
                da += xa * ya - eng.nu * bb
                db += xa * yb + xb * ya + eng.t * bb
            mask &= (da % m == one) & (db % m == 0)
        total += int(mask.sum())
    return total


def _count_rec(eng: _Engine, meter: _Meter, chosen, cands) -> int:
    if len(cands) == 2:
        return _count_last_two(eng, meter, chosen, cands[0], cands[1])
    total = 0
    C0, rest = cands[0], cands[1:]
    for idx in range(C0.shape[0]):
        z = C0[idx]
        deeper = []
        dead = False
        for Cj in rest:
            Cf = _filter_by_row(eng, meter, Cj, z)
            if Cf.shape[0] == 0:
                dead = True
                break
            deeper.append(Cf)
        if dead:
            continue
        total += _count_rec(eng, meter, chosen + [z], deeper)
    return total


def _run_task(task):
    eng = _Engine(task["m"], task["t"], task["nu"], task["lam"], task["su"])
    meter = _Meter(task["budget"])
    count = _count_rec(eng, meter, [], task["cands"])
    return count, meter.visited


def _build_rows(eng: _Engine, meter: _Meter):
    q = eng.m * eng.m
    n_rows = q**eng.w
    if n_rows > _MAX_ROW_TABLE:
        raise BudgetExceeded(
            f"candidate row table of {n_rows} rows does not fit the enumeration budget")
    meter.bump(n_rows)
    idx = np.arange(n_rows, dtype=np.int64)
    rows = np.empty((n_rows, eng.w), dtype=np.int64)
    for j in range(eng.w):
        rows[:, j] = (idx // q**j) % q
    return rows


def count_group(lattice: str, n: int, ring: ResidueRing, group: str = "SU",
                mode: str = "backtrack", budget: int | None = None,
                jobs: int = 1) -> CountReport:
    """Exact order of U/SU(Lam, O_K/p^N O_K) for Lam = diag(1,...,1,-1) or (1,...,1,-2)."""
    if group not in ("U", "SU"):
        raise ValueError(f"group must be 'U' or 'SU', got {group!r}")
    if n < 1:
        raise ValueError("n must be >= 1")
    lam = lattice_diag(lattice, n)
    budget = default_budget() if budget is None else budget
    t0 = time.monotonic()
    eng = _Engine(ring.modulus, ring.trace_eps, ring.norm_eps, lam, su=(group == "SU"))
    meter = _Meter(budget)
    if mode == "cartesian":
        count = _count_cartesian(eng, meter)
    elif mode == "backtrack":
        rows = _build_rows(eng, meter)
        norms = eng.selfnorm(rows)
        cands = [_norm_class(eng, rows, norms, eng.lam[k]) for k in range(eng.w)]
        del rows, norms
        if jobs > 1 and cands[0].shape[0] >= 4 * jobs:
            chunks = np.array_split(cands[0], jobs * 4)
            share = (budget - meter.visited) // len(chunks) + 1
            tasks = [{"m": eng.m, "t": eng.t, "nu": eng.nu, "lam": lam, "su": eng.su,
                      "budget": share, "cands": [c] + cands[1:]} for c in chunks]
            with Pool(jobs) as pool:
                results = pool.map(_run_task, tasks)
            count = sum(c for c, _ in results)
            for _, v in results:
                meter.bump(v)
        else:
            count = _count_rec(eng, meter, [], cands)
    else:
        raise ValueError(f"unknown mode {mode!r}")
    return CountReport(ring=ring, lattice=lattice, n=n, group=group, count=count,
                       elapsed=time.monotonic() - t0, nodes=meter.visited)


def _count_cartesian(eng: _Engine, meter: _Meter) -> int:
    w, m = eng.w, eng.m
    q = m * m
    n_mats = q**(w * w)
    if meter.visited + n_mats > meter.budget:
        raise BudgetExceeded(
            f"cartesian sweep over {n_mats} matrices exceeds the budget {meter.budget}")
    one = 1 % m
    total = 0
    block = max(1, _CHUNK_CELLS // (w * w))
    for lo in range(0, n_mats, block):
        idx = np.arange(lo, min(lo + block, n_mats), dtype=np.int64)
        meter.bump(idx.shape[0])
        mats = [[(idx // q**(i * w + j)) % q for j in range(w)] for i in range(w)]
        rows = [np.stack(r, axis=1) for r in mats]
        ok = np.ones(idx.shape[0], dtype=bool)
        # Hermitian conditions on the upper triangle; the lower follows by symmetry.
        for i in range(w):
            for j in range(i, w):
                ha, hb = _pair_rows(eng, rows[i], rows[j])
                want_a = eng.lam[i] if i == j else 0
                ok &= (ha == want_a) & (hb == 0)
        if eng.su:
            det = eng.det_stack(rows)
            ok &= (det % m == one) & (det // m == 0)
        total += int(ok.sum())
    return total


def _pair_rows(eng: _Engine, U, V):
    """Componentwise pairing of matched row arrays (both (B, w)); returns (ha, hb) mod m."""
    m, t, nu = eng.m, eng.t, eng.nu
    ha = 0
    hb = 0
    for i in range(eng.w):
        au, bu = U[:, i] % m, U[:, i] // m
        av, bv = V[:, i] % m, V[:, i] // m
        ca, cb = av + t * bv, -bv
        bb = bu * cb
        ha = ha + eng.lam[i] * (au * ca - nu * bb)
        hb = hb + eng.lam[i] * (au * cb + bu * ca + t * bb)
    return ha % m, hb % m


_KERNEL_LEVEL = {"L": 2, "M": 4}


def count_kernel(lattice: str, n: int, level: int | None = None,
                 field: FieldData | None = None, budget: int | None = None) -> int:
    """Solutions B of the linearized reduction-kernel system {-B.Lam = Lam.conj(B)',
    Tr B = 0} over O/2O (L) or O/4O (M), by enumeration of the free entries with
    full verification.  For 2-ramified fields this is 2^(n^2+3n) for L and
    2^(2n^2+5n) for M."""
    if n < 1:
        raise ValueError("n must be >= 1")
    level = _KERNEL_LEVEL[lattice] if level is None else level
    if level not in (2, 4):
        raise ValueError("kernel level is the modulus 2 (for L) or 4 (for M)")
    field = make_field(5) if field is None else field
    budget = default_budget() if budget is None else budget
    lam = lattice_diag(lattice, n)
    ring = ResidueRing(field, 2, level.bit_length() - 1)
    eng = _Engine(ring.modulus, ring.trace_eps, ring.norm_eps, lam, su=False)
    m = eng.m
    q = m * m
    w = n + 1
    # Free entries: the upper triangle and the first n diagonal entries; the
    # lower triangle is forced by the pairing equations (unit lam_i on the
    # rows doing the forcing), the last diagonal entry by the trace.
    free = [(i, i) for i in range(n)] + [(i, j) for i in range(w) for j in range(i + 1, w)]
    n_free = len(free)
    if q**n_free > budget:
        raise BudgetExceeded(f"kernel enumeration over {q**n_free} assignments exceeds the budget")
    idx = np.arange(q**n_free, dtype=np.int64)
    entries = {}
    for s, pos in enumerate(free):
        entries[pos] = (idx // q**s) % q

    def conj(x):
        return eng.encode(x % m + eng.t * (x // m), -(x // m))

    def neg(x):
        return eng.encode(-(x % m), -(x // m))

    def add(x, y):
        return eng.encode(x % m + y % m, x // m + y // m)

    def smul(c, x):
        return eng.encode(c * (x % m), c * (x // m))

    for i in range(w):
        for j in range(i + 1, w):
            # the (i, j) equation forces b_ji = -conj(lam_j b_ij), using lam_i = 1 for i < j
            entries[(j, i)] = neg(conj(smul(lam[j], entries[(i, j)])))
    acc = entries[(0, 0)]
    for i in range(1, n):
        acc = add(acc, entries[(i, i)])
    entries[(w - 1, w - 1)] = neg(acc)
    ok = np.ones(idx.shape[0], dtype=bool)
    # Verify the full system -B.Lam = Lam.conj(B)' and Tr B = 0.
    for i in range(w):
        for j in range(w):
            lhs = smul(lam[j], entries[(i, j)])
            rhs = smul(lam[i], conj(entries[(j, i)]))
            s = add(lhs, rhs)
            ok &= (s % m == 0) & (s // m == 0)
    tr = entries[(0, 0)]
    for i in range(1, w):
        tr = add(tr, entries[(i, i)])
    ok &= (tr % m == 0) & (tr // m == 0)
    return int(ok.sum())


def oracle_tau_p(lattice: str, n: int, field: FieldData, p: int,
                 budget: int | None = None, jobs: int = 1) -> Fraction:
    """Local density from raw counts: #SU(O/pO)/p^dim for odd p; at p = 2 the
    kernel-corrected count #SU(O/2^3)/(2^(2 dim) ker) for L and
    #SU(O/2^5)/(2^(3 dim) ker) for M, with the kernel of the last certified
    reduction counted over O/2 resp. O/4."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    dim = (n + 1) ** 2 - 1
    if p != 2:
        rep = count_group(lattice, n, ResidueRing(field, p, 1), "SU", budget=budget, jobs=jobs)
        return Fraction(rep.count, p**dim)
    if lattice == "L":
        rep = count_group(lattice, n, ResidueRing(field, 2, 3), "SU", budget=budget, jobs=jobs)
        ker = count_kernel("L", n, level=2, field=field, budget=budget)
        return Fraction(rep.count, 2**(2 * dim) * ker)
    rep = count_group(lattice, n, ResidueRing(field, 2, 5), "SU", budget=budget, jobs=jobs)
    ker = count_kernel("M", n, level=4, field=field, budget=budget)
    return Fraction(rep.count, 2**(3 * dim) * ker)


def stabilization_check(lattice: str, n: int, field: FieldData, p: int,
                        level: int = 1, budget: int | None = None, jobs: int = 1) -> bool:
    """True iff #U(O/p^(level+1)) = p^((n+1)^2) #U(O/p^level), the Hensel-driven
    stabilization that turns the local density into a finite computation."""
    if level < 1:
        raise ValueError("level must be >= 1")
    lo = count_group(lattice, n, ResidueRing(field, p, level), "U", budget=budget, jobs=jobs)
    hi = count_group(lattice, n, ResidueRing(field, p, level + 1), "U", budget=budget, jobs=jobs)
    return hi.count == p**((n + 1) ** 2) * lo.count
