"""Shannon entropy utilities (bits) and the constants behind the bipartite bound.

Random-joint checks run in float64.  The constants ``D_{n,eps}``, the Kahn
maximum and the pipeline built on them run in mpmath at 50 digits, because
the gap between the pipeline constant and log2(2^(d+1) - 1) falls
below 1e-10 already at d = 6.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass
from typing import Optional, Sequence

import mpmath
import numpy as np

from .errors import ContractError, DomainError

DPS = 50
TOL = 1e-12


def _as_dist(p):
    p = np.asarray(p, dtype=float)
    if p.ndim != 1 or p.size == 0:
        raise DomainError("a distribution is a non-empty probability vector")
    if np.any(p < -TOL) or np.any(p > 1 + TOL) or abs(p.sum() - 1) > TOL:
        raise DomainError("probabilities must lie in [0, 1] and sum to 1")
    return np.clip(p, 0.0, 1.0)


def entropy(p) -> float:
    """H(p) = -sum p_i log2 p_i with 0 log 0 = 0."""
    p = _as_dist(p)
    nz = p[p > 0]
    return float(-(nz * np.log2(nz)).sum())


def _raw_entropy(p):
    nz = p[p > 0]
    return float(-(nz * np.log2(nz)).sum())


class JointDistribution:
    """Probability table over a tuple of finite alphabets, one named axis each."""

    def __init__(self, table, axes: Optional[Sequence[str]] = None):
        table = np.asarray(table, dtype=float)
        if np.any(table < -TOL) or abs(table.sum() - 1) > TOL:
            raise DomainError("joint table must be non-negative and sum to 1")
        self.table = np.clip(table, 0.0, None)
        if axes is None:
            axes = [f"X{i}" for i in range(table.ndim)]
        axes = tuple(axes)
        if len(axes) != table.ndim or len(set(axes)) != len(axes):
            raise DomainError("axis names must be distinct, one per table dimension")
        self.axes = axes

    @classmethod
    def random(cls, shape, rng=None, axes=None, sparsity=0.0):
        """Dirichlet-like random joint; ``sparsity`` zeroes a fraction of cells."""
        rng = np.random.default_rng(rng)
        t = rng.exponential(size=shape)
        if sparsity:
            t[rng.random(shape) < sparsity] = 0.0
            if t.sum() == 0:
                t.flat[0] = 1.0
        return cls(t / t.sum(), axes)

    def _index(self, names):
        if isinstance(names, (str, int)):
            names = [names]
        out = []
        for a in names:
            if isinstance(a, int):
                if not 0 <= a < len(self.axes):
                    raise DomainError(f"axis {a} out of range")
                out.append(a)
            elif a in self.axes:
                out.append(self.axes.index(a))
            else:
                raise DomainError(f"unknown axis {a!r}")
        if len(set(out)) != len(out):
            raise DomainError("repeated axis")
        return out

    def marginal(self, names) -> np.ndarray:
        """Marginal table over ``names`` in the given order."""
        keep = self._index(names)
        drop = tuple(i for i in range(self.table.ndim) if i not in keep)
        m = self.table.sum(axis=drop) if drop else self.table
        remaining = [i for i in range(self.table.ndim) if i in keep]
        return np.transpose(m, [remaining.index(i) for i in keep])

    def entropy(self, names=None) -> float:
        """Joint entropy H[X_S] of the axes in ``names`` (all axes by default)."""
        if names is None:
            names = self.axes
        if isinstance(names, (str, int)):
            names = [names]
        if len(names) == 0:
            return 0.0
        return _raw_entropy(self.marginal(names).ravel())


def conditional_entropy(joint: JointDistribution, target, given) -> float:
    """H[X|Y] = sum_y P(Y=y) H[X | Y=y] (the non-negative mixture form)."""
    t = joint._index(target)
    g = joint._index(given)
    if set(t) & set(g):
        raise DomainError("target and conditioning axes overlap")
    if not g:
        return joint.entropy(t)
    m = joint.marginal(g + t)
    m = m.reshape(int(np.prod(m.shape[:len(g)])), -1)
    total = 0.0
    for row in m:
        py = row.sum()
        if py > 0:
            total += py * _raw_entropy(row / py)
    return total


def check_chain_rule(joint: JointDistribution, x=None, y=None) -> float:
    """|H[(X,Y)] - H[X] - H[Y|X]|; defaults to the first axis vs the rest."""
    if x is None:
        x = [0]
    if y is None:
        xs = joint._index(x)
        y = [i for i in range(len(joint.axes)) if i not in xs]
    xs, ys = joint._index(x), joint._index(y)
    return abs(joint.entropy(xs + ys) - joint.entropy(xs) - conditional_entropy(joint, ys, xs))


def check_shearer(joint: JointDistribution, covers, k: int) -> float:
    """sum_i H[X_{S_i}] - k H[X]; requires every axis to lie in at least k covers."""
    covers = [joint._index(s) for s in covers]
    for a in range(len(joint.axes)):
        hits = sum(a in s for s in covers)
        if hits < k:
            raise ContractError(f"axis {joint.axes[a]!r} covered {hits} < {k} times")
    return sum(joint.entropy(s) for s in covers) - k * joint.entropy()


def check_subadditivity(joint: JointDistribution) -> float:
    """sum_i H[X_i] - H[X]."""
    return check_shearer(joint, [[i] for i in range(len(joint.axes))], 1)


def check_data_processing(joint: JointDistribution, f, x=0, z=1) -> float:
    """H[Z|Y] - H[Z|X] for Y = f(X); non-negative up to rounding."""
    xz = joint.marginal([x, z])
    images = [f(v) for v in range(xz.shape[0])]
    labels = sorted(set(images))
    yz = np.zeros((len(labels), xz.shape[1]))
    for v, img in enumerate(images):
        yz[labels.index(img)] += xz[v]
    h_zx = conditional_entropy(JointDistribution(xz, ("X", "Z")), "Z", "X")
    h_zy = conditional_entropy(JointDistribution(yz, ("Y", "Z")), "Z", "Y")
    return h_zy - h_zx


# --- high-precision constants -------------------------------------------------

def _h_boundary(q, n):
    """Entropy of (q, (1-q)/(n-1), ..., (1-q)/(n-1)) in bits."""
    q = mpmath.mpf(q)
    rest = 1 - q
    h = mpmath.mpf(0)
    if q > 0:
        h -= q * mpmath.log(q, 2)
    if rest > 0:
        h -= rest * mpmath.log(rest / (n - 1), 2)
    return h


def d_eps_branches(n: int, eps):
    """The two constrained maxima (q1 >= 1/n + eps/2, q2 <= 1/n - eps/2); None if infeasible.

    Both constraints exclude the uniform point, so by concavity each maximum
    sits on the constraint boundary with the remaining mass spread evenly.
    """
    if n < 2:
        raise DomainError(f"n must be at least 2, got {n}")
    with mpmath.workdps(DPS):
        eps = mpmath.mpf(eps)
        if not eps > 0:
            raise DomainError(f"eps must be positive, got {eps}")
        hi = mpmath.mpf(1) / n + eps / 2
        lo = mpmath.mpf(1) / n - eps / 2
        upper = _h_boundary(hi, n) if hi <= 1 else None
        lower = _h_boundary(lo, n) if lo >= 0 else None
        return upper, lower


def d_eps_constant(n: int, eps) -> mpmath.mpf:
    """Largest entropy of an n-outcome law whose first two masses differ by >= eps."""
    upper, lower = d_eps_branches(n, eps)
    vals = [v for v in (upper, lower) if v is not None]
    if not vals:
        raise DomainError(f"no {n}-outcome distribution has p1 - p2 >= {eps}")
    return max(vals)


def _binary_entropy(p):
    h = mpmath.mpf(0)
    if p > 0:
        h -= p * mpmath.log(p, 2)
    if p < 1:
        h -= (1 - p) * mpmath.log(1 - p, 2)
    return h


def kahn_objective(p, d, c):
    """f(p) = H(p, 1-p) + (1-p) c + p d."""
    return _binary_entropy(p) + (1 - p) * c + p * d


def kahn_max(d: int, c=None, width=1e-12):
    """Maximise f(p) over [0, 1] by ternary search; returns ``(p_star, value)``.

    ``c`` defaults to log2(2^d - 1), where the maximum is log2(2^(d+1) - 1).
    """
    if d < 1:
        raise DomainError(f"d must be positive, got {d}")
    with mpmath.workdps(DPS):
        c = mpmath.log(2 ** d - 1, 2) if c is None else mpmath.mpf(c)
        lo, hi = mpmath.mpf(0), mpmath.mpf(1)
        while hi - lo > width:
            m1 = lo + (hi - lo) / 3
            m2 = hi - (hi - lo) / 3
            if kahn_objective(m1, d, c) < kahn_objective(m2, d, c):
                lo = m1
            else:
                hi = m2
        p = (lo + hi) / 2
        return p, kahn_objective(p, d, c)


def kahn_closed_form(d: int, c=None):
    """Stationary point of f: p* = 2^d / (2^d + 2^c), value log2(2^c + 2^d)."""
    with mpmath.workdps(DPS):
        c = mpmath.log(2 ** d - 1, 2) if c is None else mpmath.mpf(c)
        p = mpmath.power(2, d) / (mpmath.power(2, d) + mpmath.power(2, c))
        return p, mpmath.log(mpmath.power(2, c) + mpmath.power(2, d), 2)


@dataclass
class BoundReport:
    d: int
    D1: mpmath.mpf
    D2: mpmath.mpf
    D_uniq: mpmath.mpf
    p_star: mpmath.mpf
    kahn_value: mpmath.mpf

    @property
    def d1_gap(self):
        with mpmath.workdps(DPS):
            return mpmath.log(2 ** self.d - 1, 2) - self.D1

    @property
    def d2_gap(self):
        with mpmath.workdps(DPS):
            return mpmath.log(2 ** (self.d + 1) - 1, 2) - self.D2

    @property
    def base(self):
        """The bound's base 2^D2, i.e. i(G) <= base^(n/2d)."""
        with mpmath.workdps(DPS):
            return mpmath.power(2, self.D2)

    def invariant_failures(self) -> list:
        bad = []
        if not self.d1_gap > 0:
            bad.append("D1 >= log2(2^d - 1)")
        if not self.d2_gap > 0:
            bad.append("D2 >= log2(2^(d+1) - 1)")
        if not self.D_uniq < 1:
            bad.append("D_uniq >= 1")
        if not 0 < self.p_star < 1:
            bad.append("p_star outside (0, 1)")
        return bad

    def to_dict(self):
        return {k: (v if k == "d" else float(v)) for k, v in asdict(self).items()}


def theorem5_constants(d: int) -> BoundReport:
    """D1 = D_{2^d-1, 2^-3d}; D2 = max f with c = D1; D_uniq = sqrt(2^D2 / (2^(d+1)-1))."""
    if d == 1:
        raise DomainError("d = 1 gives a one-outcome entropy bound; the d = 1 class is only K_{1,1} copies")
    if not 2 <= d <= 10:
        raise DomainError(f"pipeline supports 2 <= d <= 10, got {d}")
    with mpmath.workdps(DPS):
        d1 = d_eps_constant(2 ** d - 1, mpmath.power(2, -3 * d))
        p_star, d2 = kahn_max(d, c=d1)
        _, closed = kahn_closed_form(d, c=d1)
        if abs(d2 - closed) > mpmath.mpf("1e-20"):
            raise ArithmeticError(f"ternary search {d2} disagrees with closed form {closed}")
        d_uniq = mpmath.sqrt(mpmath.power(2, d2) / (2 ** (d + 1) - 1))
        _, kahn_value = kahn_max(d)
        report = BoundReport(d, d1, d2, d_uniq, p_star, kahn_value)
    return report
