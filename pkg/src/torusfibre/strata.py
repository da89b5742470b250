"""Fixed point strata of the flat moduli space for G = SU(N).

A stratum is indexed by a center element zeta_N^z and one conjugacy class
c_i per branch orbit with c_i^{l_i} central equal to zeta_N^z, all taken
modulo the simultaneous center action.  Conjugacy classes are recorded by
their sorted eigenvalue-angle multisets, which makes every operation here
exact rational combinatorics.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations_with_replacement, product

from .errors import (
    IncompatibleClass,
    InvariantViolation,
    NonIntegralRank,
    UnsupportedOrbitStructure,
)
from .orbit import total_genus, validate_orbit
from .spectrum import mu_value

__all__ = [
    "ConjClassSU",
    "StratumDescriptor",
    "classes_with_power_central",
    "enumerate_strata",
    "count_strata_burnside",
    "root_eigendata",
    "stratum_ranks",
]


@dataclass(frozen=True, order=True)
class ConjClassSU:
    """A conjugacy class of SU(N): sorted multiset of N eigenvalue angles in
    [0,1) summing to an integer."""

    N: int
    angles: tuple

    @classmethod
    def from_angles(cls, N, angles):
        norm = tuple(sorted(Fraction(a) % 1 for a in angles))
        if len(norm) != N:
            raise ValueError(f"need {N} angles, got {len(norm)}")
        if sum(norm) % 1 != 0:
            raise ValueError(f"angles {norm} do not sum to an integer")
        return cls(N, norm)

    def power(self, p):
        return ConjClassSU.from_angles(self.N, [a * p for a in self.angles])

    def translate(self, t):
        """Multiply by the center element zeta_N^t."""
        return ConjClassSU.from_angles(self.N, [a + Fraction(t, self.N) for a in self.angles])

    def is_central(self):
        return len(set(self.angles)) == 1

    def to_json(self):
        return [f"{a.numerator}/{a.denominator}" for a in self.angles]


@dataclass(frozen=True)
class StratumDescriptor:
    z: int
    classes: tuple  # of ConjClassSU, one per branch orbit
    z_delta_order: int
    c_delta: tuple  # of ConjClassSU, the classes c_i^{-k_i}
    ranks: tuple | None  # r_0 ... r_{m-1}, when all orbits are fixed points
    d_c: int | None

    def to_json(self):
        return {
            "z": self.z,
            "classes": [c.to_json() for c in self.classes],
            "Z_delta": self.z_delta_order,
            "c_delta": [c.to_json() for c in self.c_delta],
            "ranks": list(self.ranks) if self.ranks is not None else None,
            "d_c": self.d_c,
        }


def classes_with_power_central(N, l, z):
    """All SU(N) classes c with c^l = zeta_N^z as a central element.

    The eigenvalue angles of such a class lie in {(z/N + j)/l : 0 <= j < l};
    the SU(N) constraint keeps only multisets summing to an integer.
    """
    if l < 1:
        raise ValueError("power l must be positive")
    z %= N
    candidates = [Fraction(z + N * j, N * l) % 1 for j in range(l)]
    out = []
    for combo in combinations_with_replacement(candidates, N):
        if sum(combo) % 1 == 0:
            out.append(ConjClassSU(N, tuple(sorted(combo))))
    return out


def _act(z_prime, z, classes, m, orbit_sizes, N):
    """The center action: z' sends (z, c_1..c_n) to (z + m z', c_i * zeta^{z' m_i})."""
    return (
        (z + m * z_prime) % N,
        tuple(c.translate(z_prime * mi) for c, mi in zip(classes, orbit_sizes)),
    )


def _stabilizer_order(z, classes, m, orbit_sizes, N):
    count = 0
    for zp in range(N):
        if _act(zp, z, classes, m, orbit_sizes, N) == (z, classes):
            count += 1
    return count


def enumerate_strata(data, group, with_ranks=True):
    """All strata for the given branch data, one descriptor per center orbit.

    Orbit representatives are the lexicographically least tuples (z, classes),
    so output order is deterministic.  Ranks are attached when the rank
    formula applies (every branch orbit a fixed point), else left None.
    """
    validate_orbit(data)
    N = group.N
    m = data.m
    orbit_sizes = data.orbit_sizes()
    k_invs = [pow(n, -1, l) for l, n in data.branches]

    seen = set()
    reps = []
    for z in range(N):
        per_branch = [classes_with_power_central(N, l, z) for l, _ in data.branches]
        for combo in product(*per_branch):
            key = (z, combo)
            if key in seen:
                continue
            orbit = {_act(zp, z, combo, m, orbit_sizes, N) for zp in range(N)}
            seen |= orbit
            reps.append(min(orbit, key=lambda t: (t[0], tuple(c.angles for c in t[1]))))
    reps.sort(key=lambda t: (t[0], tuple(c.angles for c in t[1])))

    rankable = with_ranks and data.branches and all(l == m for l, _ in data.branches)
    out = []
    for z, classes in reps:
        c_delta = tuple(c.power(-k) for c, k in zip(classes, k_invs))
        desc = StratumDescriptor(
            z=z,
            classes=classes,
            z_delta_order=_stabilizer_order(z, classes, m, orbit_sizes, N),
            c_delta=c_delta,
            ranks=None,
            d_c=None,
        )
        if rankable:
            ranks, d_c = stratum_ranks(data, desc, group)
            desc = StratumDescriptor(
                z=desc.z,
                classes=desc.classes,
                z_delta_order=desc.z_delta_order,
                c_delta=desc.c_delta,
                ranks=ranks,
                d_c=d_c,
            )
        out.append(desc)
    return out


def count_strata_burnside(data, group):
    """Independent stratum count: average over the center of the number of
    fixed tuples (orbit counting lemma)."""
    N = group.N
    m = data.m
    orbit_sizes = data.orbit_sizes()
    total = 0
    for zp in range(N):
        if (m * zp) % N != 0:
            continue
        for z in range(N):
            fixed = 1
            for (l, _), mi in zip(data.branches, orbit_sizes):
                cnt = sum(
                    1
                    for c in classes_with_power_central(N, l, z)
                    if c.translate(zp * mi) == c
                )
                fixed *= cnt
                if fixed == 0:
                    break
            total += fixed
    if N == 0 or total % N != 0:
        raise InvariantViolation(f"orbit count {total}/{N} is not an integer")
    return total // N


def root_eigendata(c, m):
    """Counts r^i of ordered root values: r^i = number of ordered pairs of
    distinct eigenvalue slots whose angle difference is i/m mod 1.  Both
    signs of each root are counted, so the total is N^2 - N."""
    r = [0] * m
    for i, a in enumerate(c.angles):
        for j, b in enumerate(c.angles):
            if i == j:
                continue
            diff = (a - b) % 1
            scaled = diff * m
            if scaled.denominator != 1:
                raise IncompatibleClass(
                    f"root value angle {diff} is not a multiple of 1/{m}"
                )
            r[int(scaled) % m] += 1
    return r


def stratum_ranks(data, stratum, group):
    """Eigenspace ranks r_0 ... r_{m-1} of the stratum tangent action and the
    stratum dimension d_c = r_0.

    Only valid when every branch orbit is a single fixed point (l_s = m); the
    holomorphic fixed point count behind the formula has no extension to
    larger orbits here, so anything else is refused.
    """
    if not data.branches or any(l != data.m for l, _ in data.branches):
        raise UnsupportedOrbitStructure(
            "rank formula needs every branch orbit to be a fixed point (l = m)"
        )
    m = data.m
    g = total_genus(data)
    group_rank = group.rank
    dim_G = group.dim_G
    roots = [root_eigendata(c, m) for c in stratum.c_delta]
    ranks = []
    for i in range(m):
        acc = Fraction(dim_G * (g - 1))
        for (l, n), r_s in zip(data.branches, roots):
            acc += mu_value(m, n, i) * group_rank
            for j in range(m):
                acc += r_s[j] * mu_value(m, n, (i - j) % m)
        # On strata of reducible connections (central classes) the count is an
        # index and can go negative; only integrality is demanded here.
        val = acc / m
        if val.denominator != 1:
            raise NonIntegralRank(f"rank r_{i} = {val} is not an integer")
        ranks.append(int(val))
    if sum(ranks) != (g - 1) * dim_G:
        raise InvariantViolation(
            f"ranks sum to {sum(ranks)}, expected (g-1) dim G = {(g - 1) * dim_G}"
        )
    return tuple(ranks), ranks[0]
