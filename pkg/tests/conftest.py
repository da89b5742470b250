import random
from math import gcd

import pytest

from torusfibre.orbit import OrbitData, total_genus, validate_orbit


def random_orbit_suite(seed, count, m_max=12, g_max=30, fixed_points_only=False):
    """Deterministic list of valid OrbitData.  Branch rotations come in
    (n, l-n) pairs, which keeps the realizability sum at 0 mod m by
    construction; everything else is rejection sampling."""
    rng = random.Random(seed)
    out = []
    guard = 0
    while len(out) < count:
        guard += 1
        if guard > 200 * count:
            raise RuntimeError("suite generator starved; loosen the bounds")
        m = rng.randint(2, m_max)
        gq = rng.randint(0, 3)
        branches = []
        for _ in range(rng.randint(0, 3)):
            if fixed_points_only:
                l = m
            else:
                l = rng.choice([l for l in range(2, m + 1) if m % l == 0])
            units = [n for n in range(1, l) if gcd(n, l) == 1]
            n = rng.choice(units)
            if l > 2:
                branches += [(l, n), (l, l - n)]
            else:
                branches += [(l, 1), (l, 1)]
        if fixed_points_only and not branches:
            continue
        data = OrbitData(m, gq, branches)
        if not validate_orbit(data, raise_on_failure=False)["valid"]:
            continue
        if total_genus(data) > g_max:
            continue
        out.append(data)
    return out


@pytest.fixture(scope="session")
def orbit_suite():
    return random_orbit_suite(seed=20240817, count=200)


HYPER = OrbitData(2, 0, [(2, 1)] * 6)
Z4 = OrbitData(4, 0, [(4, 1)] * 4)
Z3 = OrbitData(3, 0, [(3, 1), (3, 1), (3, 2), (3, 2)])
M5 = OrbitData(5, 0, [(5, 1), (5, 1), (5, 2)])
FREE2 = OrbitData(2, 2, [])
FREE3 = OrbitData(3, 2, [])
