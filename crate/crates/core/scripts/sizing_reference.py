"""Re-evaluates the design sizing formulas at 50-digit precision.

Writes tests/data/sizing_reference.json, which the acceptance suite compares
against the sizes of designs actually built by the crate.

    python3 scripts/sizing_reference.py > tests/data/sizing_reference.json
"""

import json

import mpmath as mp

mp.mp.dps = 50
E = mp.e

STRONGLY_LIST_DISJUNCT = [
    # (n, k, delta)
    (12, 2, 0.5),
    (12, 2, 1.0),
    (20, 3, 0.5),
    (50, 5, 0.2),
    (100, 4, 0.25),
    (100, 10, 0.1),
    (256, 8, 0.5),
    (500, 5, 0.3),
    (1000, 10, 0.1),
    (64, 1, 0.75),
]

STRONGLY_LIST_UNION_FREE = [
    # (n, k, delta, alpha)
    (12, 2, 0.5, 0.5),
    (12, 2, 0.25, 0.5),
    (20, 3, 0.5, 0.5),
    (40, 4, 0.25, 0.5),
    (64, 2, 0.5, 0.25),
    (100, 5, 0.2, 0.5),
    (128, 3, 1.0, 0.75),
    (200, 6, 0.5, 0.4),
    (500, 10, 0.1, 0.5),
    (30, 1, 0.5, 0.5),
]


def ceil_checked(x):
    c = mp.ceil(x)
    # Flag values too close to an integer for a double-precision ceiling.
    assert abs(x - mp.nint(x)) > mp.mpf("1e-9") or x == mp.nint(x), x
    return int(c)


def list_size(delta, k):
    return max(1, int(mp.ceil(mp.mpf(delta) * k - mp.mpf("1e-9"))))


def sld(n, k, delta):
    m = ceil_checked(20 * k / mp.mpf(delta) * mp.log(n * E**2 / k))
    return {"kind": "strongly_list_disjunct", "n": n, "k": k, "delta": delta, "m": m}


def sluf(n, k, delta, alpha):
    ell = list_size(delta, k)
    a = mp.mpf(alpha)
    q = ceil_checked((k + ell) * (E / a) ** 2)
    m_prime = ceil_checked(2 / a * (mp.mpf(k) / ell + 1) * (mp.log(mp.mpf(n) / (k + ell)) + E) / mp.log(E / a))
    return {
        "kind": "strongly_list_union_free",
        "n": n,
        "k": k,
        "delta": delta,
        "alpha": alpha,
        "ell": ell,
        "q": q,
        "m_prime": m_prime,
        "m": m_prime * q,
        "d": m_prime,
    }


def main():
    rows = [sld(*t) for t in STRONGLY_LIST_DISJUNCT] + [sluf(*t) for t in STRONGLY_LIST_UNION_FREE]
    print(json.dumps(rows, indent=1))


if __name__ == "__main__":
    main()
