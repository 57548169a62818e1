#!/usr/bin/env python3
"""Independent count of the (5,5)-grids formed by the five-point lines of H4.

Arithmetic is exact in Z[phi], with elements stored as integer pairs (a, b)
meaning a + b*phi. Nothing here is shared with the Rust implementation.

Usage: python3 scripts/grid_oracle.py [--json]
"""

import itertools
import json
import sys

# 0, +-1, +-phi (code 2), +-phi^2 (code 3)
CODES = """
1 0 0 0|0 1 0 0|0 0 1 0|0 0 0 1|1 1 1 1|1 1 1 -1|1 1 -1 1|1 1 -1 -1|1 -1 1 1|1 -1 1 -1
1 -1 -1 1|1 -1 -1 -1|0 2 3 1|0 2 3 -1|0 2 -3 1|0 2 -3 -1|0 3 1 2|0 3 1 -2|0 3 -1 2|0 3 -1 -2
0 1 2 3|0 1 2 -3|0 1 -2 3|0 1 -2 -3|2 0 1 3|2 0 1 -3|2 0 -1 3|2 0 -1 -3|3 0 2 1|3 0 2 -1
3 0 -2 1|3 0 -2 -1|1 0 3 2|1 0 3 -2|1 0 -3 2|1 0 -3 -2|2 3 0 1|2 3 0 -1|2 -3 0 1|2 -3 0 -1
3 1 0 2|3 1 0 -2|3 -1 0 2|3 -1 0 -2|1 2 0 3|1 2 0 -3|1 -2 0 3|1 -2 0 -3|2 1 3 0|2 1 -3 0
2 -1 3 0|2 -1 -3 0|3 2 1 0|3 2 -1 0|3 -2 1 0|3 -2 -1 0|1 3 2 0|1 3 -2 0|1 -3 2 0|1 -3 -2 0
"""


def decode(code):
    s = 1 if code > 0 else -1
    return {0: (0, 0), 1: (s, 0), 2: (0, s), 3: (s, s)}[abs(code)]


def mul(x, y):
    a, b = x
    c, d = y
    return (a * c + b * d, a * d + b * c + b * d)


def add(x, y):
    return (x[0] + y[0], x[1] + y[1])


def sub(x, y):
    return (x[0] - y[0], x[1] - y[1])


def is_zero(x):
    return x == (0, 0)


def det3(m):
    t1 = mul(m[0][0], sub(mul(m[1][1], m[2][2]), mul(m[1][2], m[2][1])))
    t2 = mul(m[0][1], sub(mul(m[1][0], m[2][2]), mul(m[1][2], m[2][0])))
    t3 = mul(m[0][2], sub(mul(m[1][0], m[2][1]), mul(m[1][1], m[2][0])))
    return add(sub(t1, t2), t3)


def collinear(p, q, r):
    for cols in itertools.combinations(range(4), 3):
        if not is_zero(det3([[v[c] for c in cols] for v in (p, q, r)])):
            return False
    return True


def pluecker(p, q):
    return [sub(mul(p[i], q[j]), mul(p[j], q[i])) for i, j in ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))]


def pairing(p, q):
    pos = [mul(p[0], q[5]), mul(p[2], q[3]), mul(p[5], q[0]), mul(p[3], q[2])]
    neg = [mul(p[1], q[4]), mul(p[4], q[1])]
    total = (0, 0)
    for t in pos:
        total = add(total, t)
    for t in neg:
        total = sub(total, t)
    return total


def main():
    rows = [r for r in CODES.replace("\n", "|").split("|") if r.strip()]
    pts = [[decode(int(c)) for c in r.split()] for r in rows]
    assert len(pts) == 60

    lines = set()
    for i, j in itertools.combinations(range(60), 2):
        members = tuple(k + 1 for k in range(60) if k in (i, j) or collinear(pts[i], pts[j], pts[k]))
        lines.add(members)
    five = sorted(l for l in lines if len(l) == 5)
    assert max(len(l) for l in lines) == 5
    assert len(five) == 72

    plk = [pluecker(pts[l[0] - 1], pts[l[1] - 1]) for l in five]
    sets = [set(l) for l in five]
    n = len(five)
    skew = [{b for b in range(n) if b != a and not is_zero(pairing(plk[a], plk[b]))} for a in range(n)]
    share = [{b for b in range(n) if b != a and sets[a] & sets[b]} for a in range(n)]

    grids = set()

    def extend(chosen, cands, cross):
        if len(cross) < 5:
            return
        if len(chosen) == 5:
            for m in itertools.combinations(sorted(cross), 5):
                if all(b in skew[a] for a, b in itertools.combinations(m, 2)):
                    grids.add(frozenset([frozenset(chosen), frozenset(m)]))
            return
        for c in sorted(cands):
            if chosen and c < chosen[-1]:
                continue
            extend(chosen + [c], cands & skew[c], cross & share[c])

    extend([], set(range(n)), set(range(n)))

    def label(g):
        fams = sorted(sorted(x + 1 for x in f) for f in g)
        return {"l": fams[0], "m": fams[1]}

    out = sorted((label(g) for g in grids), key=lambda d: (d["l"], d["m"]))
    if "--json" in sys.argv:
        json.dump({"count": len(out), "grids": out}, sys.stdout)
        print()
    else:
        print(len(out))


if __name__ == "__main__":
    main()
