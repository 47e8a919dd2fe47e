#!/usr/bin/env python3
"""Regenerate the group corpus under crates/core/corpus/.

Matrix groups are converted to their natural action on the nonzero vectors
of F_q^2 (points sorted lexicographically by coordinates).  The spin covers
2.A7 and 2.A8 come from tools/spin_cover.py, whose JSON output is passed as
the single argument.

Usage: python3 tools/build_corpus.py /tmp/covers.json
"""

import itertools
import json
import os
import sys

OUT = os.path.join(os.path.dirname(__file__), "..", "crates", "core", "corpus")


def to_cycles(perm):
    seen = set()
    out = []
    for s in range(len(perm)):
        if s in seen or perm[s] == s:
            continue
        c = [s]
        seen.add(s)
        j = perm[s]
        while j != s:
            c.append(j)
            seen.add(j)
            j = perm[j]
        out.append(c)
    return out


class PrimeField:
    def __init__(self, p):
        self.p = p
        self.elements = list(range(p))

    def add(self, a, b):
        return (a + b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def neg(self, a):
        return (-a) % self.p


class F9:
    """F_3[i] with i^2 = -1; elements are pairs (a, b) meaning a + b i."""

    def __init__(self):
        self.p = 3
        self.elements = [(a, b) for a in range(3) for b in range(3)]

    def add(self, x, y):
        return ((x[0] + y[0]) % 3, (x[1] + y[1]) % 3)

    def mul(self, x, y):
        return ((x[0] * y[0] - x[1] * y[1]) % 3, (x[0] * y[1] + x[1] * y[0]) % 3)

    def neg(self, x):
        return ((-x[0]) % 3, (-x[1]) % 3)


def zero(field):
    return field.elements[0]


def matrix_action(field, mats):
    z = zero(field)
    points = [v for v in itertools.product(field.elements, repeat=2) if v != (z, z)]
    index = {v: i for i, v in enumerate(points)}
    perms = []
    for m in mats:
        perm = []
        for (x, y) in points:
            # row vector times matrix
            nx = field.add(field.mul(x, m[0][0]), field.mul(y, m[1][0]))
            ny = field.add(field.mul(x, m[0][1]), field.mul(y, m[1][1]))
            perm.append(index[(nx, ny)])
        perms.append(perm)
    return len(points), perms


def entry(name, degree, gens, order, center, tags, notes, normal=None):
    e = {
        "name": name,
        "degree": degree,
        "generators": [to_cycles(g) if isinstance(g[0], int) else g for g in gens],
        "expected": {"order": order, "center_order": center},
        "tags": tags,
        "notes": notes,
    }
    if normal:
        e["normal_subgroups"] = normal
    return e


def cyc(n, cycles):
    p = list(range(n))
    for c in cycles:
        for k in range(len(c)):
            p[c[k]] = c[(k + 1) % len(c)]
    return p


def quaternion_regular():
    # Q8 = {+-1, +-i, +-j, +-k} acting on itself by right multiplication.
    names = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"]
    table = {
        ("1", "i"): "i", ("1", "j"): "j",
        ("i", "i"): "-1", ("i", "j"): "k",
        ("j", "i"): "-k", ("j", "j"): "-1",
        ("k", "i"): "j", ("k", "j"): "-i",
    }

    def mul(a, g):
        sign = a.startswith("-")
        base = a.lstrip("-")
        r = table[(base, g)]
        if sign:
            r = r[1:] if r.startswith("-") else "-" + r
        return r

    gens = []
    for g in ("i", "j"):
        gens.append([names.index(mul(a, g)) for a in names])
    return gens


def main():
    covers = json.load(open(sys.argv[1]))
    os.makedirs(OUT, exist_ok=True)
    entries = []

    entries.append(entry("C4", 4, [cyc(4, [[0, 1, 2, 3]])], 4, 4, ["regression"], "cyclic group of order 4"))
    entries.append(entry("C2xC2", 4, [cyc(4, [[0, 1], [2, 3]]), cyc(4, [[0, 2], [1, 3]])], 4, 4,
                         ["regression"], "Klein four group"))
    entries.append(entry("C6", 5, [cyc(5, [[0, 1], [2, 3, 4]])], 6, 6, ["regression"], "cyclic group of order 6"))
    entries.append(entry("S3", 3, [cyc(3, [[0, 1, 2]]), cyc(3, [[0, 1]])], 6, 1, ["regression"],
                         "symmetric group on 3 letters"))
    entries.append(entry("Q8", 8, quaternion_regular(), 8, 2, ["regression"],
                         "quaternion group in its regular action (right multiplication)"))
    entries.append(entry("D8", 4, [cyc(4, [[0, 1, 2, 3]]), cyc(4, [[1, 3]])], 8, 2, ["regression"],
                         "dihedral group of order 8 acting on the vertices of a square"))
    entries.append(entry("A4", 4, [cyc(4, [[0, 1, 2]]), cyc(4, [[1, 2, 3]])], 12, 1, ["regression"],
                         "alternating group on 4 letters"))
    entries.append(entry("S4", 4, [cyc(4, [[0, 1, 2, 3]]), cyc(4, [[0, 1]])], 24, 1, ["regression"],
                         "symmetric group on 4 letters"))
    entries.append(entry("A5", 5, [cyc(5, [[0, 1, 2]]), cyc(5, [[0, 1, 2, 3, 4]])], 60, 1, ["regression"],
                         "alternating group on 5 letters"))
    entries.append(entry("S5", 5, [cyc(5, [[0, 1, 2, 3, 4]]), cyc(5, [[0, 1]])], 120, 1, ["regression"],
                         "symmetric group on 5 letters"))
    entries.append(entry("A6", 6, [cyc(6, [[0, 1, 2]]), cyc(6, [[1, 2, 3, 4, 5]])], 360, 1, ["regression"],
                         "alternating group on 6 letters"))

    f3 = PrimeField(3)
    q8_mats = [[[0, 1], [2, 0]], [[1, 1], [1, 2]]]
    sl_gens = [[[1, 1], [0, 1]], [[0, 2], [1, 0]]]
    deg, perms = matrix_action(f3, sl_gens)
    _, q8 = matrix_action(f3, q8_mats)
    entries.append(entry("SL2x3", deg, perms, 24, 2, ["regression", "quasi-simple-standin"],
                         "SL2(3) acting on the 8 nonzero vectors of F_3^2 (row vectors, v -> vM)",
                         [{"name": "Q8", "generators": [to_cycles(g) for g in q8], "order": 8}]))
    deg, perms = matrix_action(f3, sl_gens + [[[2, 0], [0, 1]]])
    entries.append(entry("GL2x3", deg, perms, 48, 2, ["worked-example"],
                         "GL2(3) acting on the 8 nonzero vectors of F_3^2 (row vectors, v -> vM)",
                         [{"name": "Q8", "generators": [to_cycles(g) for g in q8], "order": 8}]))

    for q, order in ((5, 120), (7, 336)):
        fq = PrimeField(q)
        deg, perms = matrix_action(fq, [[[1, 1], [0, 1]], [[0, q - 1], [1, 0]]])
        entries.append(entry("SL2x%d" % q, deg, perms, order, 2, ["quasi-simple-standin"],
                             "SL2(%d) acting on the %d nonzero vectors of F_%d^2 (row vectors, v -> vM)"
                             % (q, deg, q)))

    f9 = F9()
    o, l, i, m = (0, 0), (1, 0), (0, 1), (2, 0)
    deg, perms = matrix_action(f9, [[[l, l], [o, l]], [[l, i], [o, l]], [[o, m], [l, o]]])
    entries.append(entry("2.A6", deg, perms, 720, 2, ["quasi-simple-standin"],
                         "SL2(9) = 2.A6 acting on the 80 nonzero vectors of F_9^2, F_9 = F_3[i], i^2 = -1"))

    for name, order in (("2.A7", 5040), ("2.A8", 40320)):
        c = covers[name]
        entries.append(entry(name, c["degree"], c["generators"], order, 2,
                             ["worked-example"] if name == "2.A8" else ["quasi-simple-standin"],
                             "double cover acting on a 240-point orbit in the Clifford algebra Cl(8); "
                             "see tools/spin_cover.py"))

    for e in entries:
        fname = e["name"].replace(".", "_") + ".json"
        with open(os.path.join(OUT, fname), "w") as f:
            json.dump(e, f, separators=(",", ":"))
            f.write("\n")
        print(fname, file=sys.stderr)


if __name__ == "__main__":
    main()
