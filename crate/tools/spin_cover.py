#!/usr/bin/env python3
"""Build permutation generators for the double covers 2.A7 and 2.A8.

The cover is realised inside the real Clifford algebra Cl(8) (e_i^2 = +1):
the transposition (i j) lifts to the unit vector (e_i - e_j)/sqrt(2), so an
even permutation written as a product of transpositions lifts to a product
of those vectors with dyadic-rational coefficients.  The lifted group acts
by left multiplication on Cl(8); the orbit of a nonzero element is a
faithful permutation action (the central -1 sends x to -x).

To keep the degree small, x is chosen as a sum over a subgroup PSL2(7) that
does not contain -1 (the one acting transitively on the eight letters).
For 2.A8 the orbit has length 240.

Usage: python3 tools/spin_cover.py > /tmp/covers.json
"""

import json
import sys

import numpy as np

DIM = 8
NBLADES = 1 << DIM


def reorder_sign(a, b):
    a >>= 1
    s = 0
    while a:
        s += bin(a & b).count("1")
        a >>= 1
    return -1.0 if s & 1 else 1.0


SIGN = np.array([[reorder_sign(a, b) for b in range(NBLADES)] for a in range(NBLADES)])
XOR = np.array([[a ^ b for b in range(NBLADES)] for a in range(NBLADES)])


def mul(x, y):
    out = np.zeros(NBLADES)
    for a in np.nonzero(x)[0]:
        np.add.at(out, XOR[a], x[a] * y * SIGN[a])
    return out


def vec(i):
    v = np.zeros(NBLADES)
    v[1 << i] = 1.0
    return v


def one():
    v = np.zeros(NBLADES)
    v[0] = 1.0
    return v


def transposition_lift(i, j):
    # (e_i - e_j) / sqrt(2); pairs are multiplied together so we keep the
    # sqrt(2) factors out and divide by 2 per pair.
    return vec(i) - vec(j)


def lift(transpositions):
    assert len(transpositions) % 2 == 0
    x = one()
    for (i, j) in transpositions:
        x = mul(x, transposition_lift(i, j))
    return x / (2.0 ** (len(transpositions) // 2))


def key(x):
    scaled = np.rint(x * 2 ** 12).astype(np.int64)
    assert np.all(scaled == x * 2 ** 12)
    return scaled.tobytes()


def closure(gens):
    elems = {key(one()): one()}
    frontier = [one()]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = mul(x, g)
                k = key(y)
                if k not in elems:
                    elems[k] = y
                    nxt.append(y)
        frontier = nxt
    return list(elems.values())


def perm_to_transpositions(perm):
    # perm as list of images on 0..n-1
    seen = set()
    out = []
    for start in range(len(perm)):
        if start in seen:
            continue
        cyc = [start]
        seen.add(start)
        j = perm[start]
        while j != start:
            cyc.append(j)
            seen.add(j)
            j = perm[j]
        for k in range(1, len(cyc)):
            out.append((cyc[0], cyc[k]))
    return out


def cycle_perm(n, cycles):
    p = list(range(n))
    for c in cycles:
        for k in range(len(c)):
            p[c[k]] = c[(k + 1) % len(c)]
    return p


def projective_line_generators():
    # PSL2(7) acting on the projective line over F7, points 0..6 and
    # infinity = 7.  Its preimage in the cover splits.
    inv = {x: pow(x, 5, 7) for x in range(1, 7)}
    translate = [(x + 1) % 7 for x in range(7)] + [7]
    flip = [7] + [(-inv[x]) % 7 for x in range(1, 7)] + [0]
    return [translate, flip]


def orbit(x, gens):
    pts = {key(x): 0}
    vals = [x]
    i = 0
    while i < len(vals):
        for g in gens:
            y = mul(g, vals[i])
            k = key(y)
            if k not in pts:
                pts[k] = len(vals)
                vals.append(y)
        i += 1
    perms = []
    for g in gens:
        perms.append([pts[key(mul(g, v))] for v in vals])
    return vals, perms


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


def main():
    hlifts = closure([lift(perm_to_transpositions(g)) for g in projective_line_generators()])
    assert len(hlifts) == 336, len(hlifts)
    # derived subgroup of the preimage: a complement to {+-1} iff the
    # preimage splits.
    comms = []
    inv = {}
    for h in hlifts:
        for g in hlifts:
            if np.allclose(mul(h, g), one()):
                inv[key(h)] = g
                break
    for a in hlifts[:40]:
        for b in hlifts[:40]:
            comms.append(mul(mul(inv[key(a)], inv[key(b)]), mul(a, b)))
    derived = closure(comms)
    assert len(derived) == 168, len(derived)

    x = None
    for blade in range(NBLADES):
        c = np.zeros(NBLADES)
        c[blade] = 1.0
        s = sum(mul(h, c) for h in derived)
        if np.any(s != 0):
            x = s
            break
    assert x is not None

    out = {}
    a8_gens = [cycle_perm(8, [[0, 1, 2]]), cycle_perm(8, [[1, 2, 3, 4, 5, 6, 7]])]
    a7_gens = [cycle_perm(8, [[0, 1, 2]]), cycle_perm(8, [[0, 1, 2, 3, 4, 5, 6]])]
    for name, gens in (("2.A8", a8_gens), ("2.A7", a7_gens)):
        lifted = [lift(perm_to_transpositions(g)) for g in gens]
        vals, perms = orbit(x, lifted)
        out[name] = {"degree": len(vals), "generators": [to_cycles(p) for p in perms]}
        print(name, len(vals), file=sys.stderr)
    json.dump(out, sys.stdout)


if __name__ == "__main__":
    main()
