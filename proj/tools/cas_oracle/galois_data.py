#!/usr/bin/env python3
"""Independent oracle for the Galois group data of two built-in scenarios.

For a field L = Q(i, r1, r2) generated by i and fourth roots (or a square
root), every automorphism sends each generator to one of finitely many
conjugates, so Gal(L/Q) sits inside an explicit set of candidate maps.
The oracle multiplies out prod (x - s(theta)) over the candidates for a
primitive element theta, rounds the coefficients, and checks irreducibility
over Q. Degree = number of candidates then proves every candidate is an
automorphism. Subgroups are read off as exact fixers of field generators,
evaluated numerically.

Usage: galois_data.py [--write DIR | --check DIR]
"""

import argparse
import itertools
import json
import os
import sys

import mpmath
import sympy

mpmath.mp.dps = 80
I = mpmath.mpc(0, 1)
R2 = mpmath.root(2, 4)
R3 = mpmath.root(3, 4)
S7 = mpmath.sqrt(7)


def close(a, b):
    return abs(a - b) < mpmath.mpf(10) ** -50


def perm_of(roots, images):
    perm = []
    for z in images:
        hits = [k for k, r in enumerate(roots) if close(z, r)]
        assert len(hits) == 1, "image is not a root"
        perm.append(hits[0])
    assert sorted(perm) == list(range(len(roots)))
    return perm


def certify_degree(maps, theta_of):
    """prod (x - s(theta)) has integer coefficients and is irreducible."""
    values = [theta_of(m) for m in maps]
    for a, b in itertools.combinations(values, 2):
        assert not close(a, b), "theta is not primitive"
    coeffs = [mpmath.mpc(1)]
    for v in values:
        nxt = [mpmath.mpc(0)] * (len(coeffs) + 1)
        for k, c in enumerate(coeffs):
            nxt[k] += c
            nxt[k + 1] -= c * v
        coeffs = nxt
    ints = []
    for c in coeffs:
        n = int(mpmath.nint(c.real))
        assert abs(c - n) < mpmath.mpf(10) ** -30, "coefficient is not an integer"
        ints.append(n)
    x = sympy.Symbol("x")
    poly = sympy.Poly(ints, x)
    assert poly.is_irreducible, "minimal polynomial candidate factors"
    return poly.degree()


def subgroup(maps, perms, pred):
    return [perms[k] for k, m in enumerate(maps) if pred(m)]


def example_iv():
    """L = Q(i, 2^(1/4), 3^(1/4)); s_{a,b,c}: i -> c i, r2 -> i^a r2, r3 -> i^b r3."""
    roots = [I**j * R2 for j in range(4)] + [I**j * R3 for j in range(4)]
    maps = [(a, b, c) for a in range(4) for b in range(4) for c in (1, -1)]

    def act(m, j, base):  # image of i^j * base_root
        a, b, c = m
        shift = a if base == 0 else b
        return (I**c) ** j * I**shift * (R2 if base == 0 else R3)

    ic = lambda m: I if m[2] == 1 else -I
    theta = lambda m: act(m, 0, 0) + 2 * act(m, 0, 1) + 3 * ic(m)
    degree = certify_degree(maps, theta)
    perms = [perm_of(roots, [act(m, j, 0) for j in range(4)] + [act(m, j, 1) for j in range(4)]) for m in maps]

    sqrt2 = lambda m: act(m, 0, 0) ** 2
    r3 = lambda m: act(m, 0, 1)
    r2 = lambda m: act(m, 0, 0)
    fixes = lambda f, value: (lambda m: close(f(m), value))
    h1 = subgroup(maps, perms, lambda m: fixes(sqrt2, R2**2)(m) and fixes(r3, R3)(m))   # L1 = Q(sqrt2, 3^(1/4))
    h2 = subgroup(maps, perms, fixes(r2, R2))                                            # L2 = Q(2^(1/4))
    f2 = subgroup(maps, perms, lambda m: fixes(r2, R2)(m) and fixes(ic, I)(m))           # F2 = Q(i, 2^(1/4))
    return {"name": "example-3-5-iv", "degree": degree, "points": 8, "elements": perms,
            "generators": [perms[maps.index(g)] for g in [(1, 0, 1), (0, 1, 1), (0, 0, -1)]],
            "subgroups": {"H1": h1, "H2": h2, "H2p": f2}}


def prop41_global():
    """L = Q(i, 2^(1/4), sqrt7); s_{a,c,e}: i -> c i, r2 -> i^a r2, sqrt7 -> e sqrt7."""
    base = [R2, R2 * S7]
    roots = [I**j * R2 for j in range(4)] + [I**j * R2 * S7 for j in range(4)]
    maps = [(a, c, e) for a in range(4) for c in (1, -1) for e in (1, -1)]

    def img_i(m):
        return I if m[1] == 1 else -I

    def img_r2(m):
        return I ** m[0] * R2

    def img_s7(m):
        return m[2] * S7

    def act_root(m, j, which):
        v = img_i(m) ** j * img_r2(m)
        return v if which == 0 else v * img_s7(m)

    theta = lambda m: img_r2(m) + 2 * img_s7(m) + 3 * img_i(m)
    degree = certify_degree(maps, theta)
    perms = [perm_of(roots, [act_root(m, j, 0) for j in range(4)] + [act_root(m, j, 1) for j in range(4)])
             for m in maps]
    fixes = lambda f, value: (lambda m: close(f(m), value))
    l1 = lambda m: fixes(img_i, I)(m) and fixes(img_r2, R2)(m)                 # L1 = Q(i, 2^(1/4))
    w = mpmath.sqrt(7 * mpmath.sqrt(2))
    l2 = lambda m: fixes(img_i, I)(m) and close(img_s7(m) * img_r2(m), w)       # L2 = Q(i, sqrt(7 sqrt2))
    # Decomposition groups at 2 and 7: fixers of sqrt(-7) and of 2^(1/4).
    d2 = lambda m: close(img_s7(m) / img_i(m), S7 / I)
    d7 = lambda m: fixes(img_r2, R2)(m)
    return {"name": "prop-4-1-global", "degree": degree, "points": 8, "elements": perms,
            "generators": [perms[maps.index(g)] for g in [(1, 1, 1), (0, -1, 1), (0, 1, -1)]],
            "subgroups": {"H1": subgroup(maps, perms, l1), "H2": subgroup(maps, perms, l2),
                          "D2": subgroup(maps, perms, d2), "D7": subgroup(maps, perms, d7)}}


def main():
    ap = argparse.ArgumentParser()
    g = ap.add_mutually_exclusive_group(required=True)
    g.add_argument("--write")
    g.add_argument("--check")
    args = ap.parse_args()
    results = [example_iv(), prop41_global()]
    for r in results:
        assert r["degree"] == len(r["elements"]), "group order differs from the field degree"
    target = args.write or args.check
    ok = True
    for r in results:
        path = os.path.join(target, r["name"] + ".json")
        if args.write:
            with open(path, "w") as f:
                json.dump(r, f, indent=1)
                f.write("\n")
        else:
            with open(path) as f:
                stored = json.load(f)
            same = stored == r
            ok = ok and same
            print(("ok   " if same else "DIFF ") + path)
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
