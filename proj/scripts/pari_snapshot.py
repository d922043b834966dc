#!/usr/bin/env python3
"""Regenerate the bundled curve fixtures with PARI/GP (cypari2).

The fixtures mirror the fields the LMFDB curve endpoints expose (model,
rank, torsion, local data, Sha, mod-p non-maximal primes) plus a table of
quadratic twists E^{(D)} for D the discriminant of Q(sqrt(-d)). Sha orders
are the analytic values from the BSD formula, rounded.

Usage: python3 scripts/pari_snapshot.py fixtures/curves
"""
import json
import os
import sys

import cypari2

pari = cypari2.Pari()
pari.allocatemem(2 * 10**9)
pari.set_real_precision(38)

CURVES = {
    "11a1": [0, -1, 1, -10, -20], "11a2": [0, -1, 1, -7820, -263580], "11a3": [0, -1, 1, 0, 0],
    "14a1": [1, 0, 1, 4, -6], "14a2": [1, 0, 1, -36, -70], "14a3": [1, 0, 1, -171, -874],
    "14a4": [1, 0, 1, -1, 0], "14a5": [1, 0, 1, -2731, -55146], "14a6": [1, 0, 1, -11, 12],
    "15a1": [1, 1, 1, -10, -10], "15a2": [1, 1, 1, -135, -660], "15a3": [1, 1, 1, -5, 2],
    "15a4": [1, 1, 1, 35, -28], "15a5": [1, 1, 1, -2160, -39540], "15a6": [1, 1, 1, -110, -880],
    "15a7": [1, 1, 1, -80, 242], "15a8": [1, 1, 1, 0, 0],
    "17a1": [1, -1, 1, -1, -14], "17a2": [1, -1, 1, -6, -4], "17a3": [1, -1, 1, -91, -310],
    "17a4": [1, -1, 1, -1, 0],
    "19a1": [0, 1, 1, -9, -15], "19a2": [0, 1, 1, -769, -8470], "19a3": [0, 1, 1, 1, 0],
    "21a1": [1, 0, 0, -4, -1], "21a2": [1, 0, 0, -49, -136], "21a3": [1, 0, 0, -39, 90],
    "21a4": [1, 0, 0, 1, 0], "21a5": [1, 0, 0, -784, -8515], "21a6": [1, 0, 0, -34, -217],
    "26a1": [1, 0, 1, -5, -8], "26a2": [1, 0, 1, -460, -3830], "26a3": [1, 0, 1, 0, 0],
    "26b1": [1, -1, 1, -3, 3], "26b2": [1, -1, 1, -213, -1257],
}

# Extra (non-prime) d needed by the Heegner triples.
HEEGNER_D = {
    "11a1": [7, 19, 35, 39, 43, 51], "14a1": [31, 47, 55], "15a1": [11, 59],
    "17a1": [15, 19, 35, 43, 47, 55, 59, 67], "19a1": [15, 31, 51, 59, 67],
    "21a1": [47, 59], "26a1": [23, 55],
}

KODAIRA = {1: "I0", 2: "II", 3: "III", 4: "IV", -1: "I0*", -2: "II*", -3: "III*", -4: "IV*"}


def kodaira_name(code):
    code = int(code)
    if code in KODAIRA:
        return KODAIRA[code]
    if code > 4:
        return "I%d" % (code - 4)
    return "I%d*" % (-code - 4)


def fund_disc(d):
    return -d if d % 4 == 3 else -4 * d


def rat(x):
    return str(pari(x))


def sha_an(E):
    return int(pari.round(pari.lfun(E, 1) / pari.ellbsd(E)))


def nonmaximal_primes(E):
    M = pari.ellisomat(E)
    degs = set()
    if M:
        for row in M[1]:
            for v in row:
                for q in pari.factor(v)[0] if int(v) > 1 else []:
                    degs.add(int(q))
    # mod 2: image is proper iff the 2-division cubic is reducible or has square discriminant
    b2, b4, b6 = E[5], E[6], E[7]
    cubic = pari("4*x^3 + (%s)*x^2 + 2*(%s)*x + (%s)" % (b2, b4, b6))
    if len(pari.factor(cubic)[0]) > 1 or pari.issquare(pari.poldisc(cubic)):
        degs.add(2)
    return sorted(degs)


def snapshot(label, ainvs, dlist):
    E = pari.ellinit(ainvs)
    gr = pari.ellglobalred(E)
    N = int(gr[0])
    rank = int(pari.ellanalyticrank(E)[0])
    tors = [int(t) for t in pari.elltors(E)[1]]
    local = []
    for q in pari.factor(N)[0]:
        lr = pari.elllocalred(E, q)
        local.append({"prime": int(q), "conductor_exponent": int(lr[0]),
                      "kodaira": kodaira_name(lr[1]), "tamagawa": int(lr[3]),
                      "disc_valuation": int(pari.valuation(E[11], q))})
    rec = {
        "format_version": 1,
        "label": label,
        "source": "PARI/GP %s snapshot" % ".".join(str(v) for v in pari("version()")[:3]),
        "ainvs": ainvs,
        "conductor": N,
        "rank": rank,
        "torsion_structure": tors,
        "local_data": local,
        "sha_an": sha_an(E) if rank == 0 else None,
        "nonmaximal_primes": nonmaximal_primes(E),
        "generators": [],
        "twists": [],
    }
    for d in dlist:
        D = fund_disc(d)
        Et = pari.ellinit(pari.elltwist(ainvs, D))
        mm = pari.ellminimalmodel(Et)
        Em = mm
        Nt = int(pari.ellglobalred(Em)[0])
        r = int(pari.ellanalyticrank(Em)[0])
        tw = {"d": d, "disc": D, "ainvs": [int(x) for x in Em[:5]], "conductor": Nt, "rank": r,
              "torsion_structure": [int(t) for t in pari.elltors(Em)[1]],
              "sha_an": sha_an(Em) if r == 0 else None, "generators": []}
        if r == 1:
            res = pari.ellrank(Em)
            pts = res[3]
            sat = pari.ellsaturation(Em, pts, 1000)
            gens = [pt for pt in sat if pari.ellorder(Em, pt) == 0]
            tw["generators"] = [[rat(pt[0]), rat(pt[1])] for pt in gens]
        rec["twists"].append(tw)
    return rec


def main():
    out = sys.argv[1] if len(sys.argv) > 1 else "fixtures/curves"
    os.makedirs(out, exist_ok=True)
    primes = [int(q) for q in pari.primes([5, 150])]
    for label, ainvs in CURVES.items():
        N = int(pari.ellglobalred(pari.ellinit(ainvs))[0])
        dlist = [d for d in primes if N % d != 0]
        dlist = sorted(set(dlist) | set(HEEGNER_D.get(label, [])))
        rec = snapshot(label, ainvs, dlist)
        with open(os.path.join(out, label + ".json"), "w") as fh:
            json.dump(rec, fh, indent=1)
            fh.write("\n")
        print(label, file=sys.stderr)


if __name__ == "__main__":
    main()
