#!/usr/bin/env python3
"""Fundamental units of Q[x]/(f) via PARI (pip install cypari).

Prints the signature, the index [O_F : Z[theta]], the torsion order and one
system of fundamental units as power-basis coefficient vectors, constant term
first. The units are unconditional only after bnfcertify; pass --certify to
run it (slow above degree 10).

    python3 tools/pari_units.py "x^9-7*x^3-1" [--certify]
"""
import sys

from cypari import pari


def main(argv):
    certify = "--certify" in argv
    polys = [a for a in argv if not a.startswith("--")]
    if not polys:
        sys.exit(__doc__)
    pari.allocatemem(4 * 10**9)
    for f in polys:
        pari(f"K = bnfinit({f}, 1); nf = nfinit({f});")
        n = int(pari(f"poldegree({f})"))
        print(f, "signature", pari("K.sign"), "index", pari("nf.index"), "torsion", pari("K.tu")[0])
        if certify:
            print("  certified:", pari("bnfcertify(K)"))
        for u in pari("apply(u -> lift(u), K.fu)"):
            coeffs = [int(pari(f"polcoef({u}, {i})")) for i in range(n)]
            print("  ", coeffs, "norm", pari(f"norm(Mod({u}, {f}))"))


if __name__ == "__main__":
    main(sys.argv[1:])
