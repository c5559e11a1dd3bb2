#!/usr/bin/env python3
"""PGL_2 over the affine ring of every nonsingular y^2 = x^3 + ax + b over F_p.

For each curve: |E(F_p)|, Pic(O_inf), the class number and the Hasse verdict.
The verdict should hold exactly when |E(F_p)| is odd.
"""

import argparse
from collections import Counter

from hassegen import CurveSpec, GroupSpec, HasseDomain, class_number, hasse_verdict, make_field, picard
from hassegen.curve import infinity_place, point_count
from hassegen.errors import InvalidCurve


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--p", type=int, nargs="+", default=[3, 5, 7])
    ap.add_argument("--quiet", action="store_true", help="print the summary only")
    args = ap.parse_args()
    tally, off = Counter(), 0
    for p in args.p:
        fld = make_field(p)
        for a in range(p):
            for b in range(p):
                try:
                    E = CurveSpec.elliptic(fld, a, b)
                except InvalidCurve:
                    continue
                dom = HasseDomain(E, (infinity_place(E),))
                spec = GroupSpec(dom, "PGL", 2, gs_noncompact=True)
                n = point_count(E, 1)
                verdict = hasse_verdict(spec).verdict
                h = class_number(spec).value
                tally[(p, verdict)] += 1
                off += (verdict == "holds") != (n % 2 == 1)
                if not args.quiet:
                    print(f"p={p} a={a} b={b} #E={n:<3} Pic={picard(dom).group!s:<12} h={h} hasse={verdict}")
    for (p, verdict), k in sorted(tally.items()):
        print(f"p={p}: {verdict} x{k}")
    print("parity rule holds for every curve" if not off else f"parity rule broken for {off} curves")
    return 1 if off else 0


if __name__ == "__main__":
    raise SystemExit(main())
