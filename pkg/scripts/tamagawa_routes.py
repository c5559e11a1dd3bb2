#!/usr/bin/env python3
"""Tamagawa numbers by the l(F)-route and the h-vector route, side by side."""

from hassegen import CurveSpec, GroupSpec, HasseDomain, make_cover, make_field, tamagawa
from hassegen.curve import infinity_place, place_at


def cases():
    F5, F7 = make_field(5), make_field(7)
    line5 = CurveSpec.projective_line(F5)
    dom5 = HasseDomain(line5, (place_at(line5, 1, 0),))
    E7 = CurveSpec.elliptic(F7, 3, 1)
    domE = HasseDomain(E7, (infinity_place(E7),))
    for d in ("B", "C", "E7", "E6", "E8", "G2"):
        spec = GroupSpec(dom5, d, 3 if d in "BC" else None)
        yield f"split {spec.label} / P^1(F_5)", spec
    yield "split D4 / E(F_7)", GroupSpec(domE, "D", 4)
    yield "2E6 imaginary / P^1(F_5)", GroupSpec(dom5, "2E6", twist_cover=make_cover(dom5, "constant", 2), splitting_place_ok=True)
    yield "2D4 imaginary / E(F_7)", GroupSpec(domE, "2D", 4, twist_cover=make_cover(domE, "constant", 2), splitting_place_ok=True)
    yield "3D4 imaginary / E(F_7)", GroupSpec(domE, "3D4", twist_cover=make_cover(domE, "constant", 3), splitting_place_ok=True)
    deg2 = HasseDomain(line5, (place_at(line5, 2, 0),))
    yield "2D4, |S'|=2 / P^1(F_5)", GroupSpec(deg2, "2D", 4, twist_cover=make_cover(deg2, "constant", 2), splitting_place_ok=True)


def main() -> int:
    bad = 0
    print(f"{'case':<28} {'tau':>6} {'crosscheck':>10}")
    for name, spec in cases():
        t = tamagawa(spec)
        bad += not t.crosscheck_ok
        print(f"{name:<28} {str(t.tau):>6} {str(t.crosscheck):>10}{'' if t.crosscheck_ok else '  MISMATCH'}")
    return 1 if bad else 0


if __name__ == "__main__":
    raise SystemExit(main())
