"""Tabulate normalized Frobenius sequences and their eigen-decompositions.

    python3 scripts/phi_sequences.py --extra 1
"""

import argparse
from dataclasses import dataclass

from frobmult import (Complex, GradedRing, PairingContext, decompose, format_rational, koszul,
                      polynomial_ring, quotient_module, resolve)


@dataclass
class Config:
    extra: int = 1  # exponents fitted beyond the default order


def cases():
    S2 = polynomial_ring(2, "xy")
    S3 = polynomial_ring(3, "xyz")
    N = GradedRing(2, ["x", "y"], [S2("x*y")])
    Q = polynomial_ring(2, "xyzw")
    cone = GradedRing(2, list("xyzw"), [Q("x*y - z*w")])
    yield "K(x,y) vs S over F_2", koszul(S2, S2.gens()), Complex.ring_complex(S2)
    yield "K(x,y,z) vs S over F_3", koszul(S3, S3.gens()), Complex.ring_complex(S3)
    yield "K(x,y,z) vs S/(x,y) over F_3", koszul(S3, S3.gens()), quotient_module(S3, [S3("x"), S3("y")])
    yield "res R/(x+y) vs R/(x), R=F_2[x,y]/(xy)", \
        resolve(quotient_module(N, [N("x+y")]), 3).complex, quotient_module(N, [N("x")])
    yield "K(x,y,z,w) vs R/(x,z), R=F_2[x,y,z,w]/(xy-zw)", \
        koszul(cone, cone.gens()), quotient_module(cone, [cone("x"), cone("z")])


def main(cfg: Config):
    print(f"{'case':52s} {'s':>2s} {'u':>2s}  sequence -> components")
    for name, X, Y in cases():
        ctx = PairingContext.build(X)
        u = max(0, ctx.s - 2) + cfg.extra
        dec = decompose(ctx, Y, u)
        seq = ", ".join(format_rational(v) for v in dec.sequence)
        comps = ", ".join(format_rational(c) for c in dec.components)
        print(f"{name:52s} {ctx.s:2d} {u:2d}  [{seq}] -> [{comps}]")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--extra", type=int, default=Config.extra)
    main(Config(**vars(ap.parse_args())))
