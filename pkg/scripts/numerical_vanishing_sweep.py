"""Check Frobenius scaling of Euler characteristics on small rings and modules.

For each ring and finite-length module N of finite projective dimension,
compare euler_char(lf(F, e)) with p^(e dim R) length N, and the omega-side
analogue when the ring is Cohen-Macaulay.

    python3 scripts/numerical_vanishing_sweep.py --e-max 2
"""

import argparse
from dataclasses import dataclass

from frobmult import GradedRing, check_numerical_vanishing, polynomial_ring, quotient_module


@dataclass
class Config:
    e_max: int = 2


def cases():
    for p in (2, 3):
        S = polynomial_ring(p, "xy")
        node = GradedRing(p, ["x", "y"], [S("x*y")])
        yield f"F_{p}[x,y], k", S, quotient_module(S, S.gens())
        yield f"F_{p}[x,y], S/(x^2, y^3)", S, quotient_module(S, [S("x^2"), S("y^3")])
        yield f"F_{p}[x,y]/(xy), R/(x-y)", node, quotient_module(node, [node("x-y")])
        yield f"F_{p}[x,y]/(xy), R/(x^2+y^2)", node, quotient_module(node, [node("x^2+y^2")])
        T = polynomial_ring(p, "xyz")
        ci = GradedRing(p, list("xyz"), [T("x*y - z^2")])
        yield f"F_{p}[x,y,z]/(xy-z^2), R/(x, y)", ci, quotient_module(ci, [ci("x"), ci("y")])
        yield f"F_{p}[x,y,z]/(xy-z^2), R/(x+y, z)", ci, quotient_module(ci, [ci("x+y"), ci("z")])


def main(cfg: Config):
    for name, R, N in cases():
        v = check_numerical_vanishing(R, N, cfg.e_max)
        f = " ".join(f"{l}={r}" if l == r else f"{l}!={r}" for _, l, r in (v.f_side or []))
        g = " ".join(f"{l}={r}" if l == r else f"{l}!={r}" for _, l, r in (v.g_side or []))
        status = "PASS" if v.passed else "FAIL"
        print(f"{status} {name:38s} length={v.length}  F: {f or '-'}  G: {g or '-'}  {'; '.join(v.notes)}")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--e-max", type=int, default=Config.e_max, dest="e_max")
    main(Config(**vars(ap.parse_args())))
