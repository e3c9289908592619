"""Map which (alpha, m) classes a few registry functions belong to.

The class inequality nests oddly: membership at (1, 1) (plain convexity)
says nothing about alpha < 1, where the right-hand side decays like
t**alpha near t = 0 and kills functions with f(0) > 0 or linear growth.
The map makes those boundaries visible, with a counterexample triple for
every rejected cell.

Run:  python3 demos/convexity_map.py
"""

from hhbound import DomainSpec, GridSpec, classify_region, parse_function

DOM = DomainSpec(2.0)
ALPHAS = (0.25, 0.5, 0.75, 1.0)
MS = (0.0, 0.25, 0.5, 0.75, 1.0)


def show(spec: str) -> None:
    fn = parse_function(spec)
    matrix = classify_region(fn, DOM, ALPHAS, MS, GridSpec(31, 31, 31))
    print(f"\n{spec}  (rows: alpha, cols: m)")
    header = "        " + "".join(f"{m:>8g}" for m in MS)
    print(header)
    worst = None
    for alpha, row in zip(ALPHAS, matrix):
        cells = "".join(f"{'yes' if v.holds else 'no':>8}" for v in row)
        print(f"{alpha:>8g}{cells}")
        for v in row:
            if not v.holds and (worst is None or v.witness.gap > worst.gap):
                worst = v.witness
    if worst is not None:
        print(f"  largest violation: gap {worst.gap:.3g} at "
              f"x={worst.x:g}, y={worst.y:g}, t={worst.t:g}")


def main() -> None:
    for spec in ("monomial:2", "monomial:3", "exp", "affine:0:1",
                 "negmonomial:2"):
        show(spec)
    print("\nMembership is not monotone in the obvious way: for alpha < 1 the")
    print("monomials survive only up to an alpha-dependent critical m below 1,")
    print("exp holds nowhere except plain convexity (its value at 0 kills the")
    print("m = 0 column), the linear map needs m = 0 or full convexity, and")
    print("the negated square belongs nowhere.")


if __name__ == "__main__":
    main()
