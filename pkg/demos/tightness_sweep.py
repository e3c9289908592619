"""How tight the weighted-rule bounds are across split points and exponents.

Tightness is lhs/rhs for one verified inequality instance. The endpoint-rule
bound achieves equality at x = a (the rule degenerates and both sides become
|f'| times the same moment), then loosens toward the interior; raising q
loosens everything through the power-mean step.

Run:  python3 demos/tightness_sweep.py
"""

import numpy as np

from hhbound import (
    CaseTemplate,
    ConvexityParams,
    DifferentiablePair,
    DomainSpec,
    Interval,
    TheoremId,
    parse_function,
    sweep_x,
)

IV = Interval(0.0, 1.0)


def template(q: float) -> CaseTemplate:
    pair = DifferentiablePair.from_family(parse_function("monomial:2"),
                                          DomainSpec(4.0))
    return CaseTemplate(pair, parse_function("const:1"), IV, q,
                        ConvexityParams(1.0, 1.0), 1.0)


def main() -> None:
    xs = np.linspace(0.0, 1.0, 11)
    print("tightness of the endpoint-rule bound, f = t^2, unit weight")
    print(f"{'x':>6}" + "".join(f"  q={q:<4g}" for q in (1.0, 1.5, 2.0, 3.0)))
    rows = {q: sweep_x(template(q), 11, TheoremId.T21) for q in (1.0, 1.5, 2.0, 3.0)}
    for i, x in enumerate(xs):
        cells = "".join(f" {rows[q][i].tightness:7.4f}" for q in (1.0, 1.5, 2.0, 3.0))
        print(f"{x:6.2f}{cells}")

    print("\npoint-rule bound, same case")
    rows = {q: sweep_x(template(q), 11, TheoremId.T22) for q in (1.0, 1.5, 2.0, 3.0)}
    for i, x in enumerate(xs):
        cells = "".join(f" {rows[q][i].tightness:7.4f}" for q in (1.0, 1.5, 2.0, 3.0))
        print(f"{x:6.2f}{cells}")

    print("\nThe q = 1 endpoint-rule column starts at exactly 1: at x = a the")
    print("inequality is an equality. Larger q trades tightness for the")
    print("weaker hypothesis on |f'|**q.")


if __name__ == "__main__":
    main()
