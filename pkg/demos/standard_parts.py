"""Walk through limits computed as standard parts of series in dx.

Run with ``python demos/standard_parts.py``.
"""

from hyperlim import parse
from hyperlim.expr import eval_hyper
from hyperlim.extreal import format_ext, st
from hyperlim.hyperfield import format_hyper, monomial
from hyperlim.limits import LimitTarget, derivative_at, limit


def show_series(text):
    e = parse(text, variable="dx")
    for label, sign in (("dx > 0", 1.0), ("dx < 0", -1.0)):
        h = eval_hyper(e, monomial(sign, 1))
        print(f"  {label}: {format_hyper(h)}")
        print(f"          st = {format_ext(st(h))}")


def main():
    print("Series in a positive or negative infinitesimal dx, then the standard part:")
    for text in ("3*dx - 4*dx^2", "(sqrt(3 + dx) - sqrt(3))/dx", "(-3 + dx)/(2*dx + dx^2)"):
        print(text)
        show_series(text)

    print("\nLimits at a point, from one side, and at infinity:")
    queries = [
        ("(x^3 + 4*x^2 + x - 6)/(x - 1)", LimitTarget.two_sided(1)),
        ("abs(x)/x", LimitTarget.two_sided(0)),
        ("(4*x + 1)/(x + 1)", LimitTarget.from_right(-1)),
        ("x/root(4, x^4 + 1)", LimitTarget.minus_infinity()),
        ("x*sin(1/x)", LimitTarget.two_sided(0)),
        ("sin(1/x)", LimitTarget.two_sided(0)),
    ]
    for text, target in queries:
        print(f"  lim {text} as {target}: {limit(parse(text), target)}")

    print("\nDerivatives as standard parts of difference quotients:")
    for text, x0 in (("x^3", 2.0), ("sin(x)", 0.0), ("abs(x)", 0.0)):
        print(f"  d/dx {text} at {x0}: {derivative_at(parse(text), x0)}")


if __name__ == "__main__":
    main()
