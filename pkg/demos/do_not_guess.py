"""Finitely many samples never decide a limit.

Starting from a sample that looks like it is heading to 2, build a
polynomial through it whose limit is any number we like, then ask the engine
and the numeric oracle about both.

Run with ``python demos/do_not_guess.py``.
"""

from hyperlim.expr import eval_real, to_text
from hyperlim.limits import LimitTarget, counterexample_poly, limit, numeric_estimate


def main():
    points = [(1e-10, 1.99999999999)]
    at_zero = LimitTarget.two_sided(0)
    for wanted in (17.0, -3.0, "inf"):
        f = counterexample_poly(points, 0.0, wanted)
        print(f"limit forced to {wanted}: f(x) = {to_text(f)}")
        print(f"  f(1e-10) = {eval_real(f, 1e-10)!r}")
        print(f"  engine verdict:  {limit(f, at_zero)}")
        estimate = numeric_estimate(f, at_zero)
        print(f"  numeric oracle:  {estimate.confidence} {estimate.value}")

    print("\nSeveral samples at once:")
    points = [(-1.0, 0.5), (0.5, 2.0), (2.0, -1.0)]
    f = counterexample_poly(points, 0.0, 42.0)
    for x, y in points:
        print(f"  f({x}) = {eval_real(f, x):.12g} (wanted {y})")
    print(f"  engine verdict: {limit(f, at_zero)}")
    print(f"  the same data also fits the limit 0: {limit(counterexample_poly(points, 0.0, 0.0), at_zero)}")


if __name__ == "__main__":
    main()
