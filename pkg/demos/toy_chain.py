"""
Counting points on a small linked Grassmannian
==============================================

The nested model with d=2, n=3 and S=({1},{1}) is the smallest chain with a
nontrivial fiber.  We count its points over a few primes and read the
dimension off the interpolated count.
"""

from lglab.chain import ChainSpec, axiom_report, make_nested_chain
from lglab.oracle import enum_lg_points, fit_count_polynomial

spec = ChainSpec(2, 3, 2, (frozenset({1}), frozenset({1})))
chain = make_nested_chain(spec)
print(spec.label(), "axioms:", axiom_report(chain).verdicts())

# f_i keeps the first coordinate, g_i the second
print("f_1 =", chain.fwd(1).rows, " g_1 =", chain.bwd(1).rows)

counts = {}
for q in (2, 3, 5, 7):
    counts[q] = len(enum_lg_points(make_nested_chain(spec.with_prime(q)), 1))
print("point counts:", counts)

fit = fit_count_polynomial(counts)
print("interpolated count:", " + ".join(f"{c}*q^{k}" for k, c in enumerate(fit.coefficients)))
print("degree", fit.degree, "exact fit", fit.exact_fit)

# a conjugated copy has the same counts
twisted = ChainSpec(2, 3, 5, spec.subsets, seed=3)
print("conjugated, F_5:", len(enum_lg_points(make_nested_chain(twisted), 1)))
