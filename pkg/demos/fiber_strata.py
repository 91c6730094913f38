"""
Fibers over a pair and their strata
===================================

Fix V_1 = <e2> and V_3 = <e1> in the toy chain.  Every line V_2 completes
the pair, and the lines split into three strata by how V_2 maps back to the
ends.  The closed formulas predict which strata exist and how big they are.
"""

from lglab.chain import ChainSpec, make_nested_chain
from lglab.invariants import PairConfig, pair_invariants
from lglab.linalg import Subspace
from lglab.oracle import enum_fiber, fit_count_polynomial, stratify
from lglab.strata import StratumSpec, all_stratum_specs, fiber_bound, stratum_report

spec = ChainSpec(2, 3, 2, (frozenset({1}), frozenset({1})))

per_prime = {}
for q in (2, 3, 5, 7):
    chain = make_nested_chain(spec.with_prime(q))
    v1 = Subspace.span(q, 2, [[0, 1]])
    v3 = Subspace.span(q, 2, [[1, 0]])
    inv = pair_invariants(PairConfig(chain, 1, v1, v3))
    fiber = enum_fiber(chain, 1, v1, v3, inv=inv)
    per_prime[q] = stratify(chain, inv, fiber.points)

print("fiber bound:", fiber_bound(inv))
for s in all_stratum_specs(3, 1):
    rep = stratum_report(inv, s)
    counts = {q: per_prime[q].get(s.triples, 0) for q in per_prime}
    if not rep.nonempty and not any(counts.values()):
        continue
    fit = fit_count_polynomial(counts)
    print(f"stratum {s}: predicted dim {rep.dimension}, counts {counts}, degree {fit.degree}")

# (0,0,0) fails condition 4, and indeed nothing lands there
print(stratum_report(inv, StratumSpec.parse("0,0,0")).conditions["c4"])
