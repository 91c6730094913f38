"""
From vanishing sequences to linked Grassmannian numbers
=======================================================

A pair of vanishing sequences at a node is turned into the dimension data of
a linked chain.  The fiber bound computed through that dictionary collapses
to the crude excess.
"""

from lglab.limit_series import (EHPair, eh_classify, genus0_nonempty, genus1_case, gluing_profile, rho,
                                translate, verify_crude_identity)

pair = EHPair.build(1, 2, (0, 2), (0, 2), gY=1, gZ=1)
print(eh_classify(pair))

tw = translate(pair, 7, 7)
print("n' =", tw.n, " r' =", tw.rank, " d' =", tw.ambient)
print("Vbar1:", tw.vbar1, " Vbarn:", tw.vbarn)

rep = verify_crude_identity(pair, 7, 7)
print("first sum", rep.first_sum, "target", rep.target, "holds", rep.holds)

crude = EHPair.build(1, 4, (2, 3), (1, 3))
print(eh_classify(crude), verify_crude_identity(crude, 9, 9).dictionary_bound)

# base cases
print("rho(g=0, r=1, d=3, four simple ramification points):", rho(0, 1, 3, [(0, 1)] * 4))
print("genus 0:", genus0_nonempty(1, 3, 4)["intersection_number"])
for a in ((0, 1), (2, 4), (3, 4)):
    print("genus 1, a =", a, genus1_case(a, 1, 4)["nonempty"])

prof = gluing_profile(EHPair.build(1, 4, (1, 3), (1, 3)))
print("gluing sums", prof.sums, prof.verdict)
