# %% [markdown]
# # Checking a categorical action
#
# String diagrams and their degrees, the fake-bubble solver, and the
# certifier run on a genuine sl2 action and on a sabotaged copy.

# %%
import random
from fractions import Fraction

from klrbench import build_root_datum
from klrbench.klr import cyclotomic_quotient
from klrbench.ucat import (
    OperatorTable,
    StringDiagram,
    bubble_convolution,
    certify,
    diagram_degree,
    ground_truth_action,
    parse_candidate,
    perturb,
    print_candidate,
    solve_fake_bubbles,
)

sl2 = build_root_datum([1])
E1, F1 = ("E", 1), ("F", 1)

# %% [markdown]
# Cup and cap degrees depend on the weight of the region they close off;
# a zigzag always has degree zero.

# %%
for m in (-2, 0, 2):
    lam = sl2.weight((m,))
    cap = StringDiagram((E1, F1), lam, (("cap", 0),))
    zig = StringDiagram((E1,), lam, (("cup", 1, "F", 1), ("cap", 0)), top=(E1,))
    print(f"m={m:2}  cap {diagram_degree(sl2, cap):3}  zigzag {diagram_degree(sl2, zig)}")

# %% [markdown]
# Supply clockwise bubble values; the solver fills in the counterclockwise
# (partly fake) ones so the two generating series are inverse.

# %%
s = solve_fake_bubbles(sl2, 1, sl2.weight((2,)), {"cw": {2: Fraction(1, 2), 3: Fraction(-1), 4: 0}}, 6)
print("cw ", {k: str(v) for k, v in sorted(s.cw.items())})
print("ccw", {k: str(v) for k, v in sorted(s.ccw.items())})
print("convolution", [str(bubble_convolution(s, j)) for j in range(-2, 2)])

# %% [markdown]
# The ground-truth action on V(3) passes; one altered matrix entry does not.

# %%
c = ground_truth_action(sl2, sl2.weight((3,)))
print(certify(sl2, c).summary())
bad, what = perturb(c, random.Random(5))
print("perturbed", what)
print(certify(sl2, bad).summary())

# %% [markdown]
# Operator tables from a cyclotomic quotient feed condition (4), and the
# whole candidate survives a trip through the text format.

# %%
C = cyclotomic_quotient(sl2, sl2.weight((2,)), (2,), 8)
c2 = ground_truth_action(sl2, sl2.weight((2,)))
c2.tables = [OperatorTable(C.n, C.words, C.operator_tables(), C.degrees)]
text = print_candidate(sl2, c2)
print(text[:200], "...")
print(certify(sl2, parse_candidate(sl2, text)).summary())
