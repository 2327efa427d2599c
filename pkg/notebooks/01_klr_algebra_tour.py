# %% [markdown]
# # Quiver Hecke algebras by hand
#
# A walk through the rewriting engine: build a root datum, multiply diagrams
# into normal form, read off degrees, and cross-check a cyclotomic quotient
# against the contravariant form on the module it categorifies.

# %%
from klrbench import build_root_datum, q_polynomial
from klrbench.klr import (
    algebra_for,
    check_relations,
    cyclotomic_quotient,
    degree,
    evaluate_expression,
    graded_dim_hom,
    multiply,
)
from klrbench.uqrep import shapovalov_cyclotomic_dim

a2 = build_root_datum([1, 2], [(1, 2)])
alg = algebra_for(a2)
print(a2, "  Q_12 =", q_polynomial(a2, 1, 2))

# %% [markdown]
# Two crossings of the same color vanish; of adjacent colors they produce
# the polynomial Q evaluated on the neighbouring dots.

# %%
for text in ["psi(1)*psi(1)*e(1 1)", "psi(1)*psi(1)*e(1 2)", "psi(1)*psi(1)*e(2 1)"]:
    print(f"{text:24} = {alg.fmt(evaluate_expression(a2, text))}")

# %% [markdown]
# Products of normal-form elements, and the degree of every surviving term.

# %%
x = evaluate_expression(a2, "psi(1)*e(1 2)")
y = evaluate_expression(a2, "y(1)*psi(1)*e(2 1)")
prod = multiply(a2, x, y)
print(alg.fmt(prod))
for b, c in prod.sorted_terms():
    print("  degree", degree(a2, b), "coefficient", c)

# %% [markdown]
# Graded dimensions of idempotent-truncated pieces, cut off at degree 6.

# %%
print(graded_dim_hom(a2, (1, 2, 1), (1, 1, 2), 6))
print(graded_dim_hom(a2, (1, 1), (1, 1), 6))

# %% [markdown]
# The whole relation list on three strands, under rewriting and under the
# polynomial representation.

# %%
print(check_relations(a2, 3, poly_degree=2).summary())

# %% [markdown]
# Cyclotomic quotients: the graded dimension computed by linear algebra in
# the quotient agrees with the one predicted by the contravariant form.

# %%
for lam, nu in [((1, 1), (1, 1)), ((1, 0), (1, 1)), ((2, 0), (2, 1))]:
    C = cyclotomic_quotient(a2, a2.weight(lam), nu, 8)
    print(lam, nu, C.dimension, C.graded_dim, "|", shapovalov_cyclotomic_dim(a2, a2.weight(lam), nu))
