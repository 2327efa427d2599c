# %% [markdown]
# # Weight spaces, quantum group relations, quiver data
#
# Build V(lambda) exactly over Q(q), confirm the quantum group relations,
# and compare against weight multiplicities and quiver-variety numerics.

# %%
from fractions import Fraction

from klrbench import build_root_datum
from klrbench.uqrep import (
    build_module,
    multiplicity_at_depth,
    nakajima_string,
    period_class,
    quiver_space_dims,
    twist_integrality,
    verify_uq_relations,
)

a2 = build_root_datum([1, 2], [(1, 2)])
affine = build_root_datum([0, 1], [(0, 1), (1, 0)])

# %% [markdown]
# The adjoint representation of sl3: eight dimensions, a two-dimensional
# zero weight space, every relation exact.

# %%
M = build_module(a2, a2.weight((1, 1)), 4)
print(M.dims, "complete:", M.complete)
print(verify_uq_relations(a2, M).summary())

# %% [markdown]
# For the basic representation of affine sl2 the multiplicities of
# lambda - n delta count partitions of n.

# %%
lam = affine.weight((1, 0))
print([multiplicity_at_depth(affine, lam, (n, n)) for n in range(8)])
print(verify_uq_relations(affine, build_module(affine, lam, 4)).summary())

# %% [markdown]
# Strings through a weight are finite even though the module is not.

# %%
print(nakajima_string(affine, lam, (2, 2), 0))

# %% [markdown]
# Framed quiver representations: dimensions and the period coefficients.

# %%
sl2 = build_root_datum([1])
print(quiver_space_dims(sl2, sl2.weight((2,)), (1,)))
print(period_class(a2, a2.weight((1, 0)), (1, 1)))

# %% [markdown]
# Twists on the correspondence: only the differences away from i and the
# values at i need to be integers.

# %%
third = Fraction(1, 3)
print(twist_integrality({1: 0, 2: third}, {1: 0, 2: third}, 1))
print(twist_integrality({1: Fraction(1, 2), 2: 0}, {1: 0, 2: 0}, 1))
