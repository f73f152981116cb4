"""Dense factor algebra used by variable elimination.

A factor is a nonnegative table over the cross-product of the states of the
variables in its scope, stored as a numpy array with one axis per variable
in scope order. The unit factor has empty scope and value 1; it is the
identity of factor_product.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass
class Factor:
    scope: tuple[str, ...]
    values: np.ndarray

    def __post_init__(self) -> None:
        self.values = np.asarray(self.values, dtype=np.float64)
        if self.values.ndim != len(self.scope):
            raise ValueError(
                f"factor over {self.scope} needs a {len(self.scope)}-d table, "
                f"got {self.values.ndim}-d"
            )


def unit_factor() -> Factor:
    return Factor((), np.array(1.0))


def factor_product(a: Factor, b: Factor) -> Factor:
    """Pointwise product of two factors.

    The result's scope is a's scope followed by b's variables not already
    present, and each cell is the product of the aligned cells of the
    operands (operands broadcast over the variables they do not mention).
    """
    scope = list(a.scope) + [v for v in b.scope if v not in a.scope]
    pos = {v: i for i, v in enumerate(scope)}

    a_vals = a.values.reshape(a.values.shape + (1,) * (len(scope) - len(a.scope)))

    # Permute b's axes into output order, then insert singleton axes for
    # the variables b does not mention.
    order = sorted(range(len(b.scope)), key=lambda i: pos[b.scope[i]])
    b_vals = b.values.transpose(order) if b.scope else b.values
    shape = [1] * len(scope)
    for i in order:
        shape[pos[b.scope[i]]] = b.values.shape[i]
    b_vals = b_vals.reshape(shape)

    return Factor(tuple(scope), a_vals * b_vals)


def factor_marginalize(f: Factor, var: str) -> Factor:
    """Sum out one variable. Total table mass is preserved."""
    if var not in f.scope:
        raise ValueError(f"variable '{var}' is not in factor scope {f.scope}")
    axis = f.scope.index(var)
    scope = tuple(v for v in f.scope if v != var)
    return Factor(scope, f.values.sum(axis=axis))


def factor_reduce(f: Factor, var: str, state_index: int) -> Factor:
    """Slice the factor to one observed state of ``var``, dropping its axis."""
    if var not in f.scope:
        raise ValueError(f"variable '{var}' is not in factor scope {f.scope}")
    axis = f.scope.index(var)
    scope = tuple(v for v in f.scope if v != var)
    return Factor(scope, f.values.take(state_index, axis=axis))
