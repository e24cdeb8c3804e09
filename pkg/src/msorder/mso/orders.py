"""Formulas about defined orders: the order sentence, guarding, and union combination."""

from __future__ import annotations

from .syntax import (
    And,
    Eq,
    Forall,
    Formula,
    Iff,
    Implies,
    Not,
    Or,
    all_variables,
    fresh_name,
    free_variables,
    substitute,
)


def _instance(phi: Formula, x: str, y: str, a: str, b: str) -> Formula:
    """``phi(a, b)``: simultaneous capture-avoiding substitution for ``x, y``."""
    tmp_x = fresh_name("t", all_variables(phi) | {a, b})
    tmp_y = fresh_name("t", all_variables(phi) | {a, b, tmp_x})
    step = substitute(phi, {x: tmp_x, y: tmp_y})
    return substitute(step, {tmp_x: a, tmp_y: b})


def order_sentence(phi: Formula, x: str = "x", y: str = "y") -> Formula:
    """Sentence saying that ``phi(x, y)`` defines a linear order under the current parameters.

    Conjuncts: ``phi(u,v) & phi(v,u) <-> u = v``, transitivity, and totality.
    Its quantifier rank is ``qr(phi) + 3``.
    """
    used = all_variables(phi) | {x, y}
    u = fresh_name("u", used)
    v = fresh_name("v", used | {u})
    w = fresh_name("w", used | {u, v})
    p = lambda a, b: _instance(phi, x, y, a, b)  # noqa: E731
    antisym = Forall(u, Forall(v, Iff(And((p(u, v), p(v, u))), Eq(u, v))))
    trans = Forall(u, Forall(v, Forall(w, Implies(And((p(u, v), p(v, w))), p(u, w)))))
    total = Forall(u, Forall(v, Or((p(u, v), p(v, u)))))
    return And((antisym, trans, total))


def guard_order_formula(phi: Formula, x: str = "x", y: str = "y") -> Formula:
    """``phi(x, y) & ord_phi``: empty wherever ``phi`` fails to define a linear order."""
    return And((phi, order_sentence(phi, x, y)))


def combine_union(phi: Formula, psi: Formula, x: str = "x", y: str = "y") -> tuple[Formula, dict[str, str]]:
    """``[ord_phi & phi] | [~ord_phi & psi']`` with the parameters of ``psi`` renamed apart.

    Returns the formula and the renaming applied to the parameters of ``psi``.
    """
    phi_sets = free_variables(phi)[1]
    psi_sets = free_variables(psi)[1]
    avoid = all_variables(phi) | all_variables(psi)
    rename: dict[str, str] = {}
    for name in sorted(psi_sets):
        if name in phi_sets:
            new = fresh_name(name, avoid)
            avoid.add(new)
            rename[name] = new
        else:
            rename[name] = name
    psi2 = substitute(psi, {k: v for k, v in rename.items() if k != v})
    ord_phi = order_sentence(phi, x, y)
    combined = Or((And((ord_phi, phi)), And((Not(ord_phi), psi2))))
    return combined, rename
