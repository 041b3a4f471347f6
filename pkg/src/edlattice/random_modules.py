"""Seeded random module generators.

Used to cross-check the reduction-based solver against the brute-force
search on many small inputs.  Everything is driven by a caller-supplied
random.Random so runs are reproducible.
"""

from __future__ import annotations

from random import Random

from .catalog import permutation_module, trivial_lattice
from .group_core import FiniteGroup, subgroup_classes
from .int_lattice import (
    GaloisModule,
    MixedTorsionError,
    direct_sum,
    identity_matrix,
    inverse_unimodular,
    mat_mul,
    quotient_by_orbit_relations,
)

__all__ = ["random_unimodular", "random_module", "conjugate_basis"]


def random_unimodular(rng: Random, n: int) -> list[list[int]]:
    """A small-entry unimodular matrix built from elementary row operations."""
    u = identity_matrix(n)
    if n < 2:
        return u
    for _ in range(2 * n):
        i = rng.randrange(n)
        j = rng.randrange(n)
        if i == j:
            continue
        c = rng.choice((-1, 1))
        for k in range(n):
            u[i][k] += c * u[j][k]
    return u


def conjugate_basis(rng: Random, module: GaloisModule) -> GaloisModule:
    """Rewrite the free block in a random unimodular basis.

    The module is unchanged up to isomorphism, so every invariant the
    solvers compute must be unchanged too.
    """
    n = module.free_rank
    if n < 2:
        return module
    u = random_unimodular(rng, n)
    w = inverse_unimodular(u)
    gens = module.group.generators() or [0]
    action = {}
    for g in gens:
        mat = module.action(g)
        a = [row[:n] for row in mat[:n]]
        c = [row[:n] for row in mat[n:]]
        new = [row[:] for row in mat]
        a_new = mat_mul(mat_mul(u, a), w)
        c_new = mat_mul(c, w) if c else []
        for i in range(n):
            new[i][:n] = a_new[i]
        for i in range(len(c_new)):
            new[n + i][:n] = c_new[i]
        action[g] = new
    return GaloisModule(module.group, module.prime, n, list(module.torsion), action)


def _perm_sum(rng: Random, group: FiniteGroup, p: int, max_dim: int) -> GaloisModule:
    classes = [c for c in subgroup_classes(group) if c.index <= max_dim]
    total = None
    budget = max_dim
    for _ in range(rng.randrange(1, 4)):
        fits = [c for c in classes if c.index <= budget]
        if not fits:
            break
        cls = rng.choice(fits)
        part = permutation_module(group, cls, p)
        total = part if total is None else direct_sum(total, part)
        budget -= cls.index
    if total is None:
        total = trivial_lattice(group, p, 1)
    return total


def _random_quotient(rng: Random, group: FiniteGroup, p: int, max_dim: int) -> GaloisModule:
    base = _perm_sum(rng, group, p, max_dim)
    for _ in range(8):
        relations = []
        for _ in range(rng.randrange(1, 3)):
            vec = [rng.randrange(-2, 3) for _ in range(base.free_rank)]
            if any(vec):
                relations.append(vec)
        if not relations:
            continue
        try:
            return quotient_by_orbit_relations(base, relations)
        except MixedTorsionError:
            continue
    return base


def _torsion_twist(rng: Random, group: FiniteGroup, p: int) -> GaloisModule | None:
    # Only safe for cyclic groups: a unit u with u^n = 1 always defines an
    # action of C_n, while relations in other generating sets need not hold.
    n = group.order
    gens = group.generators()
    if len(gens) > 1:
        return None
    k = rng.randrange(1, 4 if p == 2 else 3)
    modulus = p ** k
    units = [u for u in range(1, modulus) if u % p and pow(u, n, modulus) == 1]
    u = rng.choice(units)
    action = {gens[0]: [[u]]} if gens else {0: [[1]]}
    return GaloisModule(group, p, 0, [modulus], action)


def random_module(rng: Random, group: FiniteGroup, p: int, max_dim: int = 4) -> GaloisModule:
    """A random module over `group` with at most `max_dim` coordinates."""
    roll = rng.random()
    if roll < 0.35:
        module = _perm_sum(rng, group, p, max_dim)
    elif roll < 0.75:
        module = _random_quotient(rng, group, p, max_dim)
    else:
        module = _torsion_twist(rng, group, p) or _random_quotient(rng, group, p, max_dim)
    if module.dim < max_dim and rng.random() < 0.3:
        extra = _torsion_twist(rng, group, p)
        if extra is not None:
            module = direct_sum(module, extra)
    if rng.random() < 0.5:
        module = conjugate_basis(rng, module)
    return module
