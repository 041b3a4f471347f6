"""JSON transport for groups, modules, presentations, and solver results.

Matrix and vector entries are emitted as decimal strings (and accepted as
either strings or numbers) so callers in 64-bit languages never overflow.
Torsion factors may arrive in any order; modules are canonicalized to
ascending order, permuting the torsion coordinates to match.
"""

from __future__ import annotations

import json
from typing import Any

from .ed_solver import EdResult
from .group_core import FiniteGroup, direct_product, from_table, make_cyclic, subgroup_of
from .int_lattice import GaloisModule

__all__ = [
    "parse_group",
    "group_to_json",
    "parse_module",
    "module_to_json",
    "parse_presentation",
    "result_to_json",
    "parse_expected_table",
    "load_json",
    "dump_json",
]


def load_json(path: str) -> Any:
    with open(path, "r", encoding="utf-8") as handle:
        return json.load(handle)


def _as_int(value: Any) -> int:
    if isinstance(value, bool):
        raise ValueError(f"expected an integer, got {value!r}")
    if isinstance(value, int):
        return value
    if isinstance(value, str):
        return int(value.strip())
    raise ValueError(f"expected an integer or decimal string, got {value!r}")


def _as_matrix(value: Any) -> list[list[int]]:
    return [[_as_int(entry) for entry in row] for row in value]


def parse_group(data: Any) -> FiniteGroup:
    if not isinstance(data, dict) or "type" not in data:
        raise ValueError("group description must be an object with a 'type'")
    kind = data["type"]
    if kind == "cyclic":
        return make_cyclic(_as_int(data["order"]))
    if kind == "product":
        factors = [parse_group(f) for f in data["factors"]]
        if not factors:
            raise ValueError("product needs at least one factor")
        group = factors[0]
        for factor in factors[1:]:
            group = direct_product(group, factor)
        return group
    if kind == "table":
        return from_table(_as_matrix(data["cayley"]))
    raise ValueError(f"unknown group type {kind!r}")


def group_to_json(group: FiniteGroup) -> dict:
    return {"type": "table", "cayley": [list(row) for row in group.cayley]}


def parse_module(data: Any, prime: int) -> GaloisModule:
    group = parse_group(data["group"])
    free_rank = _as_int(data.get("free_rank", 0))
    torsion = [_as_int(q) for q in data.get("torsion", [])]
    action = {_as_int(g): _as_matrix(mat) for g, mat in data["action"].items()}
    # Canonical coordinate order is ascending torsion; permute if needed.
    order = sorted(range(len(torsion)), key=lambda i: torsion[i])
    if order != list(range(len(torsion))):
        place = [0] * len(torsion)
        for new, old in enumerate(order):
            place[old] = new
        tmap = list(range(free_rank)) + [free_rank + place[i] for i in range(len(torsion))]
        dim = free_rank + len(torsion)
        permuted = {}
        for g, mat in action.items():
            new_mat = [[0] * dim for _ in range(dim)]
            for i in range(dim):
                for j in range(dim):
                    new_mat[tmap[i]][tmap[j]] = mat[i][j]
            permuted[g] = new_mat
        action = permuted
        torsion = sorted(torsion)
    return GaloisModule(group, prime, free_rank, torsion, action)


def module_to_json(module: GaloisModule) -> dict:
    gens = module.group.generators() or [0]
    return {
        "group": group_to_json(module.group),
        "free_rank": module.free_rank,
        "torsion": list(module.torsion),
        "action": {str(g): [[str(x) for x in row] for row in module.action(g)]
                   for g in gens},
    }


def parse_presentation(data: Any) -> tuple[FiniteGroup, list[tuple[int, ...]], list[int]]:
    """Read a (permutation set, fixed vector) quotient presentation.

    Schema: {"group": <group>, "summands": [[subgroup members], ...],
    "vector": [...]} where the vector has one entry per coset of each
    summand subgroup, in catalog coset order.
    """
    group = parse_group(data["group"])
    summands = [subgroup_of(group, [_as_int(x) for x in members])
                for members in data["summands"]]
    vector = [_as_int(x) for x in data["vector"]]
    return group, summands, vector


def result_to_json(result: EdResult, diagnostics: dict | None = None) -> dict:
    summands = []
    if result.certificate is not None:
        for cls, gen in result.certificate.summands:
            summands.append({
                "subgroup": list(cls.representative),
                "generator": [str(x) for x in gen],
            })
    payload = {
        "min_rank": result.min_rank,
        "ed": result.ed,
        "certificate": {"summands": summands},
        "diagnostics": {"multisets_examined": result.multisets_examined},
    }
    if diagnostics:
        payload["diagnostics"].update(diagnostics)
    return payload


def parse_expected_table(data: Any) -> list[tuple[str, tuple[int, ...], int, int]]:
    """Read an expected-values table like the built-in fixture.

    Schema: {"rows": [{"family": "M1", "r_values": [], "rank": 1, "ed": 0}, ...]}
    """
    rows = []
    for row in data["rows"]:
        rows.append((
            str(row["family"]),
            tuple(_as_int(r) for r in row.get("r_values", [])),
            _as_int(row["rank"]),
            _as_int(row["ed"]),
        ))
    return rows


def dump_json(data: Any) -> str:
    return json.dumps(data, indent=2, sort_keys=True)
