"""The five worked surfaces with p_g = q = 1 and their groups.

Each entry is the same mapping shape as an analysis config file.
"""

from __future__ import annotations

import copy

D8 = {"type": "dihedral", "order": 8, "name": "D8"}
G48 = {"type": "semidirect", "name": "Z3⋉(Z4)^2", "acting_order": 3, "acting_gen": "x",
       "kernel_orders": [4, 4], "kernel_gens": ["y", "z"],
       # x y x^-1 = z, x z x^-1 = (y z)^-1
       "action": [[0, 1], [3, 3]]}
D12 = {"type": "dihedral", "order": 12, "name": "D12"}
Z2xZ2 = {"type": "direct_product", "name": "Z2xZ2",
         "factors": [{"type": "cyclic", "n": 2, "gen": "x"}, {"type": "cyclic", "n": 2, "gen": "y"}]}
M21 = {"type": "metacyclic", "a": 3, "b": 7, "c": 2, "name": "D_{3,7,2}"}

GROUPS = {"D8": D8, "G48": G48, "D12": D12, "Z2xZ2": Z2xZ2, "M21": M21}

EXAMPLES = {
    1: {"name": "D8, K^2 = 8chi - 2", "group": D8,
        "cover1": {"base_genus": 0, "periods": [2, 2, 2, 2, 4],
                   "branch": ["x", "x*y", "x", "x*y^2", "y"]},
        "cover2": {"base_genus": 1, "periods": [2], "branch": ["y^2"], "handles": ["y", "x"]}},
    2: {"name": "order 48, K_m ample, K_m^2 = 8chi - 5", "group": G48,
        "cover1": {"base_genus": 0, "periods": [3, 3, 4], "branch": ["x", "x^2*y^3", "y"]},
        "cover2": {"base_genus": 1, "periods": [4], "branch": ["y"], "handles": ["x", "x*y*x*y^2"]}},
    3: {"name": "D12, K^2 = 8chi - 3", "group": D12,
        "cover1": {"base_genus": 0, "periods": [2, 2, 2, 6], "branch": ["x", "x*y^2", "y^3", "y"]},
        "cover2": {"base_genus": 1, "periods": [3], "branch": ["y^2"], "handles": ["x", "y"]}},
    4: {"name": "Z2xZ2, K^2 = 8chi - 4", "group": Z2xZ2,
        "cover1": {"base_genus": 0, "periods": [2, 2, 2, 2, 2],
                   "branch": ["x", "y", "x*y", "x*y", "x*y"]},
        "cover2": {"base_genus": 1, "periods": [2, 2], "branch": ["x", "x"], "handles": ["y", "y"]}},
    5: {"name": "metacyclic 21, K_m not ample, K_m^2 = 8chi - 5", "group": M21,
        "cover1": {"base_genus": 0, "periods": [3, 3, 7], "branch": ["x^2", "x*y^6", "y"]},
        "cover2": {"base_genus": 1, "periods": [7], "branch": ["y"], "handles": ["y", "x"]}},
}


def example_config(k: int) -> dict:
    return copy.deepcopy(EXAMPLES[k])


def search_catalog() -> list[dict]:
    return [copy.deepcopy(g) for g in GROUPS.values()]
