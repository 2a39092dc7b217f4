"""Fixed instances used by ``laws --builtin`` and by the documentation."""

from __future__ import annotations

RUNNING_EXAMPLE = {
    "lattice": {"dim": 2, "norm": "sup"},
    "space": {"kind": "finite", "atoms": ["a1", "a2", "a3"]},
    "measures": {
        "mu": {"kind": "pos", "atoms": [[1, 0], [0, 2], [1, 1]]},
        "nu": {"kind": "pos", "atoms": [[0, 1], [1, 1], [2, 0]]},
        "sigma": {"kind": "signed", "atoms": [[1, -1], [-2, 3], [0, 0]]},
        "mu_counter": {"kind": "pos", "space": {"kind": "naturals"}, "exceptional": {}, "tail": [1, 0]},
        "nu_counter": {"kind": "pos", "space": {"kind": "naturals"}, "exceptional": {}, "tail": [0, 1]},
    },
    "operators": {
        "T": {"columns": [[1, 3], [-2, 0], [0, -1]]},
        "P": {"columns": [[1, 0], [0, 1], [2, 1]]},
        "T_counter": {"space": {"kind": "naturals"}, "exceptional": {}, "tail": [1, 0]},
        "T_nob": {"space": {"kind": "naturals"}, "exceptional": {"0": [1, 2], "3": [0, 1], "5": [2, 0]}, "tail": [0, 0]},
    },
    "functions": {
        "f": [2, -1, 3],
        "g": [2, 1, 3],
        "one_nat": {"space": {"kind": "naturals"}, "exceptional": {}, "tail": 1},
    },
}
