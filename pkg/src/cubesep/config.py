"""Runtime budgets and tolerances.

Every cap that bounds an enumeration or search lives here so that the
desk-scale limits of the certification runs are explicit and overridable
from one place (CLI flags or a JSON config file).
"""

from __future__ import annotations

import dataclasses
import hashlib
import json
import os
from dataclasses import dataclass

DEFAULT_SEED = 0

# Optional pointer to a default config file; the only environment variable
# the package reads.
CONFIG_ENV_VAR = "CUBESEP_CONFIG"


@dataclass(frozen=True)
class Config:
    # Exact maximum-free-subset oracle: hard cap on conflict-graph vertices.
    mis_vertex_budget: int = 64
    # enumerate_admissible_sets refuses to start when the total set count
    # exceeds this (2048 covers dimension 3; dimension 4 needs ~2**37).
    admissible_set_budget: int = 4096
    # Exhaustive arrow certification caps: C_N for N <= 3, V_N for N <= 2.
    real_exhaustive_max_dim: int = 3
    complex_exhaustive_max_dim: int = 2
    # Unit-coefficient enumerations: 3**dim real, 5**dim complex.
    unit_enum_max_dim: int = 18
    complex_unit_enum_max_dim: int = 8
    # Difference-free extension step: assignments of extension signs tried
    # before declaring a defect (the guarantee says one must work).
    extension_assignment_budget: int = 200_000
    # Node cap for the exact decision searches (independent-set targets).
    decision_node_budget: int = 5_000_000
    # Randomized property evidence attached to theorem-backed certificates.
    evidence_sets: int = 64
    # Auerbach determinant ascent.
    auerbach_restarts: int = 32
    auerbach_max_passes: int = 64
    auerbach_vertex_tuple_budget: int = 1_000_000
    ascent_tol: float = 1e-12
    # Float-path tolerances: unit-norm membership and separation margin.
    tau: float = 1e-9
    margin_min: float = 1e-6
    threads: int = 1
    seed: int = DEFAULT_SEED

    def digest(self) -> str:
        payload = json.dumps(dataclasses.asdict(self), sort_keys=True)
        return hashlib.sha256(payload.encode()).hexdigest()[:16]

    def replace(self, **kwargs) -> "Config":
        return dataclasses.replace(self, **kwargs)


def load_config(path: str | None = None, **overrides) -> Config:
    """Build a Config from defaults, an optional JSON file and overrides.

    Resolution order: defaults < $CUBESEP_CONFIG file < explicit path file
    < keyword overrides.  Unknown keys in a file are rejected.
    """
    values: dict = {}
    env_path = os.environ.get(CONFIG_ENV_VAR)
    for p in (env_path, path):
        if not p:
            continue
        with open(p, "r", encoding="utf-8") as fh:
            data = json.load(fh)
        if not isinstance(data, dict):
            raise ValueError(f"config file {p!r} must hold a JSON object")
        values.update(data)
    values.update({k: v for k, v in overrides.items() if v is not None})
    known = {f.name for f in dataclasses.fields(Config)}
    unknown = set(values) - known
    if unknown:
        raise ValueError(f"unknown config keys: {sorted(unknown)}")
    return Config(**values)
