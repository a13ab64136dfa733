"""Session configuration: JSON loading and validation."""

from __future__ import annotations

import hashlib
import json
from dataclasses import asdict, dataclass, field
from typing import List, Optional

from .errors import InvariantViolation, MetatorError, ParseError
from .fields import DlogTable, field_of_order, minus_one_is_nth_power, prime_power
from .lattice import validate_form

DEFAULTS = {
    "n": 1,
    "genus": 1,
    "S": [0, "inf"],
    "T": 4,
    "bound": 2,
    "radius": 1,
    "satake_radius": 2,
    "mu": None,
    "chi": None,
    "samples": 50,
    "seed": 0,
    "generator": None,
}


@dataclass
class SessionConfig:
    q: int
    n: int
    kappa: List[List[int]]
    p: Optional[int] = None
    genus: int = 1
    S: List = field(default_factory=lambda: [0, "inf"])
    T: int = 4
    bound: int = 2
    radius: int = 1
    satake_radius: int = 2
    mu: Optional[List[int]] = None
    chi: Optional[List[List[int]]] = None   # per place of S, values on the basis e_i eps_i
    samples: int = 50
    seed: int = 0
    generator: Optional[int] = None   # code of a generator of k*; default smallest primitive root

    def to_json(self):
        return asdict(self)

    def digest(self) -> str:
        blob = json.dumps(self.to_json(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(blob.encode()).hexdigest()[:16]


def _int(data, key, minimum=None):
    v = data[key]
    if isinstance(v, bool) or not isinstance(v, int):
        raise ParseError(f"{key} must be an integer")
    if minimum is not None and v < minimum:
        raise InvariantViolation(key, f"must be >= {minimum}")
    return v


def validate(data: dict) -> SessionConfig:
    """Check a parsed mapping and build a SessionConfig; the first failure names its field."""
    if not isinstance(data, dict):
        raise ParseError("configuration must be a JSON object")
    unknown = set(data) - set(DEFAULTS) - {"q", "p", "kappa"}
    if unknown:
        raise ParseError(f"unknown keys: {sorted(unknown)}")
    for key in ("q", "kappa"):
        if key not in data:
            raise ParseError(f"missing key {key!r}")
    merged = dict(DEFAULTS)
    merged.update(data)
    q = _int(merged, "q", 2)
    try:
        pp = prime_power(q)
        k = field_of_order(q)
    except MetatorError as exc:
        raise InvariantViolation("q", str(exc)) from exc
    if merged.get("p") is not None and _int(merged, "p") != pp[0]:
        raise InvariantViolation("p", f"q = {q} is not a power of {merged['p']}")
    n = _int(merged, "n", 1)
    if (q - 1) % n:
        raise InvariantViolation("n", f"{n} does not divide q - 1 = {q - 1}")
    if not minus_one_is_nth_power(k, n):
        raise InvariantViolation("n", f"-1 is not an {n}-th power in F_{q}")
    gen = merged["generator"]
    if gen is not None:
        gen = _int(merged, "generator", 1)
        try:
            if gen >= q:
                raise ValueError(f"{gen} is not an element code of F_{q}")
            DlogTable(k, gen)
        except (MetatorError, ValueError) as exc:
            raise InvariantViolation("generator", str(exc)) from exc
    kappa = merged["kappa"]
    if not isinstance(kappa, list) or not all(isinstance(r, list) for r in kappa):
        raise ParseError("kappa must be a list of rows")
    try:
        validate_form(kappa)
    except MetatorError as exc:
        raise InvariantViolation("kappa", str(exc)) from exc
    for key, lo in (("genus", 0), ("T", 1), ("bound", 1), ("radius", 0), ("satake_radius", 0),
                    ("samples", 1), ("seed", 0)):
        _int(merged, key, lo)
    S = merged["S"]
    if not isinstance(S, list) or not S:
        raise ParseError("S must be a nonempty list")
    for x in S:
        if x != "inf" and (isinstance(x, bool) or not isinstance(x, int) or not 0 <= x < q):
            raise InvariantViolation("S", f"place {x!r} is neither 'inf' nor an element code of F_{q}")
    if len(set(map(str, S))) != len(S):
        raise InvariantViolation("S", "repeated place")
    r = len(kappa)
    mu = merged["mu"]
    if mu is not None and (not isinstance(mu, list) or len(mu) != r):
        raise InvariantViolation("mu", f"must be a list of {r} integers")
    chi = merged["chi"]
    if chi is not None and (not isinstance(chi, list) or len(chi) != len(S)
                            or any(len(row) != r for row in chi)):
        raise InvariantViolation("chi", "need one row of rank-many values per place of S")
    return SessionConfig(q=q, n=n, kappa=kappa, p=pp[0], genus=merged["genus"], S=S, T=merged["T"],
                         bound=merged["bound"], radius=merged["radius"],
                         satake_radius=merged["satake_radius"], mu=mu, chi=chi,
                         samples=merged["samples"], seed=merged["seed"], generator=gen)


def load_config(path) -> SessionConfig:
    try:
        with open(path) as fh:
            data = json.load(fh)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: {exc}") from exc
    return validate(data)
