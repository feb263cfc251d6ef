"""Catalog of completely multiplicative test functions.

A function is specified by its values at primes (a "prime assignment");
values elsewhere follow by complete multiplicativity.  All catalog values
satisfy |f(p)| <= 1, which the constructors enforce.

Specs serialise to the JSON object used in harness config files, e.g.

    {"name": "kronecker", "params": {"d": 5}}
    {"name": "twisted", "params": {"t": 0.5, "base": {"name": "liouville", "params": {}}}}

Complex parameters are written as [re, im] pairs since JSON has no complex
scalar; `twisted` and `product` take nested specs for the same reason.  A
nested spec with no parameters may be abbreviated to its bare name, so
{"params": {"base": "liouville", ...}} works.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any, Callable

import gmpy2
import numpy as np

from .errors import ArgumentError

_TOL = 1e-12

CATALOG_NAMES = (
    "liouville",
    "archimedean_twist",
    "kronecker",
    "interval_indicator",
    "power_omega",
    "twisted",
    "product",
)


@dataclass(frozen=True)
class FunctionSpec:
    """Serializable description of a catalog function."""

    name: str
    params: dict[str, Any] = field(default_factory=dict)

    def to_obj(self) -> dict:
        out: dict[str, Any] = {}
        for key, val in self.params.items():
            if isinstance(val, FunctionSpec):
                out[key] = val.to_obj()
            elif isinstance(val, complex):
                out[key] = [val.real, val.imag]
            else:
                out[key] = val
        return {"name": self.name, "params": out}

    @staticmethod
    def from_obj(obj: dict) -> "FunctionSpec":
        if not isinstance(obj, dict) or "name" not in obj:
            raise ArgumentError(f"not a function spec: {obj!r}")
        name = obj["name"]
        params: dict[str, Any] = {}
        for key, val in (obj.get("params") or {}).items():
            if isinstance(val, dict):
                params[key] = FunctionSpec.from_obj(val)
            elif isinstance(val, str):
                # bare catalog name, same shorthand as a top-level function
                params[key] = FunctionSpec(val)
            elif isinstance(val, list):
                if len(val) != 2:
                    raise ArgumentError(f"complex param {key} must be [re, im]")
                params[key] = complex(val[0], val[1])
            else:
                params[key] = val
        return FunctionSpec(name, params)


class PrimeAssignment:
    """Values of f at primes, with a scalar memo and a vector path.

    `at` is deterministic and memoized; `at_many` evaluates a whole int64
    array of primes at once (float64 when the function is real-valued).
    """

    def __init__(
        self,
        label: str,
        scalar: Callable[[int], complex],
        vector: Callable[[np.ndarray], np.ndarray],
        is_real: bool,
        spec: FunctionSpec | None = None,
        constant_value: complex | None = None,
    ):
        self.label = label
        self.is_real = is_real
        self.spec = spec
        self.constant_value = constant_value  # set when f(p) is the same at every prime
        self._scalar = scalar
        self._vector = vector
        self._memo: dict[int, complex] = {}
        self._values_cache: list[tuple[np.ndarray, np.ndarray]] = []

    def __repr__(self) -> str:
        return f"PrimeAssignment({self.label})"

    def at(self, p: int) -> complex:
        z = self._memo.get(p)
        if z is None:
            z = complex(self._scalar(p))
            if abs(z) > 1.0 + _TOL:
                raise ArgumentError(f"{self.label}: |f({p})| = {abs(z)} > 1")
            self._memo[p] = z
        return z

    def at_many(self, ps: np.ndarray) -> np.ndarray:
        return self._vector(np.asarray(ps, dtype=np.int64))

    def values_on(self, primes: np.ndarray) -> np.ndarray:
        """at_many with per-array caching; keyed by array identity so the
        shared global prime table is evaluated once per assignment."""
        for ref, vals in self._values_cache:
            if ref is primes:
                return vals
        vals = self.at_many(primes)
        self._values_cache.append((primes, vals))
        if len(self._values_cache) > 8:
            self._values_cache.pop(0)
        return vals


def _check_unimodular(z: complex, what: str) -> complex:
    z = complex(z)
    if abs(z) > 1.0 + _TOL:
        raise ArgumentError(f"{what} must have modulus <= 1, got |z| = {abs(z)}")
    return z


def liouville() -> PrimeAssignment:
    return PrimeAssignment(
        "liouville",
        lambda p: -1.0,
        lambda ps: np.full(ps.shape, -1.0),
        is_real=True,
        spec=FunctionSpec("liouville"),
        constant_value=-1.0,
    )


def archimedean_twist(t: float) -> PrimeAssignment:
    """f(p) = p^{it}, the completely multiplicative restriction of n^{it}."""
    t = float(t)

    def vector(ps: np.ndarray) -> np.ndarray:
        return np.exp(1j * t * np.log(ps.astype(np.float64)))

    return PrimeAssignment(
        f"archimedean_twist(t={t})",
        lambda p: complex(math.cos(t * math.log(p)), math.sin(t * math.log(p))),
        vector,
        is_real=(t == 0.0),
        spec=FunctionSpec("archimedean_twist", {"t": t}),
    )


def kronecker(d: int) -> PrimeAssignment:
    """f(p) = Kronecker symbol (d|p).

    (d|.) on positive integers is periodic with period dividing 4|d|, so the
    vector path is a residue-table lookup; scalars go through gmpy2."""
    d = int(d)
    if d == 0:
        raise ArgumentError("kronecker parameter d must be nonzero")
    mod = 4 * abs(d)
    table = np.array([int(gmpy2.kronecker(d, r)) for r in range(mod)], dtype=np.float64)
    return PrimeAssignment(
        f"kronecker(d={d})",
        lambda p: float(gmpy2.kronecker(d, p)),
        lambda ps: table[ps % mod],
        is_real=True,
        spec=FunctionSpec("kronecker", {"d": d}),
    )


def interval_indicator(y: float) -> PrimeAssignment:
    """f(p) = 1 exactly for y < p <= 2y, else 0.  Nonzero values of f live on
    integers all of whose prime factors lie in (y, 2y]."""
    y = float(y)
    if y < 1:
        raise ArgumentError("interval_indicator needs y >= 1")
    return PrimeAssignment(
        f"interval_indicator(y={y})",
        lambda p: 1.0 if y < p <= 2 * y else 0.0,
        lambda ps: ((ps > y) & (ps <= 2 * y)).astype(np.float64),
        is_real=True,
        spec=FunctionSpec("interval_indicator", {"y": y}),
    )


def power_omega(v: complex) -> PrimeAssignment:
    """f(p) = v for every prime, so f(n) = v^Omega(n)."""
    v = _check_unimodular(v, "power_omega value v")
    real = v.imag == 0.0
    fill = v.real if real else v
    return PrimeAssignment(
        f"power_omega(v={v})",
        lambda p: v,
        lambda ps: np.full(ps.shape, fill),
        is_real=real,
        spec=FunctionSpec("power_omega", {"v": v.real if real else v}),
        constant_value=v,
    )


def twist(f: "PrimeAssignment | FunctionSpec", t: float) -> PrimeAssignment:
    """g(p) = f(p) * p^{-it}; negate t for the opposite rotation."""
    base = as_assignment(f)
    t = float(t)

    def scalar(p: int) -> complex:
        lp = t * math.log(p)
        return base.at(p) * complex(math.cos(lp), -math.sin(lp))

    def vector(ps: np.ndarray) -> np.ndarray:
        return base.at_many(ps) * np.exp(-1j * t * np.log(ps.astype(np.float64)))

    spec = None
    if base.spec is not None:
        spec = FunctionSpec("twisted", {"base": base.spec, "t": t})
    return PrimeAssignment(
        f"twisted({base.label}, t={t})",
        scalar,
        vector,
        is_real=(t == 0.0 and base.is_real),
        spec=spec,
    )


def product(f: "PrimeAssignment | FunctionSpec", g: "PrimeAssignment | FunctionSpec") -> PrimeAssignment:
    left, right = as_assignment(f), as_assignment(g)

    spec = None
    if left.spec is not None and right.spec is not None:
        spec = FunctionSpec("product", {"left": left.spec, "right": right.spec})
    return PrimeAssignment(
        f"product({left.label}, {right.label})",
        lambda p: left.at(p) * right.at(p),
        lambda ps: left.at_many(ps) * right.at_many(ps),
        is_real=left.is_real and right.is_real,
        spec=spec,
    )


def _require(params: dict, *names: str) -> list:
    missing = [k for k in names if k not in params]
    if missing:
        raise ArgumentError(f"missing params {missing}")
    extra = [k for k in params if k not in names]
    if extra:
        raise ArgumentError(f"unknown params {extra}")
    return [params[k] for k in names]


def catalog_get(spec: FunctionSpec) -> PrimeAssignment:
    """Instantiate a catalog function from its spec."""
    name, params = spec.name, spec.params
    if name == "liouville":
        _require(params)
        return liouville()
    if name == "archimedean_twist":
        (t,) = _require(params, "t")
        return archimedean_twist(t)
    if name == "kronecker":
        (d,) = _require(params, "d")
        return kronecker(d)
    if name == "interval_indicator":
        (y,) = _require(params, "y")
        return interval_indicator(y)
    if name == "power_omega":
        (v,) = _require(params, "v")
        return power_omega(v)
    if name == "twisted":
        base, t = _require(params, "base", "t")
        return twist(base, t)
    if name == "product":
        left, right = _require(params, "left", "right")
        return product(left, right)
    raise ArgumentError(f"unknown catalog function {name!r}")


def as_assignment(f: "PrimeAssignment | FunctionSpec") -> PrimeAssignment:
    if isinstance(f, PrimeAssignment):
        return f
    if isinstance(f, FunctionSpec):
        return catalog_get(f)
    raise ArgumentError(f"expected FunctionSpec or PrimeAssignment, got {type(f)}")
