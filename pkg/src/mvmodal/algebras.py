"""Exact arithmetic for the supported bounded commutative residuated lattices.

Carriers are exact: rationals in [0, 1] (``fractions.Fraction``), symbolic
powers of a fixed base ``a`` in (0, 1) for the power-chain algebra, and plain
indices for finite-table algebras.  Every operation is total on its carrier
and returns exact results; there is no floating point anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any

__all__ = [
    "CarrierError", "ResourceLimitError", "ExpValue", "EXP_ZERO", "EXP_ONE",
    "Algebra", "StdMV", "StdGodel", "StdProduct", "MVn", "ExpChain",
    "FiniteTable", "Violation", "ValidationReport", "validate_finite_algebra",
    "mv_chain_tables", "op_apply", "power", "leq",
    "rational_from_str", "rational_to_str",
    "algebra_to_json", "algebra_from_json", "value_to_json", "value_from_json",
]

Value = Any  # Fraction | ExpValue | int, depending on the algebra


class CarrierError(ValueError):
    """Value does not belong to the algebra's carrier."""


class ResourceLimitError(RuntimeError):
    """A configurable resource guard tripped."""


@dataclass(frozen=True)
class ExpValue:
    """Element of the power chain: ``a^exponent``, or the bottom (``None``).

    The base ``a`` is a formal element of (0, 1), never fixed numerically;
    the order is reversed on exponents: bottom < a^t < a^s < a^0 = 1 for
    t > s > 0.
    """

    exponent: Fraction | None

    def __post_init__(self):
        if self.exponent is not None:
            object.__setattr__(self, "exponent", Fraction(self.exponent))
            if self.exponent < 0:
                raise CarrierError("power-chain exponent must be nonnegative")

    @property
    def is_zero(self) -> bool:
        return self.exponent is None

    def __repr__(self):
        return "ExpValue(zero)" if self.is_zero else f"ExpValue(a^{self.exponent})"


EXP_ZERO = ExpValue(None)
EXP_ONE = ExpValue(Fraction(0))


class Algebra:
    """Operation interface shared by all supported algebras.

    The binary operations assume carrier-valid arguments; ``require`` is the
    checked entry point used by :func:`op_apply` and the model loaders.
    """

    kind: str

    @property
    def zero(self) -> Value:
        raise NotImplementedError

    @property
    def one(self) -> Value:
        raise NotImplementedError

    def require(self, v: Value) -> Value:
        raise NotImplementedError

    def leq(self, a: Value, b: Value) -> bool:
        raise NotImplementedError

    def meet(self, a: Value, b: Value) -> Value:
        return a if self.leq(a, b) else b

    def join(self, a: Value, b: Value) -> Value:
        return b if self.leq(a, b) else a

    def times(self, a: Value, b: Value) -> Value:
        raise NotImplementedError

    def residuum(self, a: Value, b: Value) -> Value:
        raise NotImplementedError

    def power(self, a: Value, n: int) -> Value:
        """``a^n`` for unbounded ``n >= 0``; ``a^0`` is the unit."""
        if n < 0:
            raise ValueError("negative power")
        if n == 0:
            return self.one
        out = a
        for _ in range(n - 1):
            nxt = self.times(out, a)
            if nxt == out:
                return out  # powers are non-increasing, so this is a fixpoint
            out = nxt
        return out

    def __eq__(self, other):
        return type(self) is type(other) and self.__dict__ == other.__dict__

    def __hash__(self):
        return hash(self.kind)

    def __repr__(self):
        return f"{type(self).__name__}()"


class _RationalAlgebra(Algebra):
    """Shared carrier logic for algebras over rationals in [0, 1]."""

    @property
    def zero(self) -> Fraction:
        return Fraction(0)

    @property
    def one(self) -> Fraction:
        return Fraction(1)

    def require(self, v: Value) -> Fraction:
        if isinstance(v, float):
            raise CarrierError("floats are not exact; use Fraction")
        v = Fraction(v)
        if not 0 <= v <= 1:
            raise CarrierError(f"value {v} outside [0, 1]")
        return v

    def leq(self, a: Fraction, b: Fraction) -> bool:
        return a <= b

    def meet(self, a, b):
        return min(a, b)

    def join(self, a, b):
        return max(a, b)


class StdMV(_RationalAlgebra):
    """[0, 1] with a*b = max(0, a+b-1) and a->b = min(1, 1-a+b)."""

    kind = "std-mv"

    def times(self, a, b):
        return max(Fraction(0), a + b - 1)

    def residuum(self, a, b):
        return min(Fraction(1), 1 - a + b)

    def power(self, a, n):
        if n < 0:
            raise ValueError("negative power")
        if n == 0:
            return Fraction(1)
        return max(Fraction(0), 1 - n * (1 - a))


class StdGodel(_RationalAlgebra):
    """[0, 1] with a*b = min(a, b) and a->b = 1 if a <= b else b."""

    kind = "std-godel"

    def times(self, a, b):
        return min(a, b)

    def residuum(self, a, b):
        return Fraction(1) if a <= b else b

    def power(self, a, n):
        if n < 0:
            raise ValueError("negative power")
        return Fraction(1) if n == 0 else a


class StdProduct(_RationalAlgebra):
    """Rationals in [0, 1] with ordinary product; a->b = 1 if a <= b else b/a.

    Exact exponentiation grows bit length linearly in the exponent, so large
    powers are refused; the power-chain algebra handles those symbolically.
    """

    kind = "std-product"

    def __init__(self, power_cap: int = 64):
        self.power_cap = power_cap

    def times(self, a, b):
        return a * b

    def residuum(self, a, b):
        return Fraction(1) if a <= b else b / a

    def power(self, a, n):
        if n < 0:
            raise ValueError("negative power")
        if n > self.power_cap:
            raise ResourceLimitError(
                f"product power {n} above cap {self.power_cap}; "
                "use the power-chain algebra for large exponents"
            )
        return a ** n if n else Fraction(1)


class MVn(_RationalAlgebra):
    """The finite subalgebra {0, 1/(n-1), ..., 1} of the standard MV algebra."""

    kind = "mv-n"

    def __init__(self, n: int):
        if n < 2:
            raise ValueError("MV chain needs at least 2 elements")
        self.n = n

    def require(self, v):
        v = super().require(v)
        if (v * (self.n - 1)).denominator != 1:
            raise CarrierError(f"{v} is not a multiple of 1/{self.n - 1}")
        return v

    def carrier(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(k, self.n - 1) for k in range(self.n))

    def times(self, a, b):
        return max(Fraction(0), a + b - 1)

    def residuum(self, a, b):
        return min(Fraction(1), 1 - a + b)

    def __repr__(self):
        return f"MVn({self.n})"

    def __hash__(self):
        return hash((self.kind, self.n))


class ExpChain(Algebra):
    """The subalgebra {0} + {a^t : t rational >= 0} of the standard product
    algebra, represented by exponents of the formal base ``a``."""

    kind = "exp-chain"

    @property
    def zero(self) -> ExpValue:
        return EXP_ZERO

    @property
    def one(self) -> ExpValue:
        return EXP_ONE

    def require(self, v):
        if not isinstance(v, ExpValue):
            raise CarrierError(f"{v!r} is not a power-chain value")
        return v

    def leq(self, a: ExpValue, b: ExpValue) -> bool:
        if a.is_zero:
            return True
        if b.is_zero:
            return False
        return a.exponent >= b.exponent

    def times(self, a, b):
        if a.is_zero or b.is_zero:
            return EXP_ZERO
        return ExpValue(a.exponent + b.exponent)

    def residuum(self, a, b):
        if self.leq(a, b):
            return EXP_ONE
        if b.is_zero:
            return EXP_ZERO
        return ExpValue(b.exponent - a.exponent)

    def power(self, a, n):
        if n < 0:
            raise ValueError("negative power")
        if n == 0:
            return EXP_ONE
        if a.is_zero:
            return EXP_ZERO
        return ExpValue(n * a.exponent)


@dataclass(frozen=True)
class Violation:
    law: str
    elements: tuple
    detail: str


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[Violation, ...]

    @property
    def ok(self) -> bool:
        return not self.violations

    def __str__(self):
        if self.ok:
            return "valid"
        lines = [f"{v.law} at {v.elements}: {v.detail}" for v in self.violations]
        return "\n".join(lines)


def validate_finite_algebra(size: int, meet, join, times, residuum,
                            zero: int, one: int) -> ValidationReport:
    """Exhaustively check the bounded-lattice, monoid and residuation laws.

    Tables are ``size x size`` nested sequences over indices ``0..size-1``;
    every violated law instance is reported.
    """
    for name, table in (("meet", meet), ("join", join),
                        ("times", times), ("residuum", residuum)):
        if len(table) != size or any(len(row) != size for row in table):
            raise ValueError(f"{name} table is not {size}x{size}")
        for row in table:
            for v in row:
                if not isinstance(v, int) or not 0 <= v < size:
                    raise ValueError(f"{name} table entry {v!r} out of range")
    if not (0 <= zero < size and 0 <= one < size):
        raise ValueError("designated elements out of range")

    bad: list[Violation] = []
    rng = range(size)

    def le(a, b):
        return meet[a][b] == a

    for a in rng:
        if meet[a][a] != a:
            bad.append(Violation("meet-idempotent", (a,), f"{a} /\\ {a} = {meet[a][a]}"))
        if join[a][a] != a:
            bad.append(Violation("join-idempotent", (a,), f"{a} \\/ {a} = {join[a][a]}"))
        if times[a][one] != a:
            bad.append(Violation("unit", (a,), f"{a} * 1 = {times[a][one]}"))
        if not le(zero, a):
            bad.append(Violation("bottom", (a,), f"0 is not below {a}"))
        if not le(a, one):
            bad.append(Violation("top", (a,), f"{a} is not below 1"))
    for a in rng:
        for b in rng:
            if meet[a][b] != meet[b][a]:
                bad.append(Violation("meet-commutative", (a, b), ""))
            if join[a][b] != join[b][a]:
                bad.append(Violation("join-commutative", (a, b), ""))
            if times[a][b] != times[b][a]:
                bad.append(Violation("times-commutative", (a, b), ""))
            if meet[a][join[a][b]] != a:
                bad.append(Violation("absorption", (a, b), f"{a} /\\ ({a} \\/ {b}) != {a}"))
            if join[a][meet[a][b]] != a:
                bad.append(Violation("absorption", (a, b), f"{a} \\/ ({a} /\\ {b}) != {a}"))
    for a in rng:
        for b in rng:
            for c in rng:
                if meet[meet[a][b]][c] != meet[a][meet[b][c]]:
                    bad.append(Violation("meet-associative", (a, b, c), ""))
                if join[join[a][b]][c] != join[a][join[b][c]]:
                    bad.append(Violation("join-associative", (a, b, c), ""))
                if times[times[a][b]][c] != times[a][times[b][c]]:
                    bad.append(Violation("times-associative", (a, b, c), ""))
                if le(times[a][b], c) != le(a, residuum[b][c]):
                    bad.append(Violation(
                        "residuation", (a, b, c),
                        f"{a}*{b} <= {c} is {le(times[a][b], c)} but "
                        f"{a} <= {b}->{c} is {le(a, residuum[b][c])}"))
    return ValidationReport(tuple(bad))


class FiniteTable(Algebra):
    """Finite algebra given by explicit operation tables over element indices.

    The tables are exhaustively validated at construction.
    """

    kind = "finite-table"

    def __init__(self, size: int, meet, join, times, residuum,
                 zero: int = 0, one: int | None = None):
        if one is None:
            one = size - 1
        report = validate_finite_algebra(size, meet, join, times, residuum, zero, one)
        if not report.ok:
            raise ValueError(f"invalid finite algebra:\n{report}")
        self.size = size
        self.meet_table = tuple(tuple(row) for row in meet)
        self.join_table = tuple(tuple(row) for row in join)
        self.times_table = tuple(tuple(row) for row in times)
        self.residuum_table = tuple(tuple(row) for row in residuum)
        self.zero_index = zero
        self.one_index = one

    @property
    def zero(self) -> int:
        return self.zero_index

    @property
    def one(self) -> int:
        return self.one_index

    def require(self, v):
        if not isinstance(v, int) or not 0 <= v < self.size:
            raise CarrierError(f"{v!r} is not an element index below {self.size}")
        return v

    def carrier(self) -> tuple[int, ...]:
        return tuple(range(self.size))

    def leq(self, a, b):
        return self.meet_table[a][b] == a

    def meet(self, a, b):
        return self.meet_table[a][b]

    def join(self, a, b):
        return self.join_table[a][b]

    def times(self, a, b):
        return self.times_table[a][b]

    def residuum(self, a, b):
        return self.residuum_table[a][b]

    def __repr__(self):
        return f"FiniteTable(size={self.size})"

    def __hash__(self):
        return hash((self.kind, self.size, self.times_table))


def mv_chain_tables(n: int) -> dict:
    """Operation tables of the n-element MV chain, for FiniteTable use."""
    m = n - 1
    rng = range(n)
    return {
        "size": n,
        "meet": [[min(a, b) for b in rng] for a in rng],
        "join": [[max(a, b) for b in rng] for a in rng],
        "times": [[max(0, a + b - m) for b in rng] for a in rng],
        "residuum": [[min(m, m - a + b) for b in rng] for a in rng],
        "zero": 0,
        "one": m,
    }


_OPS = ("meet", "join", "times", "residuum")


def op_apply(alg: Algebra, op: str, a: Value, b: Value) -> Value:
    """Checked application of a lattice/monoid/residuum operation."""
    if op not in _OPS:
        raise ValueError(f"unknown operation {op!r}; expected one of {_OPS}")
    a = alg.require(a)
    b = alg.require(b)
    return getattr(alg, op)(a, b)


def power(alg: Algebra, a: Value, n: int) -> Value:
    return alg.power(alg.require(a), n)


def leq(alg: Algebra, a: Value, b: Value) -> bool:
    return alg.leq(alg.require(a), alg.require(b))


def rational_from_str(s: str) -> Fraction:
    v = Fraction(s)
    return v


def rational_to_str(v: Fraction) -> str:
    return str(Fraction(v))


def value_to_json(alg: Algebra, v: Value):
    if isinstance(alg, ExpChain):
        v = alg.require(v)
        return "zero" if v.is_zero else {"pow": rational_to_str(v.exponent)}
    if isinstance(alg, FiniteTable):
        return alg.require(v)
    return rational_to_str(alg.require(v))


def value_from_json(alg: Algebra, obj) -> Value:
    if isinstance(alg, ExpChain):
        if obj == "zero":
            return EXP_ZERO
        if isinstance(obj, dict) and set(obj) == {"pow"}:
            return ExpValue(rational_from_str(obj["pow"]))
        raise CarrierError(f"bad power-chain value: {obj!r}")
    if isinstance(alg, FiniteTable):
        return alg.require(obj)
    if not isinstance(obj, str):
        raise CarrierError(f"rational values are serialized as strings, got {obj!r}")
    return alg.require(rational_from_str(obj))


def algebra_to_json(alg: Algebra) -> dict:
    if isinstance(alg, MVn):
        return {"kind": "mv-n", "n": alg.n}
    if isinstance(alg, StdProduct):
        return {"kind": "std-product"}
    if isinstance(alg, FiniteTable):
        return {
            "kind": "finite-table",
            "tables": {
                "size": alg.size,
                "meet": [list(r) for r in alg.meet_table],
                "join": [list(r) for r in alg.join_table],
                "times": [list(r) for r in alg.times_table],
                "residuum": [list(r) for r in alg.residuum_table],
                "zero": alg.zero_index,
                "one": alg.one_index,
            },
        }
    return {"kind": alg.kind}


def algebra_from_json(obj: dict) -> Algebra:
    kind = obj.get("kind")
    if kind == "std-mv":
        return StdMV()
    if kind == "std-godel":
        return StdGodel()
    if kind == "std-product":
        return StdProduct()
    if kind == "exp-chain":
        return ExpChain()
    if kind == "mv-n":
        return MVn(int(obj["n"]))
    if kind == "finite-table":
        t = obj["tables"]
        return FiniteTable(t["size"], t["meet"], t["join"], t["times"],
                           t["residuum"], t.get("zero", 0),
                           t.get("one", t["size"] - 1))
    raise ValueError(f"unknown algebra kind: {kind!r}")
