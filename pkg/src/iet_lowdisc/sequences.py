"""Point sequences: Kronecker, LS-sequences, the ordered J_{L,S} set, IET orbits
and restrictions of any of these to a subinterval.

Streams are immutable descriptors.  ``take(N)`` always recomputes from the
start, so two calls with the same arguments return equal lists.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import islice
from typing import Iterator, Optional

from .errors import BudgetExhausted, InvalidParams, OutOfDomain
from .iet import IET, LEFT_CLOSED, CombinatorialData, orbit
from .quadratic import QuadReal, beta, frac_quad, parse_quad, to_decimal

DEFAULT_SCAN_CAP = 10**6


@dataclass(frozen=True)
class Interval1D:
    """Half-open interval [left, right)."""

    left: QuadReal
    right: QuadReal

    def __post_init__(self):
        object.__setattr__(self, "left", QuadReal.coerce(self.left))
        object.__setattr__(self, "right", QuadReal.coerce(self.right))
        if not self.left < self.right:
            raise InvalidParams(f"empty interval [{self.left}, {self.right})")

    @property
    def length(self) -> QuadReal:
        return self.right - self.left

    def __contains__(self, x) -> bool:
        return self.left <= x < self.right

    def contains_interval(self, other: "Interval1D") -> bool:
        return self.left <= other.left and other.right <= self.right

    def intersect(self, other: "Interval1D") -> "Interval1D":
        return Interval1D(max(self.left, other.left), min(self.right, other.right))

    def to_unit(self, x) -> QuadReal:
        """Affine map of this interval onto [0, 1)."""
        return (x - self.left) / self.length

    def to_dict(self) -> dict:
        return {"left": str(self.left), "right": str(self.right)}

    @classmethod
    def from_dict(cls, data: dict) -> "Interval1D":
        return cls(parse_quad(data["left"]), parse_quad(data["right"]))


UNIT = Interval1D(QuadReal(0), QuadReal(1))


# -- single points ------------------------------------------------------------


def kronecker_point(z, n: int) -> QuadReal:
    return frac_quad(n * QuadReal.coerce(z))


def jls_point(L: int, S: int, i: int) -> QuadReal:
    """x_i = {k beta + (i - kS) beta^2} with k = i // S."""
    if L < 1 or S < 1 or i < 0:
        raise InvalidParams(f"jls_point needs L, S >= 1 and i >= 0 (got {L}, {S}, {i})")
    b = beta(L, S)
    k = i // S
    return frac_quad(k * b + (i - k * S) * b * b)


# -- LS partitions and points ---------------------------------------------------


@dataclass(frozen=True)
class LSPartition:
    L: int
    S: int
    level: int
    lefts: tuple[QuadReal, ...]
    exponents: tuple[int, ...]   # interval i has length beta**exponents[i]

    @property
    def t(self) -> int:
        return len(self.lefts)

    @property
    def l(self) -> int:
        return self.exponents.count(self.level)

    @property
    def s(self) -> int:
        return self.exponents.count(self.level + 1)

    def lengths(self) -> list[QuadReal]:
        b = beta(self.L, self.S)
        return [b ** e for e in self.exponents]


def _check_ls(L, S):
    if not (isinstance(L, int) and isinstance(S, int)) or L < 1 or S < 1:
        raise InvalidParams(f"LS construction needs integers L >= 1, S >= 1 (got L={L}, S={S})")


def ls_counts(L: int, S: int, level: int) -> tuple[int, int, int]:
    """(t_n, l_n, s_n) from l_1 = L, s_1 = S, l_{n+1} = L l_n + s_n, s_{n+1} = S l_n."""
    _check_ls(L, S)
    if level < 1:
        raise InvalidParams("level must be >= 1")
    l, s = L, S
    for _ in range(level - 1):
        l, s = L * l + s, S * l
    return l + s, l, s


def ls_partition(L: int, S: int, level: int) -> LSPartition:
    """The partition obtained by refining [0, 1) ``level`` times."""
    _check_ls(L, S)
    if level < 1:
        raise InvalidParams("level must be >= 1")
    b = beta(L, S)
    lefts = [QuadReal(0)]
    exps = [0]
    for n in range(level):
        # every interval of maximal length beta**n is split homothetically
        new_lefts, new_exps = [], []
        for x, e in zip(lefts, exps):
            if e != n:
                new_lefts.append(x)
                new_exps.append(e)
                continue
            big = b ** (n + 1)
            small = b ** (n + 2)
            for i in range(L):
                new_lefts.append(x + i * big)
                new_exps.append(n + 1)
            for j in range(S):
                new_lefts.append(x + L * big + j * small)
                new_exps.append(n + 2)
        lefts, exps = new_lefts, new_exps
    return LSPartition(L, S, level, tuple(lefts), tuple(exps))


def _ls_iter(L: int, S: int) -> Iterator[QuadReal]:
    b = beta(L, S)
    pts = [i * b for i in range(L)] + [L * b + j * b * b for j in range(S)]
    yield from pts
    l_n, s_n = L, S
    n = 1
    while True:
        big = b ** (n + 1)
        small = b ** (n + 2)
        head = pts[:l_n]
        new = []
        for i in range(1, L + 1):
            shift = i * big
            new.extend(x + shift for x in head)
        for j in range(1, S):
            shift = L * big + j * small
            new.extend(x + shift for x in head)
        yield from new
        pts.extend(new)
        l_n, s_n = L * l_n + s_n, S * l_n
        n += 1


def ls_points(L: int, S: int, count: int) -> list[QuadReal]:
    """First ``count`` points of the LS-sequence of points."""
    _check_ls(L, S)
    if count < 1:
        raise InvalidParams("count must be >= 1")
    return list(islice(_ls_iter(L, S), count))


# -- streams --------------------------------------------------------------------


class PointStream:
    kind = "abstract"
    domain: Interval1D = UNIT

    def __iter__(self) -> Iterator[QuadReal]:
        raise NotImplementedError

    def take(self, N: int) -> list[QuadReal]:
        if N < 1:
            raise InvalidParams("N must be >= 1")
        return list(islice(iter(self), N))

    def params(self) -> dict:
        raise NotImplementedError

    def to_dict(self) -> dict:
        return {"kind": self.kind, "params": self.params(), "domain": self.domain.to_dict()}

    @staticmethod
    def from_dict(data: dict) -> "PointStream":
        kind = data["kind"]
        p = data["params"]
        if kind == "kronecker":
            return Kronecker(parse_quad(p["z"]))
        if kind == "ls":
            return LSPoints(int(p["L"]), int(p["S"]))
        if kind == "jls":
            return JLS(int(p["L"]), int(p["S"]))
        if kind == "iet":
            return IETOrbit(IET.from_dict(p["iet"]), parse_quad(p["x0"]))
        if kind == "restriction":
            return Restriction(
                PointStream.from_dict(p["inner"]),
                Interval1D.from_dict(p["sub"]),
                int(p.get("cap", DEFAULT_SCAN_CAP)),
            )
        raise InvalidParams(f"unknown stream kind {kind!r}")


@dataclass(frozen=True)
class Kronecker(PointStream):
    z: QuadReal
    kind = "kronecker"

    def __post_init__(self):
        object.__setattr__(self, "z", QuadReal.coerce(self.z))

    def __iter__(self):
        # {n z} by repeated addition; same value as kronecker_point(z, n)
        step = frac_quad(self.z)
        x = QuadReal(0)
        while True:
            yield x
            x = x + step
            if x >= 1:
                x = x - 1

    def params(self):
        return {"z": str(self.z)}


@dataclass(frozen=True)
class LSPoints(PointStream):
    L: int
    S: int
    kind = "ls"

    def __post_init__(self):
        _check_ls(self.L, self.S)

    def __iter__(self):
        return _ls_iter(self.L, self.S)

    def params(self):
        return {"L": self.L, "S": self.S}


@dataclass(frozen=True)
class JLS(PointStream):
    L: int
    S: int
    kind = "jls"

    def __post_init__(self):
        _check_ls(self.L, self.S)

    def __iter__(self):
        i = 0
        while True:
            yield jls_point(self.L, self.S, i)
            i += 1

    def params(self):
        return {"L": self.L, "S": self.S}


class IETOrbit(PointStream):
    kind = "iet"

    def __init__(self, iet: IET, x0):
        if iet.convention != LEFT_CLOSED:
            raise InvalidParams("orbit streams use [l, r) intervals")
        self.iet = iet
        self.x0 = QuadReal.coerce(x0)
        self.domain = Interval1D(QuadReal(0), iet.total)
        if self.x0 not in self.domain:
            raise OutOfDomain(f"x0 = {self.x0} is not in [0, {iet.total})")

    def __iter__(self):
        f = self.iet
        x = self.x0
        while True:
            yield x
            x = x + f.w[f.interval_of(x) - 1]

    def take(self, N: int) -> list[QuadReal]:
        if N < 1:
            raise InvalidParams("N must be >= 1")
        return orbit(self.iet, self.x0, 0, N - 1).points

    def params(self):
        return {"iet": self.iet.to_dict(), "x0": str(self.x0)}

    def __eq__(self, other):
        return isinstance(other, IETOrbit) and self.to_dict() == other.to_dict()

    def __hash__(self):
        return hash(str(self.to_dict()))


def rotation(total, angle, x0=0) -> IETOrbit:
    """Orbit of y -> y + angle (mod total) as a two-interval exchange."""
    total = QuadReal.coerce(total)
    angle = QuadReal.coerce(angle)
    if not (0 < angle < total):
        raise InvalidParams("rotation angle must lie in (0, total)")
    f = IET(CombinatorialData((1, 2), (2, 1)), (total - angle, angle))
    return IETOrbit(f, x0)


class Restriction(PointStream):
    """The subsequence of ``inner`` falling into ``sub``, in order."""

    kind = "restriction"

    def __init__(self, inner: PointStream, sub: Interval1D, cap: int = DEFAULT_SCAN_CAP):
        if not inner.domain.contains_interval(sub):
            raise InvalidParams(f"[{sub.left}, {sub.right}) is not inside the stream domain")
        self.inner = inner
        self.sub = sub
        self.cap = cap
        self.domain = sub

    def __iter__(self):
        scanned = 0
        for x in self.inner:
            if scanned >= self.cap:
                raise BudgetExhausted(f"scanned {self.cap} points of the inner stream")
            scanned += 1
            if x in self.sub:
                yield x

    def take(self, N: int) -> list[QuadReal]:
        if N < 1:
            raise InvalidParams("N must be >= 1")
        out = []
        it = iter(self)
        try:
            for _ in range(N):
                out.append(next(it))
        except BudgetExhausted as exc:
            raise BudgetExhausted(f"found only {len(out)} of {N} points: {exc}") from None
        return out

    def params(self):
        return {"inner": self.inner.to_dict(), "sub": self.sub.to_dict(), "cap": self.cap}

    def __eq__(self, other):
        return isinstance(other, Restriction) and self.to_dict() == other.to_dict()

    def __hash__(self):
        return hash(str(self.to_dict()))


def restrict(inner: PointStream, sub: Interval1D, count: int, cap: int = DEFAULT_SCAN_CAP) -> list[QuadReal]:
    return Restriction(inner, sub, cap).take(count)


def stream_take(stream: PointStream, N: int) -> list[QuadReal]:
    return stream.take(N)


def render_points(points, precision: Optional[int] = None) -> list[str]:
    """Exact strings, or decimals rounded at ``precision`` digits."""
    if precision is None:
        return [str(p) for p in points]
    return [to_decimal(p, precision) for p in points]
