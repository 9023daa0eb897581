"""Exact planar geometry: Gaussian rationals and similitude maps.

All graph construction works over these types; floats appear only when a
map is handed to the renderer.  Rationals are stdlib ``fractions.Fraction``
(always lowest terms, positive denominator), complex numbers are pairs of
them, and a similitude  f(z) = u*z + t  or  f(z) = u*conj(z) + t  is stored
as the triple (u, conj flag, t).
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import IfsParseError

Rational = Fraction


@dataclass(frozen=True)
class GaussRational:
    """A complex number with exact rational real and imaginary parts."""

    re: Fraction
    im: Fraction

    @classmethod
    def of(cls, re, im=0) -> "GaussRational":
        return cls(Fraction(re), Fraction(im))

    def __add__(self, other: "GaussRational") -> "GaussRational":
        if not isinstance(other, GaussRational):
            return NotImplemented
        return GaussRational(self.re + other.re, self.im + other.im)

    def __sub__(self, other: "GaussRational") -> "GaussRational":
        if not isinstance(other, GaussRational):
            return NotImplemented
        return GaussRational(self.re - other.re, self.im - other.im)

    def __neg__(self) -> "GaussRational":
        return GaussRational(-self.re, -self.im)

    def __mul__(self, other: "GaussRational") -> "GaussRational":
        if not isinstance(other, GaussRational):
            return NotImplemented
        return GaussRational(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    def conjugate(self) -> "GaussRational":
        return GaussRational(self.re, -self.im)

    def norm_sq(self) -> Fraction:
        """Exact squared modulus |z|^2."""
        return self.re * self.re + self.im * self.im

    def inverse(self) -> "GaussRational":
        n = self.norm_sq()
        if n == 0:
            raise ZeroDivisionError("inverse of zero")
        return GaussRational(self.re / n, -self.im / n)

    def __truediv__(self, other: "GaussRational") -> "GaussRational":
        if not isinstance(other, GaussRational):
            return NotImplemented
        return self * other.inverse()

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def to_complex(self) -> complex:
        return complex(float(self.re), float(self.im))

    def __str__(self) -> str:
        return f"({self.re})+({self.im})i"


ZERO = GaussRational(Fraction(0), Fraction(0))
ONE = GaussRational(Fraction(1), Fraction(0))
I = GaussRational(Fraction(0), Fraction(1))


@dataclass(frozen=True)
class PlanarMap:
    """A planar similitude  z -> u*z + t  (or  u*conj(z) + t  when ``conj``).

    ``u`` must be nonzero.  Compositions combine the conj flags by
    exclusive-or; the identity is (1, False, 0).
    """

    u: GaussRational
    conj: bool
    t: GaussRational

    def __post_init__(self):
        if self.u.is_zero():
            raise ValueError("similitude with u = 0 is not invertible")

    @classmethod
    def identity(cls) -> "PlanarMap":
        return cls(ONE, False, ZERO)

    def is_identity(self) -> bool:
        return not self.conj and self.u == ONE and self.t.is_zero()

    def is_isometry(self) -> bool:
        return self.u.norm_sq() == 1

    def apply(self, z: GaussRational) -> GaussRational:
        w = z.conjugate() if self.conj else z
        return self.u * w + self.t

    def compose(self, other: "PlanarMap") -> "PlanarMap":
        """self after other:  (self.compose(other))(z) = self(other(z))."""
        if self.conj:
            u = self.u * other.u.conjugate()
            t = self.u * other.t.conjugate() + self.t
        else:
            u = self.u * other.u
            t = self.u * other.t + self.t
        return PlanarMap(u, self.conj != other.conj, t)

    def invert(self) -> "PlanarMap":
        """The inverse similitude; round trips exactly."""
        ui = self.u.inverse()
        if self.conj:
            return PlanarMap(ui.conjugate(), True, -(ui * self.t).conjugate())
        return PlanarMap(ui, False, -(ui * self.t))

    def scale_sq(self) -> Fraction:
        """Exact squared contraction factor |u|^2."""
        return self.u.norm_sq()

    def sort_key(self):
        """Canonical lexicographic key (conj, u.re, u.im, t.re, t.im)."""
        return (self.conj, self.u.re, self.u.im, self.t.re, self.t.im)

    def to_floats(self) -> tuple[complex, bool, complex]:
        return self.u.to_complex(), self.conj, self.t.to_complex()

    def __str__(self) -> str:
        bar = "conj(z)" if self.conj else "z"
        return f"({self.u})*{bar}+({self.t})"


def _frac_str(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def map_label(f: PlanarMap) -> str:
    """Short human-readable form like ``-iz+1+i`` used in logs and exports."""
    u, t = f.u, f.t
    z = "z~" if f.conj else "z"
    if u == ONE:
        head = z
    elif u == -ONE:
        head = f"-{z}"
    elif u == I:
        head = f"i{z}"
    elif u == -I:
        head = f"-i{z}"
    else:
        head = f"({_frac_str(u.re)}{'+' if u.im >= 0 else '-'}{_frac_str(abs(u.im))}i){z}"
    parts = [head]
    if t.re != 0:
        parts.append(f"{'+' if t.re > 0 else '-'}{_frac_str(abs(t.re))}")
    if t.im != 0:
        mag = "" if abs(t.im) == 1 else _frac_str(abs(t.im))
        parts.append(f"{'+' if t.im > 0 else '-'}{mag}i")
    return "".join(parts)


@dataclass(frozen=True)
class IfsSpec:
    """A finite iterated function system of equal-factor contracting similitudes."""

    name: str
    maps: tuple[PlanarMap, ...]

    def __post_init__(self):
        if len(self.maps) < 2:
            raise IfsParseError("an IFS needs at least two maps", "maps")
        factors = {f.scale_sq() for f in self.maps}
        if len(factors) != 1:
            raise IfsParseError(
                f"all maps must share one contraction factor; got |u|^2 in "
                f"{{{', '.join(sorted(map(str, factors)))}}}",
                "maps",
            )
        (r2,) = factors
        if r2 >= 1:
            raise IfsParseError(f"contraction factor |u|^2 = {r2} is not < 1", "maps")

    @property
    def m(self) -> int:
        return len(self.maps)

    @property
    def r_sq(self) -> Fraction:
        """Exact squared contraction factor shared by all maps."""
        return self.maps[0].scale_sq()

    @property
    def r(self) -> float:
        return float(self.r_sq) ** 0.5

    def map_at(self, i: int) -> PlanarMap:
        """The i-th map, labels starting at 1."""
        return self.maps[i - 1]


def attractor_radius(spec: IfsSpec) -> Fraction:
    """Exact radius R with attractor contained in the closed disk |z| <= R.

    R = max_i(|re t_i| + |im t_i|) / (1 - r)  with r the common factor.
    The bound needs the true r, which may be irrational; since
    |t| <= |re t|+|im t| =: M, any rational R with M + r*R <= R works.
    We return M / (1 - r_hi) where r_hi is a rational upper bound on r,
    keeping the invariance check  f_i(disk(0,R)) within disk(0,R)  exact.
    """
    M = max(abs(f.t.re) + abs(f.t.im) for f in spec.maps)
    if M == 0:
        return Fraction(0)
    r_hi = _sqrt_upper(spec.r_sq)
    return M / (1 - r_hi)


def _sqrt_upper(q: Fraction) -> Fraction:
    """The exact square root when q is a perfect rational square, else a
    tight rational upper bound (within 1e-12)."""
    num, den = q.numerator, q.denominator
    rn, rd = _isqrt(num), _isqrt(den)
    if rn * rn == num and rd * rd == den:
        return Fraction(rn, rd)
    scale = 10**12
    approx = _isqrt(num * scale * scale // den) + 1
    return Fraction(approx, scale)


def _isqrt(n: int) -> int:
    return math.isqrt(n)


def disk_invariance_holds(spec: IfsSpec, radius: Fraction) -> bool:
    """Exact check that every map sends disk(0, R) into itself.

    f(disk(0,R)) = disk(f(0), r*R), so containment is |t| + r*R <= R,
    verified rationally as  |t|^2 <= (R - r_hi*R)^2  with the same upper
    bound r_hi used to build R.
    """
    r_hi = _sqrt_upper(spec.r_sq)
    margin = radius * (1 - r_hi)
    if margin < 0:
        return False
    m2 = margin * margin
    return all(f.t.norm_sq() <= m2 for f in spec.maps)


# ---------------------------------------------------------------------------
# JSON wire format
# ---------------------------------------------------------------------------

def _parse_rational(value, field: str) -> Fraction:
    if isinstance(value, bool):
        raise IfsParseError("expected an integer or [num, den] pair", field)
    if isinstance(value, int):
        return Fraction(value)
    if (
        isinstance(value, (list, tuple))
        and len(value) == 2
        and all(isinstance(v, int) and not isinstance(v, bool) for v in value)
    ):
        num, den = value
        if den == 0:
            raise IfsParseError("zero denominator", field)
        return Fraction(num, den)
    raise IfsParseError("expected an integer or [num, den] pair", field)


def _parse_gauss(value, field: str) -> GaussRational:
    if not isinstance(value, dict):
        raise IfsParseError("expected an object with re and im", field)
    extra = set(value) - {"re", "im"}
    if extra:
        raise IfsParseError(f"unknown keys {sorted(extra)}", field)
    re = _parse_rational(value.get("re", 0), f"{field}.re")
    im = _parse_rational(value.get("im", 0), f"{field}.im")
    return GaussRational(re, im)


def parse_ifs(data) -> IfsSpec:
    """Parse the JSON object format into an ``IfsSpec``.

    Accepts a dict, a JSON string, or bytes.  Raises ``IfsParseError`` with
    a field location on malformed input.
    """
    if isinstance(data, (str, bytes)):
        try:
            data = json.loads(data)
        except json.JSONDecodeError as e:
            raise IfsParseError(f"invalid JSON: {e}") from e
    if not isinstance(data, dict):
        raise IfsParseError("top level must be an object")
    name = data.get("name")
    if not isinstance(name, str) or not name:
        raise IfsParseError("missing or empty name", "name")
    raw_maps = data.get("maps")
    if not isinstance(raw_maps, list):
        raise IfsParseError("maps must be a list", "maps")
    maps = []
    for k, raw in enumerate(raw_maps):
        field = f"maps[{k}]"
        if not isinstance(raw, dict):
            raise IfsParseError("each map must be an object", field)
        extra = set(raw) - {"u", "conj", "t"}
        if extra:
            raise IfsParseError(f"unknown keys {sorted(extra)}", field)
        if "u" not in raw:
            raise IfsParseError("missing u", field)
        if "t" not in raw:
            raise IfsParseError("missing t", field)
        u = _parse_gauss(raw["u"], f"{field}.u")
        t = _parse_gauss(raw["t"], f"{field}.t")
        conj = raw.get("conj", False)
        if not isinstance(conj, bool):
            raise IfsParseError("conj must be a boolean", f"{field}.conj")
        if u.is_zero():
            raise IfsParseError("u must be nonzero", f"{field}.u")
        if u.norm_sq() >= 1:
            raise IfsParseError(
                f"map is not contracting: |u|^2 = {u.norm_sq()}", f"{field}.u"
            )
        maps.append(PlanarMap(u, conj, t))
    return IfsSpec(name=name, maps=tuple(maps))


def _rational_json(q: Fraction):
    if q.denominator == 1:
        return q.numerator
    return [q.numerator, q.denominator]


def gauss_json(z: GaussRational) -> dict:
    return {"re": _rational_json(z.re), "im": _rational_json(z.im)}


def map_json(f: PlanarMap) -> dict:
    return {"u": gauss_json(f.u), "conj": f.conj, "t": gauss_json(f.t)}


def ifs_json(spec: IfsSpec) -> dict:
    return {"name": spec.name, "maps": [map_json(f) for f in spec.maps]}


def canonical_ifs_text(spec: IfsSpec) -> str:
    """Deterministic serialization used for content hashing and comparison."""
    return json.dumps(ifs_json(spec), sort_keys=True, separators=(",", ":"))


def compose_word(spec: IfsSpec, word: Sequence[int]) -> PlanarMap:
    """f_w = f_{w1} o f_{w2} o ... o f_{wk} for a word of labels 1..m."""
    f = PlanarMap.identity()
    for letter in word:
        f = f.compose(spec.map_at(letter))
    return f


def sort_maps(maps: Iterable[PlanarMap]) -> list[PlanarMap]:
    """Maps in the canonical lexicographic order, for cross-run comparison."""
    return sorted(maps, key=PlanarMap.sort_key)
