"""Maps between lattice positions and multi-qubit basis strings.

Bit strings are written as in the position tables: the leftmost character is
the first position qubit. Four encodings ship:

``TABLE1`` / ``TABLE2``
    15 positions -7..7 on 4 bits; the last bit marks parity.
``NAIVE``
    7 positions 0..6 on 4 bits, one bit flip per unit step.
``HAMMING``
    positions 0..4; a position is the number of 1 bits, so every string decodes.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass, field
from itertools import combinations

__all__ = [
    "EncodingName",
    "Encoding",
    "OutOfDomain",
    "UnmappedBitString",
    "ValidationReport",
    "TABLE1",
    "TABLE2",
    "NAIVE",
    "HAMMING",
    "table1_family",
    "get_encoding",
    "encode",
    "decode",
    "validate",
    "hamming_canonical",
]


class OutOfDomain(ValueError):
    pass


class UnmappedBitString(ValueError):
    pass


class EncodingName(str, enum.Enum):
    TABLE1 = "table1"
    TABLE2 = "table2"
    HAMMING = "hamming"
    NAIVE = "naive"


@dataclass(frozen=True)
class Encoding:
    """A position register layout.

    ``table`` lists ``(x, bits)`` rows for injective encodings and is empty for
    HAMMING, whose positions are weights.
    """

    name: EncodingName
    width: int
    table: tuple[tuple[int, str], ...] = ()
    _fwd: dict = field(default=None, init=False, repr=False, compare=False)
    _inv: dict = field(default=None, init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "name", EncodingName(self.name))
        object.__setattr__(self, "_fwd", dict(self.table))
        object.__setattr__(self, "_inv", {b: x for x, b in self.table})

    @property
    def injective(self) -> bool:
        return self.name is not EncodingName.HAMMING

    @property
    def domain(self) -> tuple[int, ...]:
        if self.name is EncodingName.HAMMING:
            return tuple(range(self.width + 1))
        return tuple(sorted(self._fwd))

    def image(self) -> frozenset[str]:
        if self.name is EncodingName.HAMMING:
            return frozenset(format(i, f"0{self.width}b") for i in range(2**self.width))
        return frozenset(self._inv)

    def encode(self, x: int) -> str:
        if self.name is EncodingName.HAMMING:
            return hamming_canonical(x, width=self.width)
        try:
            return self._fwd[x]
        except KeyError:
            raise OutOfDomain(f"{self.name.value}: position {x} not in {self.domain[0]}..{self.domain[-1]}") from None

    def decode(self, bits: str) -> int:
        if len(bits) != self.width or set(bits) - {"0", "1"}:
            raise UnmappedBitString(f"{self.name.value}: {bits!r} is not a {self.width}-bit string")
        if self.name is EncodingName.HAMMING:
            return bits.count("1")
        try:
            return self._inv[bits]
        except KeyError:
            raise UnmappedBitString(f"{self.name.value}: no position maps to {bits}") from None

    def to_json(self) -> str:
        rows = [[x, b] for x, b in self.table] if self.table else [[x, self.encode(x)] for x in self.domain]
        return json.dumps({"name": self.name.value, "width": self.width, "map": rows})

    @classmethod
    def from_json(cls, text: str) -> "Encoding":
        data = json.loads(text)
        name = EncodingName(data["name"])
        if name is EncodingName.HAMMING:
            return cls(name, int(data["width"]))
        return cls(name, int(data["width"]), tuple((int(x), str(b)) for x, b in data["map"]))


TABLE1 = Encoding(
    EncodingName.TABLE1,
    4,
    (
        (0, "0000"),
        (1, "0001"), (-1, "0011"),
        (2, "0110"), (-2, "0010"),
        (3, "0111"), (-3, "0101"),
        (4, "1100"), (-4, "0100"),
        (5, "1101"), (-5, "1111"),
        (6, "1010"), (-6, "1110"),
        (7, "1011"), (-7, "1001"),
    ),
)

TABLE2 = Encoding(
    EncodingName.TABLE2,
    4,
    (
        (0, "0000"),
        (1, "0001"), (-1, "0111"),
        (2, "0010"), (-2, "0110"),
        (3, "0011"), (-3, "0101"),
        (4, "1100"), (-4, "0100"),
        (5, "1101"), (-5, "1011"),
        (6, "1110"), (-6, "1010"),
        (7, "1111"), (-7, "1001"),
    ),
)

NAIVE = Encoding(
    EncodingName.NAIVE,
    4,
    (
        (0, "0000"),
        (1, "1000"),
        (2, "1100"),
        (3, "1110"),
        (4, "1111"),
        (5, "0111"),
        (6, "1011"),
    ),
)

HAMMING = Encoding(EncodingName.HAMMING, 4)


def table1_family(width: int) -> Encoding:
    """Parity-marked layout of TABLE1 generalised to ``width`` bits.

    Sites 2k and 2k+1 share a prefix ``k ^ (k << 1)`` (k in two's complement on
    ``width - 1`` bits); the last bit is the parity. Width 4 reproduces TABLE1.
    """
    if width < 1:
        raise ValueError("width must be at least 1")
    m = width - 1
    reach = 2 ** (width - 1) - 1
    rows = []
    for x in sorted(range(-reach, reach + 1), key=lambda v: (abs(v), v < 0)):
        k = (x // 2) % (2**m) if m else 0
        prefix = (k ^ (k << 1)) % (2**m) if m else 0
        bits = (format(prefix, f"0{m}b") if m else "") + str(x % 2)
        rows.append((x, bits))
    return Encoding(EncodingName.TABLE1, width, tuple(rows))


def get_encoding(name: str | EncodingName) -> Encoding:
    return {
        EncodingName.TABLE1: TABLE1,
        EncodingName.TABLE2: TABLE2,
        EncodingName.NAIVE: NAIVE,
        EncodingName.HAMMING: HAMMING,
    }[EncodingName(name)]


def encode(enc: Encoding, x: int) -> str:
    return enc.encode(x)


def decode(enc: Encoding, bits: str) -> int:
    return enc.decode(bits)


# Weight-class representatives after the ancilla merge, keyed by the number of
# walk steps. Each entry gives the representative of the first ``steps - 1``
# position bits for each weight; the ``steps``-th bit carries the coin value.
_MERGED_PREFIX = {
    1: {0: ""},
    2: {0: "0", 1: "1"},
    3: {0: "00", 1: "01", 2: "11"},
    4: {0: "000", 1: "010", 2: "011", 3: "111"},
}


def hamming_canonical(x: int, steps: int = 4, coin: int | None = None, width: int = 4) -> str:
    """Representative string of weight ``x`` after an ``steps``-step merge.

    After n steps of the interference-free circuit, position bit n equals the
    coin and bits beyond n are clear, so a class is fixed by (coin, x). With
    ``coin`` omitted, coin 0 is used unless the weight forces coin 1.
    """
    if not 0 <= x <= width:
        raise OutOfDomain(f"hamming: position {x} not in 0..{width}")
    if steps not in _MERGED_PREFIX or steps > width:
        raise ValueError(f"no merged representatives for {steps} steps on {width} bits")
    if steps == 0:
        if x:
            raise OutOfDomain("only x=0 is reachable after 0 steps")
        return "0" * width
    if coin is None:
        coin = 0 if x <= steps - 1 else 1
    k = x - coin
    prefixes = _MERGED_PREFIX[steps]
    if k not in prefixes:
        raise OutOfDomain(f"hamming: weight {x} with coin {coin} unreachable after {steps} steps")
    return prefixes[k] + str(coin) + "0" * (width - steps)


@dataclass
class ValidationReport:
    name: str
    passed: bool
    positions: int
    injective: bool = True
    collisions: list[tuple[int, int, str]] = field(default_factory=list)
    width_ok: bool = True
    parity_ok: bool | None = None
    parity_violations: list[int] = field(default_factory=list)
    class_sizes: list[int] | None = None


def validate(enc: Encoding) -> ValidationReport:
    """Check injectivity, widths, the parity marker and the weight census."""
    if enc.name is EncodingName.HAMMING:
        sizes = [0] * (enc.width + 1)
        for bits in enc.image():
            sizes[enc.decode(bits)] += 1
        ok = sum(sizes) == 2**enc.width
        return ValidationReport(enc.name.value, ok, enc.width + 1, injective=False, class_sizes=sizes)

    report = ValidationReport(enc.name.value, True, len(enc.table))
    for (xa, ba), (xb, bb) in combinations(enc.table, 2):
        if ba == bb:
            report.collisions.append((xa, xb, ba))
    report.injective = not report.collisions
    report.width_ok = all(len(b) == enc.width and not set(b) - {"0", "1"} for _, b in enc.table)
    if enc.name in (EncodingName.TABLE1, EncodingName.TABLE2):
        report.parity_violations = [x for x, b in enc.table if int(b[-1]) != abs(x) % 2]
        report.parity_ok = not report.parity_violations
    report.passed = report.injective and report.width_ok and report.parity_ok is not False
    return report
