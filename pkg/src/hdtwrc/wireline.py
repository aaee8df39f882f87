"""Deterministic bit-pipe schemes on the three-node half-duplex wireline network.

Every directed link carries one bit per step.  A scheme is a list of steps,
each step a set of ``Link(src, dst, bit)``.  Metrics:

* bps: dialog bits delivered to their destination node, per step
* lpb: directed link-uses per delivered bit (a broadcast to two nodes is
  two link-uses)
* npb: transmitter activations (distinct transmitting nodes per step,
  summed over steps) per delivered bit

Bits are delivered once, at the dialog partner of the node that first sent
them; receptions at the relay do not count.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from .errors import HalfDuplexViolation, SchemeParseError, SchemeViolation, UnknownBitViolation

NODES = (1, 2, 3)
PARTNER = {1: 3, 3: 1}


@dataclass(frozen=True, order=True)
class Link:
    src: int
    dst: int
    bit: str

    def __post_init__(self):
        if self.src not in NODES or self.dst not in NODES:
            raise SchemeParseError(f"invalid node id in link {self.src}>{self.dst}")
        if self.src == self.dst:
            raise SchemeParseError(f"self-loop {self.src}>{self.dst}")
        if not self.bit:
            raise SchemeParseError("empty bit label")

    def __str__(self):
        return f"{self.src}>{self.dst}:{self.bit}"


@dataclass(frozen=True)
class BitPipeScheme:
    steps: tuple[frozenset, ...]
    name: str = ""

    def __post_init__(self):
        object.__setattr__(self, "steps", tuple(frozenset(s) for s in self.steps))

    def __len__(self):
        return len(self.steps)

    def origins(self) -> dict[str, int]:
        """Map each bit label to the node that first transmits it."""
        out = {}
        for step in self.steps:
            for link in sorted(step):
                out.setdefault(link.bit, link.src)
        return out

    def then(self, other: "BitPipeScheme") -> "BitPipeScheme":
        """Run ``self`` and then ``other``, keeping the two sets of bit labels apart."""
        a = [frozenset(Link(l.src, l.dst, f"a.{l.bit}") for l in s) for s in self.steps]
        b = [frozenset(Link(l.src, l.dst, f"b.{l.bit}") for l in s) for s in other.steps]
        return BitPipeScheme(tuple(a + b), name=f"{self.name}+{other.name}")

    def to_text(self) -> str:
        return "\n".join(", ".join(str(l) for l in sorted(step)) for step in self.steps) + "\n"


@dataclass(frozen=True)
class SchemeMetrics:
    bps: Fraction
    lpb: Fraction
    npb: Fraction
    steps: int
    delivered: int

    def as_floats(self) -> tuple[float, float, float]:
        return (float(self.bps), float(self.lpb), float(self.npb))


def validate_scheme(s: BitPipeScheme) -> None:
    """Raise a SchemeViolation naming the first offending step."""
    if not s.steps:
        raise SchemeViolation("scheme has no steps")
    known = {n: set() for n in NODES}
    origin = {}
    for k, step in enumerate(s.steps):
        if not step:
            raise SchemeViolation(f"step {k + 1} is empty", step=k)
        srcs = {l.src for l in step}
        dsts = {l.dst for l in step}
        both = srcs & dsts
        if both:
            raise HalfDuplexViolation(
                f"step {k + 1}: node {min(both)} transmits and receives", step=k
            )
        pairs = [(l.src, l.dst) for l in step]
        if len(pairs) != len(set(pairs)):
            raise SchemeViolation(f"step {k + 1}: a link carries more than one bit", step=k)
        new_here = {}
        for l in sorted(step):
            if l.bit in known[l.src]:
                continue
            if l.bit in origin or l.src not in PARTNER:
                raise UnknownBitViolation(
                    f"step {k + 1}: node {l.src} sends bit {l.bit!r} it has not received", step=k
                )
            if new_here.setdefault(l.bit, l.src) != l.src:
                raise UnknownBitViolation(
                    f"step {k + 1}: bit {l.bit!r} originates at two nodes", step=k
                )
        for bit, src in new_here.items():
            origin[bit] = src
            known[src].add(bit)
        # receptions become usable only in later steps
        for l in step:
            known[l.dst].add(l.bit)


def evaluate_scheme(s: BitPipeScheme) -> SchemeMetrics:
    validate_scheme(s)
    origin = s.origins()
    delivered = set()
    link_uses = 0
    activations = 0
    for step in s.steps:
        link_uses += len(step)
        activations += len({l.src for l in step})
        for l in step:
            if PARTNER.get(origin[l.bit]) == l.dst:
                delivered.add(l.bit)
    n_bits = len(delivered)
    if n_bits == 0:
        raise SchemeViolation("scheme delivers no dialog bits")
    return SchemeMetrics(
        bps=Fraction(n_bits, len(s.steps)),
        lpb=Fraction(link_uses, n_bits),
        npb=Fraction(activations, n_bits),
        steps=len(s.steps),
        delivered=n_bits,
    )


def parse_scheme(text: str, name: str = "") -> BitPipeScheme:
    """Parse one step per line, links as ``src>dst:bit`` separated by commas.

    Blank lines and ``#`` comments are ignored.
    """
    steps = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        links = []
        for token in line.split(","):
            token = token.strip()
            try:
                route, bit = token.split(":")
                src, dst = route.split(">")
                links.append(Link(int(src), int(dst), bit.strip()))
            except SchemeParseError as exc:
                raise SchemeParseError(f"line {lineno}: {exc}") from None
            except ValueError:
                raise SchemeParseError(f"line {lineno}: cannot parse link {token!r}") from None
        steps.append(frozenset(links))
    if not steps:
        raise SchemeParseError("scheme file has no steps")
    return BitPipeScheme(tuple(steps), name=name)


def load_scheme(path) -> BitPipeScheme:
    path = Path(path)
    return parse_scheme(path.read_text(), name=path.stem)


_BUILTIN_TEXT = {
    "twc": """
        1>3:b1
        3>1:b2
    """,
    "two-step": """
        1>2:b1, 3>2:b2
        2>1:b2, 2>3:b1
    """,
    "three-step": """
        1>2:b1, 3>2:b2
        2>1:b2, 3>1:b3
        2>3:b1, 1>3:b4
    """,
    # relay broadcasts b1 xor b3; each side strips its own bit
    "alt-three-step": """
        1>2:b1, 1>3:b2
        3>2:b3, 3>1:b4
        2>1:b3, 2>3:b1
    """,
    "four-step": """
        1>2:b1, 1>3:b2
        2>3:b1, 1>3:b3
        3>2:b4, 3>1:b5
        2>1:b4, 3>1:b6
    """,
}

# reference values (bps, lpb, npb); 1.33 read as 4/3
REFERENCE_METRICS = {
    "twc": (Fraction(1), Fraction(1), Fraction(1)),
    "two-step": (Fraction(1), Fraction(2), Fraction(3, 2)),
    "three-step": (Fraction(4, 3), Fraction(3, 2), Fraction(3, 2)),
    "alt-three-step": (Fraction(4, 3), Fraction(3, 2), Fraction(3, 4)),
    "four-step": (Fraction(3, 2), Fraction(4, 3), Fraction(1)),
}


def builtin_schemes() -> dict[str, BitPipeScheme]:
    return {name: parse_scheme(text, name=name) for name, text in _BUILTIN_TEXT.items()}
