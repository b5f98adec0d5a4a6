from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator
from typing import Any, Dict, List, Optional, Tuple, Union
from fractions import Fraction
from itertools import combinations
from math import comb
from enum import Enum

import networkx as nx


class Notion(str, Enum):
    PROPER = "proper"
    CF = "CF"
    UM = "UM"
    COLOURFUL = "t-colourful"
    STRONG_CF = "t-strong-CF"
    T_UM = "t-UM"

    @property
    def parametric(self) -> bool:
        return self in (Notion.COLOURFUL, Notion.STRONG_CF, Notion.T_UM)

    @property
    def ordered(self) -> bool:
        """UM notions read integer colours as an order."""
        return self in (Notion.UM, Notion.T_UM)


class Location(str, Enum):
    INTERIOR = "interior"
    LEFT = "left"
    RIGHT = "right"
    BOTTOM = "bottom"
    TOP = "top"
    BOTTOM_LEFT = "bottom-left"
    BOTTOM_RIGHT = "bottom-right"
    TOP_LEFT = "top-left"
    TOP_RIGHT = "top-right"
    NOT_APPLICABLE = "n/a"


class OrderBit(str, Enum):
    LEFT_OF = "left-of"
    RIGHT_OF = "right-of"
    NOT_APPLICABLE = "n/a"


class Hypergraph(BaseModel):
    """Vertices 0..n-1 and a canonical, deduplicated tuple of hyperedges."""

    model_config = ConfigDict(frozen=True)

    n: int = Field(..., ge=0)
    hyperedges: Tuple[Tuple[int, ...], ...] = ()

    @model_validator(mode="before")
    @classmethod
    def canonicalize(cls, data: Any) -> Any:
        if not isinstance(data, dict) or not isinstance(data.get("n"), int):
            return data
        n = data["n"]
        canon = set()
        for edge in data.get("hyperedges", ()):
            members = tuple(sorted(set(edge)))
            if not members:
                raise ValueError("hyperedges must be nonempty")
            if members[0] < 0 or members[-1] >= n:
                raise ValueError(f"hyperedge {members} is not a subset of 0..{n - 1}")
            canon.add(members)
        return {**data, "hyperedges": tuple(sorted(canon))}

    @classmethod
    def from_canonical(cls, n: int, hyperedges) -> "Hypergraph":
        """Build from hyperedges already sorted, deduplicated and in range."""
        return cls.model_construct(n=n, hyperedges=tuple(hyperedges))

    @property
    def edge_count(self) -> int:
        return len(self.hyperedges)

    def edges_of_size_at_most(self, k: int) -> List[Tuple[int, ...]]:
        return [h for h in self.hyperedges if len(h) <= k]


class Graph(BaseModel):
    model_config = ConfigDict(frozen=True)

    n: int = Field(..., ge=0)
    edges: Tuple[Tuple[int, int], ...] = ()

    @model_validator(mode="before")
    @classmethod
    def canonicalize(cls, data: Any) -> Any:
        if not isinstance(data, dict) or not isinstance(data.get("n"), int):
            return data
        n = data["n"]
        canon = set()
        for u, v in data.get("edges", ()):
            if u == v:
                raise ValueError(f"self-loop at {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) outside 0..{n - 1}")
            canon.add((min(u, v), max(u, v)))
        return {**data, "edges": tuple(sorted(canon))}

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def to_networkx(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(range(self.n))
        g.add_edges_from(self.edges)
        return g


class VertexColouring(BaseModel):
    model_config = ConfigDict(frozen=True)

    colours: Tuple[int, ...]

    @field_validator("colours")
    @classmethod
    def positive(cls, colours: Tuple[int, ...]) -> Tuple[int, ...]:
        if any(c < 1 for c in colours):
            raise ValueError("colours must be positive integers")
        return colours

    @property
    def n(self) -> int:
        return len(self.colours)

    @property
    def colours_used(self) -> int:
        return len(set(self.colours))

    @property
    def max_colour(self) -> int:
        return max(self.colours, default=0)

    def __getitem__(self, vertex: int) -> int:
        return self.colours[vertex]


class SubsetColouring(BaseModel):
    """Colour tokens on every sorted t-subset of 0..n-1."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    t: int = Field(..., ge=1)
    n: int = Field(..., ge=0)
    assignment: Dict[Tuple[int, ...], Any]

    @model_validator(mode="after")
    def covers_all_subsets(self) -> "SubsetColouring":
        if len(self.assignment) != comb(self.n, self.t):
            raise ValueError(f"expected {comb(self.n, self.t)} t-subsets, got {len(self.assignment)}")
        for subset in self.assignment:
            if len(subset) != self.t or list(subset) != sorted(set(subset)):
                raise ValueError(f"{subset} is not a sorted {self.t}-subset")
            if subset and (subset[0] < 0 or subset[-1] >= self.n):
                raise ValueError(f"{subset} is outside 0..{self.n - 1}")
        return self

    @classmethod
    def from_function(cls, n: int, t: int, token_of) -> "SubsetColouring":
        return cls(t=t, n=n, assignment={s: token_of(s) for s in combinations(range(n), t)})

    @property
    def tokens_used(self) -> int:
        return len(set(self.assignment.values()))

    def __getitem__(self, subset: Tuple[int, ...]) -> Any:
        return self.assignment[subset]


class Verdict(BaseModel):
    valid: bool
    counterexample: Optional[Tuple[int, ...]] = None
    detail: Optional[str] = None

    def __bool__(self) -> bool:
        return self.valid


class PointSet(BaseModel):
    """n points on the n x n grid with distinct x- and y-ranks."""

    model_config = ConfigDict(frozen=True)

    points: Tuple[Tuple[int, int], ...]

    @field_validator("points")
    @classmethod
    def rank_permutation(cls, points: Tuple[Tuple[int, int], ...]) -> Tuple[Tuple[int, int], ...]:
        expected = list(range(1, len(points) + 1))
        if sorted(p[0] for p in points) != expected or sorted(p[1] for p in points) != expected:
            raise ValueError("coordinates must be a rank permutation of 1..n on each axis")
        return points

    @property
    def n(self) -> int:
        return len(self.points)

    def x(self, vertex: int) -> int:
        return self.points[vertex][0]

    def y(self, vertex: int) -> int:
        return self.points[vertex][1]


def _as_fraction(value: Any) -> Fraction:
    return value if isinstance(value, Fraction) else Fraction(value)


class Rect(BaseModel):
    """Closed axis-parallel rectangle with exact rational boundaries."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    xlo: Fraction
    xhi: Fraction
    ylo: Fraction
    yhi: Fraction

    @field_validator("xlo", "xhi", "ylo", "yhi", mode="before")
    @classmethod
    def exact(cls, value: Any) -> Fraction:
        return _as_fraction(value)

    @model_validator(mode="after")
    def ordered(self) -> "Rect":
        if self.xlo > self.xhi or self.ylo > self.yhi:
            raise ValueError("rectangle boundaries out of order")
        return self

    @property
    def width(self) -> Fraction:
        return self.xhi - self.xlo

    @property
    def height(self) -> Fraction:
        return self.yhi - self.ylo

    def contains(self, x, y) -> bool:
        return self.xlo <= x <= self.xhi and self.ylo <= y <= self.yhi

    def within(self, other: "Rect") -> bool:
        return (other.xlo <= self.xlo and self.xhi <= other.xhi
                and other.ylo <= self.ylo and self.yhi <= other.yhi)

    def ratio_class(self) -> Optional[int]:
        """Index i with width == 2**i * height, or None."""
        if self.width <= 0 or self.height <= 0:
            return None
        ratio = self.width / self.height
        if ratio.numerator == 1 and ratio.denominator & (ratio.denominator - 1) == 0:
            return -(ratio.denominator.bit_length() - 1)
        if ratio.denominator == 1 and ratio.numerator & (ratio.numerator - 1) == 0:
            return ratio.numerator.bit_length() - 1
        return None


class Disc(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    cx: Fraction
    cy: Fraction
    radius_sq: Fraction

    @field_validator("cx", "cy", "radius_sq", mode="before")
    @classmethod
    def exact(cls, value: Any) -> Fraction:
        return _as_fraction(value)

    @field_validator("radius_sq")
    @classmethod
    def positive(cls, value: Fraction) -> Fraction:
        if value <= 0:
            raise ValueError("radius squared must be positive")
        return value

    def contains(self, x, y) -> bool:
        return (x - self.cx) ** 2 + (y - self.cy) ** 2 <= self.radius_sq


class QCode(BaseModel):
    """Constant-size descriptor of a t-subset: fields a..d of the rectangle colouring."""

    model_config = ConfigDict(frozen=True)

    a: int = Field(..., ge=1, le=2)
    b: int = Field(..., ge=1, le=3)  # 3 stands for "three or more"
    c: Location
    d: OrderBit

    @model_validator(mode="after")
    def applicability(self) -> "QCode":
        if (self.c != Location.NOT_APPLICABLE) != (self.a == 1):
            raise ValueError("location is recorded iff the minimum colour is unique in S")
        if (self.d != OrderBit.NOT_APPLICABLE) != (self.a == 1 and self.b == 2):
            raise ValueError("order bit is recorded iff a == 1 and b == 2")
        return self


class StarHypergraphParams(BaseModel):
    n: int
    t: int = Field(..., ge=2)

    @model_validator(mode="after")
    def has_hyperedges(self) -> "StarHypergraphParams":
        if self.n < self.t + 2:
            raise ValueError(f"star family needs n >= t + 2, got n={self.n}, t={self.t}")
        return self


class PeelStep(BaseModel):
    """One iteration of the meta-algorithm: survivors and their aux colours."""

    iteration: int
    survivors: Tuple[int, ...]
    aux: Tuple[int, ...]
    removed: Tuple[int, ...]


# --- CLI documents ---

class Family(str, Enum):
    INTERVALS = "intervals"
    RECTANGLES = "rectangles"
    DISCS = "discs"
    STAR = "star"
    COMPLETE = "complete"
    CUSTOM = "custom"


class Algorithm(str, Enum):
    T_UM = "t-um"
    T_UM_SUM = "t-um+sum"
    T_STRONG_TUPLE = "t-strong+tuple"
    UNION_PAIRS = "union-pairs"
    INTERVAL_UNION = "interval-union"
    RECT_SUBSET = "rect-subset"


class InstanceFile(BaseModel):
    family: Family
    n: int = Field(..., ge=1)
    t: int = Field(2, ge=1)
    seed: int = 0
    hyperedges: Optional[List[List[int]]] = None
    points: Optional[List[Tuple[Union[int, float], Union[int, float]]]] = None

    @model_validator(mode="after")
    def family_payload(self) -> "InstanceFile":
        if self.family == Family.CUSTOM and self.hyperedges is None:
            raise ValueError("custom instances need an explicit hyperedge list")
        if self.points is not None and len(self.points) != self.n:
            raise ValueError(f"expected {self.n} points, got {len(self.points)}")
        return self


class TraceSummary(BaseModel):
    iteration: int
    survivors: int
    aux_colours: int
    removed: int


class RunReport(BaseModel):
    instance: InstanceFile
    algorithm: str
    notion: Optional[str] = None
    t: Optional[int] = None
    colours_used: int
    valid: bool
    verification: str = "exhaustive"
    counterexample: Optional[List[int]] = None
    optimum: Optional[int] = None
    edges_of_G: Optional[int] = None
    wall_time_ms: Optional[float] = None
    trace: Optional[List[TraceSummary]] = None
    colouring: Optional[Dict[str, Any]] = None


class BenchRow(BaseModel):
    family: str
    n: int
    t: int
    seed: int
    algorithm: str
    tokens: int
    edges_of_G: Optional[int] = None
    valid: bool
    millis: float


class RectColouringResult(BaseModel):
    """Everything the rectangle t-subset colouring computes along the way."""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    tokens: SubsetColouring
    vertex_colouring: VertexColouring
    graph: Graph
    graph_colouring: VertexColouring
    trace: List[PeelStep]
