"""
Modelo de resultado normalizado.

Los servicios devuelven esto; el orquestador y el CLI lo serializan. Un
punto viaja siempre con la regla que lo produjo, asi un reporte se puede
rastrear sin volver a correr nada.
"""

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Any, Optional

from fairmatch.core.rational import GroupVector
from fairmatch.models.graph import FractionalMatching


class Rule(str, Enum):
    LEXMAX = "lexmax"              # dictadura serial para un orden de prioridad
    LEXIMIN = "leximin"            # waterfilling con pesos
    SHAPLEY = "shapley"            # baricentro de los vertices lexicograficos
    FAIR_OPTIMUM = "fair-optimum"  # punto mas grande sobre el rayo de w


@dataclass(frozen=True)
class MinCut:
    source_side: frozenset[int]  # nodos alcanzables desde la fuente
    capacity: int


@dataclass(frozen=True)
class AdvanceResult:
    t_star: Fraction
    tight_groups: frozenset[int]   # subconjunto del activo, base 0
    iterations: int = 0


@dataclass
class FairSolution:
    rule: Rule
    point: GroupVector
    matching: Optional[FractionalMatching] = None
    sigma: Optional[tuple[int, ...]] = None      # orden de prioridad, base 0
    weights: Optional[GroupVector] = None
    c_star: Optional[Fraction] = None
    tight_set: Optional[frozenset[int]] = None   # conjunto tight maximal en el punto
    detail: dict[str, Any] = field(default_factory=dict)

    @property
    def size(self) -> Fraction:
        return sum(self.point, Fraction(0))


@dataclass(frozen=True)
class ProjectionCertificate:
    leximin: GroupVector
    fair_optimum: GroupVector
    t_star: Fraction              # mayor t con t*w en co(M)
    bracketed: bool               # t*w es miembro y (t* + delta)w no
    center: GroupVector           # h, en coordenadas escaladas
    inner_product: Fraction       # <x - h, h - t*1>, coordenadas escaladas

    @property
    def holds(self) -> bool:
        return self.bracketed and self.inner_product == 0


@dataclass(frozen=True)
class DecreasingCheck:
    holds: bool
    sigma: Optional[tuple[int, ...]] = None  # orden que viola, base 0
    index: Optional[int] = None              # primera posicion donde M^sigma crece
    rates: Optional[GroupVector] = None


@dataclass(frozen=True)
class RhoBound:
    tight: Fraction
    relaxed: Fraction


@dataclass
class PofReport:
    notion: str
    w: GroupVector
    opt: int
    fair_size: Fraction
    pof: Optional[Fraction]        # None sii infinito
    c_star: Fraction
    argmin: frozenset[int]
    additive_gap: Fraction
    rho: Optional[Fraction] = None
    integral: bool = False
    bounds: dict[str, Optional[Fraction]] = field(default_factory=dict)
    decreasing: Optional[DecreasingCheck] = None

    @property
    def infinite(self) -> bool:
        return self.pof is None
