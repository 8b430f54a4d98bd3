"""
Nociones de peso.

Una nocion convierte el grafo en el vector de derechos w sobre el que
escalan las reglas justas. Agregar una = escribir el resolver y sumarlo
en NOTIONS; nada mas cambia aguas abajo.
"""

from fractions import Fraction
from typing import TYPE_CHECKING, Callable, Optional

from fairmatch.core.config import settings
from fairmatch.core.errors import InvalidParameterError
from fairmatch.core.rational import GroupVector, as_rational

if TYPE_CHECKING:
    from fairmatch.models.graph import BipartiteGraph
    from fairmatch.services.oracle import OptOracle

Resolver = Callable[["BipartiteGraph", Optional["OptOracle"], Optional[int]], GroupVector]


class Policy:
    NOTIONS: tuple[str, ...] = (
        "egalitarian",   # w_i = 1
        "demographic",   # w_i = |V_i|
        "opportunity",   # w_i = M_i = OPT({i})
        "shapley",       # w_i = phi_i, el punto justo es el punto de Shapley
        "custom",        # w lo pasa quien llama
    )

    # Reglas que necesitan w, y la nocion que usan por defecto.
    RULE_DEFAULT_NOTION: dict[str, str] = {
        "leximin": "egalitarian",
        "fair-optimum": "egalitarian",
    }

    def resolvers(self) -> dict[str, Resolver]:
        return {
            "egalitarian": self._egalitarian,
            "demographic": self._demographic,
            "opportunity": self._opportunity,
            "shapley": self._shapley,
        }

    def weights(
        self,
        notion: str,
        graph: "BipartiteGraph",
        oracle: Optional["OptOracle"] = None,
        custom: Optional[list] = None,
        seed: Optional[int] = None,
    ) -> GroupVector:
        if notion == "custom":
            if custom is None:
                raise InvalidParameterError("custom notion requires explicit weights")
            w = tuple(as_rational(c) for c in custom)
            if len(w) != graph.k:
                raise InvalidParameterError(f"expected {graph.k} weights, got {len(w)}")
            if any(c < 0 for c in w):
                raise InvalidParameterError("weights must be non-negative")
            return w
        resolver = self.resolvers().get(notion)
        if resolver is None:
            raise InvalidParameterError(
                f"unknown weight notion {notion!r}; expected one of {', '.join(self.NOTIONS)}"
            )
        return resolver(graph, oracle, seed)

    @staticmethod
    def _egalitarian(graph: "BipartiteGraph", oracle: Optional["OptOracle"], seed: Optional[int]) -> GroupVector:
        return (Fraction(1),) * graph.k

    @staticmethod
    def _demographic(graph: "BipartiteGraph", oracle: Optional["OptOracle"], seed: Optional[int]) -> GroupVector:
        return tuple(Fraction(n) for n in graph.group_sizes)

    @staticmethod
    def _opportunity(graph: "BipartiteGraph", oracle: Optional["OptOracle"], seed: Optional[int]) -> GroupVector:
        from fairmatch.services.oracle import oracle_for

        return tuple(Fraction(m) for m in oracle_for(graph, oracle).opportunity)

    @staticmethod
    def _shapley(graph: "BipartiteGraph", oracle: Optional["OptOracle"], seed: Optional[int]) -> GroupVector:
        from fairmatch.services.fairness import shapley

        # pasado el limite exacto, entra la estimacion por muestreo
        if graph.k <= settings.SHAPLEY_EXACT_MAX_K:
            return shapley(graph, mode="exact", oracle=oracle)
        return shapley(graph, mode="sampled", seed=seed, oracle=oracle)


# Singleton
policy = Policy()
