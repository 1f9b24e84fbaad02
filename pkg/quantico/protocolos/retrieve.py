"""Protocolos Arthur-Merlin de recuperação: um ponto (R1) e dois pontos (R2).

Alice mede o estado de avanço |Ψ⟩ e obtém (z, Ã(z)); Merlin responde com
valores sobre a reta (ou plano) pedida, descrita apenas pelos pontos
marcados e pela forma canônica do conjunto, de modo que a resposta não
pode depender de z.
"""

import logging
from abc import ABC, abstractmethod
from collections import defaultdict
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from ..algebra.geom import (
    AffineSubspace,
    Line,
    Point,
    all_points,
    canonical_coordinates,
    canonical_line,
    canonical_subspace,
    indices_of,
    line_through,
    plane_through,
)
from ..algebra.gf import FieldParams
from ..algebra.mpoly import (
    DataTable,
    LdeParams,
    MultiPoly,
    fit_multivariate,
    fit_univariate,
    interpolate_lde,
    monomials,
)
from ..core.aleatorio import keyed_rng
from ..core.exceptions import ParameterError, ResourceError
from .qsim import QuantumState, measure_all

logger = logging.getLogger(__name__)

MAX_OUTCOMES: int = 1 << 16

ADVERSARY_NAMES: Tuple[str, ...] = (
    "honest",
    "constant-shift",
    "point-anchored",
    "random-low-degree",
    "random-garbage",
    "targeted-w-flip",
)


@dataclass(frozen=True)
class Verdict:
    """Veredito de Alice: value(x), pair(x, y) ou Err.

    Examples:
        >>> str(Verdict.value(5))
        'value(5)'
        >>> Verdict.parse("pair(1,2)") == Verdict.pair(1, 2)
        True
    """

    kind: str
    values: Tuple[int, ...] = ()

    @classmethod
    def value(cls, x: int) -> "Verdict":
        return cls("value", (int(x),))

    @classmethod
    def pair(cls, x: int, y: int) -> "Verdict":
        return cls("pair", (int(x), int(y)))

    @classmethod
    def err(cls) -> "Verdict":
        return cls("err")

    @property
    def is_err(self) -> bool:
        return self.kind == "err"

    def __str__(self) -> str:
        if self.is_err:
            return "Err"
        return f"{self.kind}({','.join(str(v) for v in self.values)})"

    @classmethod
    def parse(cls, text: str) -> "Verdict":
        texto = text.strip()
        if texto == "Err":
            return cls.err()
        for kind, aridade in (("value", 1), ("pair", 2)):
            if texto.startswith(kind + "(") and texto.endswith(")"):
                partes = texto[len(kind) + 1 : -1].split(",")
                if len(partes) == aridade:
                    return cls(kind, tuple(int(p) for p in partes))
        raise ParameterError(f"Veredito inválido: {text!r}")


@dataclass(frozen=True)
class R1Query:
    """Pedido de R1: ponto marcado w e a reta canônica que o contém."""

    w: Point
    line: Line

    @property
    def marked(self) -> Tuple[Point, ...]:
        return (self.w,)

    @property
    def space(self) -> AffineSubspace:
        return self.line.as_subspace()


@dataclass(frozen=True)
class R2Query:
    """Pedido de R2: pontos marcados (w, w2) e o plano em forma canônica."""

    w: Point
    w2: Point
    plane: AffineSubspace

    @property
    def marked(self) -> Tuple[Point, ...]:
        return (self.w, self.w2)

    @property
    def space(self) -> AffineSubspace:
        return self.plane


Query = Union[R1Query, R2Query]


def _query_key(query: Query) -> List[int]:
    espaco = query.space
    chave: List[int] = [len(query.marked)]
    for p in query.marked:
        chave.extend(p)
    chave.extend(espaco.base)
    for v in espaco.dirs:
        chave.extend(v)
    return chave


class MerlinStrategy(ABC):
    """Estratégia determinística de Merlin: pedido -> valores em cada ponto."""

    name: str = "strategy"

    @abstractmethod
    def answer(self, query: Query) -> Dict[Point, int]:
        """Valores atribuídos a todos os pontos do conjunto pedido."""
        pass

    def __repr__(self) -> str:
        return f"{type(self).__name__}(name={self.name!r})"


class FunctionStrategy(MerlinStrategy):
    """Estratégia definida por uma função arbitrária do pedido."""

    def __init__(self, name: str, fn: Callable[[Query], Dict[Point, int]]):
        self.name = name
        self._fn = fn

    def answer(self, query: Query) -> Dict[Point, int]:
        return self._fn(query)


class _LdeStrategy(MerlinStrategy):
    """Base das estratégias que partem da restrição honesta de Ã."""

    def __init__(self, lde: MultiPoly):
        self.lde = lde
        self.field = lde.field
        self._table = lde.evaluation_grid()

    def _honest(self, query: Query) -> Tuple[np.ndarray, np.ndarray]:
        pontos = query.space.points_array()
        return pontos, self._table[indices_of(self.field, pontos)]

    def _bump(self, query: Query, pontos: np.ndarray, raizes: Sequence[int]) -> np.ndarray:
        """λ com λ(w) = 1 que se anula onde L(p) ∈ raizes.

        L(p) é a primeira coordenada canônica de p relativa a w, logo
        grau(λ) = len(raizes).
        """
        f = self.field
        espaco = query.space
        coords = canonical_coordinates(espaco, pontos)[:, 0]
        origem = canonical_coordinates(espaco, [query.marked[0]])[0, 0]
        relativa = coords ^ origem
        numerador = np.ones_like(relativa)
        denominador = 1
        for alfa in raizes:
            numerador = f.mul_array(numerador, relativa ^ alfa)
            denominador = f.mul(denominador, alfa)
        return f.mul_array(numerador, f.inv(denominador))

    @staticmethod
    def _as_dict(pontos: np.ndarray, valores: np.ndarray) -> Dict[Point, int]:
        return {tuple(int(x) for x in p): int(v) for p, v in zip(pontos, valores)}


class HonestStrategy(_LdeStrategy):
    """Responde com a restrição de Ã ao conjunto pedido."""

    name = "honest"

    def answer(self, query: Query) -> Dict[Point, int]:
        pontos, valores = self._honest(query)
        return self._as_dict(pontos, valores)


class ConstantShiftStrategy(_LdeStrategy):
    """g = Ã|_ℓ + c: preserva o grau, mas falha na checagem em z."""

    name = "constant-shift"

    def __init__(self, lde: MultiPoly, c: int):
        super().__init__(lde)
        self.c = self.field.check(c)

    def answer(self, query: Query) -> Dict[Point, int]:
        pontos, valores = self._honest(query)
        return self._as_dict(pontos, valores ^ self.c)


class PointAnchoredStrategy(_LdeStrategy):
    """g = Ã + c·λ, λ afim com λ(w) = 1 e nula no ponto âncora L(p) = 1."""

    name = "point-anchored"

    def __init__(self, lde: MultiPoly, c: int):
        super().__init__(lde)
        self.c = self.field.check(c)

    def answer(self, query: Query) -> Dict[Point, int]:
        pontos, valores = self._honest(query)
        lam = self._bump(query, pontos, [1])
        return self._as_dict(pontos, valores ^ self.field.mul_array(lam, self.c))


class TargetedWFlipStrategy(_LdeStrategy):
    """g(w) = Ã(w) + c e g = Ã em r pontos do conjunto, com grau r.

    É a trapaça ótima de grau r em R1: vence exatamente quando z cai num
    dos r pontos em que g coincide com Ã.
    """

    name = "targeted-w-flip"

    def __init__(self, lde: MultiPoly, r: int, c: int):
        super().__init__(lde)
        self.c = self.field.check(c)
        self.r = max(1, min(r, self.field.order - 1))

    def answer(self, query: Query) -> Dict[Point, int]:
        pontos, valores = self._honest(query)
        lam = self._bump(query, pontos, list(range(1, self.r + 1)))
        return self._as_dict(pontos, valores ^ self.field.mul_array(lam, self.c))


class RandomLowDegreeStrategy(MerlinStrategy):
    """Polinômio aleatório de grau total <= r, sorteado por pedido."""

    name = "random-low-degree"

    def __init__(self, field: FieldParams, r: int, seed: int):
        self.field = field
        self.r = r
        self.seed = seed

    def answer(self, query: Query) -> Dict[Point, int]:
        espaco = query.space
        k = espaco.num_params
        rng = keyed_rng(self.seed, _query_key(query))
        q = self.field.order
        exps = monomials(k, q - 1, self.r)
        coefs = rng.integers(0, q, size=len(exps))
        poly = MultiPoly(self.field, k, dict(zip(exps, (int(c) for c in coefs))))
        pontos = espaco.points_array()
        valores = poly.evaluation_table(canonical_coordinates(espaco, pontos))
        return {tuple(int(x) for x in p): int(v) for p, v in zip(pontos, valores)}


class RandomGarbageStrategy(MerlinStrategy):
    """Valores uniformes por ponto, sorteados por pedido."""

    name = "random-garbage"

    def __init__(self, field: FieldParams, seed: int):
        self.field = field
        self.seed = seed

    def answer(self, query: Query) -> Dict[Point, int]:
        rng = keyed_rng(self.seed, _query_key(query))
        pontos = query.space.points_array()
        valores = rng.integers(0, self.field.order, size=len(pontos))
        return {tuple(int(x) for x in p): int(v) for p, v in zip(pontos, valores)}


def honest_strategy(lde: MultiPoly) -> MerlinStrategy:
    """Merlin honesto: restrição de lde ao conjunto pedido."""
    return HonestStrategy(lde)


def adversary_suite(
    lde: MultiPoly,
    r: int,
    rng: np.random.Generator,
    names: Optional[Sequence[str]] = None,
) -> List[MerlinStrategy]:
    """Estratégias nomeadas para experimentos de robustez.

    Args:
        lde: Polinômio Ã do estado de avanço.
        r: Limite de grau usado por Alice.
        rng: Gerador para c e para as sementes das estratégias aleatórias.
        names: Subconjunto de ADVERSARY_NAMES (todas quando None).

    Raises:
        ParameterError: Se algum nome for desconhecido.
    """
    escolhidos = list(names) if names is not None else list(ADVERSARY_NAMES)
    desconhecidos = [n for n in escolhidos if n not in ADVERSARY_NAMES]
    if desconhecidos:
        raise ParameterError(f"Estratégias desconhecidas: {', '.join(desconhecidos)}")
    f = lde.field
    c = int(rng.integers(1, f.order)) if f.order > 1 else 1
    seed = int(rng.integers(0, 2 ** 32))
    construtores: Dict[str, Callable[[], MerlinStrategy]] = {
        "honest": lambda: HonestStrategy(lde),
        "constant-shift": lambda: ConstantShiftStrategy(lde, c),
        "point-anchored": lambda: PointAnchoredStrategy(lde, c),
        "random-low-degree": lambda: RandomLowDegreeStrategy(f, r, seed),
        "random-garbage": lambda: RandomGarbageStrategy(f, seed + 1),
        "targeted-w-flip": lambda: TargetedWFlipStrategy(lde, r, c),
    }
    return [construtores[n]() for n in escolhidos]


def _values_on(answer: Dict[Point, int], pontos: np.ndarray) -> Optional[List[int]]:
    valores = []
    for p in pontos:
        v = answer.get(tuple(int(x) for x in p))
        if v is None:
            return None
        valores.append(int(v))
    return valores


def verdict_for_outcome(
    field: FieldParams,
    w: Sequence[int],
    z: Sequence[int],
    y: int,
    strategy: MerlinStrategy,
    r: int,
) -> Verdict:
    """Parte determinística de R1, dado o resultado (z, y) da medição.

    Com z = w Alice já conhece Ã(w) e conclui value(y) sem consultar Merlin.
    """
    w = tuple(int(x) for x in w)
    z = tuple(int(x) for x in z)
    if z == w:
        return Verdict.value(y)
    reta = line_through(field, w, z)
    resposta = strategy.answer(R1Query(w, canonical_line(reta)))
    valores = _values_on(resposta, reta.points_array())
    if valores is None:
        return Verdict.err()
    g = fit_univariate(field, valores, r)
    if g is None or g.evaluate(1) != y:
        return Verdict.err()
    return Verdict.value(g.evaluate(0))


def verdict_for_outcome_r2(
    field: FieldParams,
    w: Sequence[int],
    w2: Sequence[int],
    z: Sequence[int],
    y: int,
    strategy: MerlinStrategy,
    r: int,
) -> Verdict:
    """Parte determinística de R2.

    Se z coincide com um dos pontos marcados, o valor medido é usado para
    esse ponto e o outro é recuperado por R1 ancorado no mesmo z.
    """
    w = tuple(int(x) for x in w)
    w2 = tuple(int(x) for x in w2)
    z = tuple(int(x) for x in z)
    if z in (w, w2):
        outro = w2 if z == w else w
        parcial = verdict_for_outcome(field, outro, z, y, strategy, r)
        if parcial.is_err:
            return parcial
        if z == w:
            return Verdict.pair(y, parcial.values[0])
        return Verdict.pair(parcial.values[0], y)
    plano = plane_through(field, w, w2, z)
    resposta = strategy.answer(R2Query(w, w2, canonical_subspace(plano)))
    valores = _values_on(resposta, plano.points_array())
    if valores is None:
        return Verdict.err()
    g = fit_multivariate(field, 2, valores, r)
    if g is None or g.evaluate((1, 0)) != y:
        return Verdict.err()
    return Verdict.pair(g.evaluate((0, 0)), g.evaluate((0, 1)))


def run_r1(
    state: QuantumState,
    w: Sequence[int],
    strategy: MerlinStrategy,
    r: int,
    rng: np.random.Generator,
) -> Verdict:
    """Uma execução de R1: mede |Ψ⟩, pede a reta por w e z, checa e conclui g(0)."""
    z, y = measure_all(state, rng)
    veredito = verdict_for_outcome(state.field, w, z, y, strategy, r)
    logger.debug("R1: z=%s y=%d -> %s", z, y, veredito)
    return veredito


def run_r2(
    state: QuantumState,
    w: Sequence[int],
    w2: Sequence[int],
    strategy: MerlinStrategy,
    r: int,
    rng: np.random.Generator,
) -> Verdict:
    """Uma execução de R2 sobre o plano por w, w2 e o ponto medido.

    Raises:
        ParameterError: Se w = w2.
    """
    if tuple(w) == tuple(w2):
        raise ParameterError("R2 exige pontos marcados distintos")
    z, y = measure_all(state, rng)
    veredito = verdict_for_outcome_r2(state.field, w, w2, z, y, strategy, r)
    logger.debug("R2: z=%s y=%d -> %s", z, y, veredito)
    return veredito


def retrieve_many(
    state: QuantumState,
    points: Sequence[Sequence[int]],
    strategy: MerlinStrategy,
    r: int,
    rng: np.random.Generator,
) -> List[Verdict]:
    """Recuperação de k pontos como k execuções de R1 em cópias independentes."""
    return [run_r1(state, w, strategy, r, rng) for w in points]


def _lde_table(params: LdeParams, data: DataTable) -> np.ndarray:
    total = params.num_points
    if total > MAX_OUTCOMES:
        raise ResourceError(f"{total} resultados de medição excedem o limite {MAX_OUTCOMES}")
    return interpolate_lde(params, data).evaluation_grid()


def exact_r1_distribution(
    data: DataTable,
    params: LdeParams,
    w: Sequence[int],
    strategy: MerlinStrategy,
    r: int,
) -> Dict[Verdict, float]:
    """Distribuição exata do veredito de R1 sobre todos os |F|^d resultados.

    Raises:
        ResourceError: Se o domínio não for enumerável.
    """
    tabela = _lde_table(params, data)
    f = params.field
    peso = 1.0 / params.num_points
    distribuicao: Dict[Verdict, float] = defaultdict(float)
    for idx, z in enumerate(all_points(f, params.d)):
        distribuicao[verdict_for_outcome(f, w, z, int(tabela[idx]), strategy, r)] += peso
    return dict(distribuicao)


def exact_r2_distribution(
    data: DataTable,
    params: LdeParams,
    w: Sequence[int],
    w2: Sequence[int],
    strategy: MerlinStrategy,
    r: int,
) -> Dict[Verdict, float]:
    """Distribuição exata do veredito de R2."""
    if tuple(w) == tuple(w2):
        raise ParameterError("R2 exige pontos marcados distintos")
    tabela = _lde_table(params, data)
    f = params.field
    peso = 1.0 / params.num_points
    distribuicao: Dict[Verdict, float] = defaultdict(float)
    for idx, z in enumerate(all_points(f, params.d)):
        v = verdict_for_outcome_r2(f, w, w2, z, int(tabela[idx]), strategy, r)
        distribuicao[v] += peso
    return dict(distribuicao)


def wrong_probability(distribution: Dict[Verdict, float], correct: Verdict) -> float:
    """Massa dos vereditos que não são Err nem o valor correto."""
    return float(sum(p for v, p in distribution.items() if not v.is_err and v != correct))


def soundness_bound(q: int, d: int, r: int) -> float:
    """(1 - |F|^{-d})·r/(|F| - 1): probabilidade máxima de valor errado em R1."""
    return (1.0 - q ** (-d)) * r / (q - 1)


def loose_soundness_bound(q: int, d: int, r: int) -> float:
    """r/|F| + |F|^{-d}, reportada junto da cota exata."""
    return r / q + q ** (-d)
