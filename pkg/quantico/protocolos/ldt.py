"""Teste quântico de baixo grau e as medidas de concordância Agr[·,·].

Um oráculo de retas G = {g_ℓ} é guardado sobre o catálogo canônico de
retas (geom.line_catalog): cada ramo é um par (pesos, tabela) em que
tabela[ℓ, t] é g_ℓ no parâmetro canônico t e pesos[ℓ] a probabilidade
desse ramo na reta ℓ. Oráculos determinísticos têm um único ramo de peso
1; a massa que falta numa reta corresponde a rejeitar sem ler polinômio.

A probabilidade de aceitação tem forma fechada:

    γ = (|F|·N)^{-1} Σ_ℓ E_g |Σ_{z∈ℓ} φ_{z, g_ℓ(z)}|²

e a concordância com qualquer função (determinística ou probabilística)
se reduz à matriz de pontuação C[z, y] = E_ℓ Prob_{z'∈ℓ}[z' = z, g_ℓ(z) = y].
"""

import logging
from dataclasses import dataclass
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from ..algebra.geom import Line, all_points, line_catalog, random_invertible_map
from ..algebra.gf import FieldParams
from ..algebra.mpoly import (
    DataTable,
    LdeParams,
    MultiPoly,
    evaluate_univariate_rows,
    interpolate_lde,
    monomials,
    univariate_degrees,
)
from ..core.aleatorio import run_trials
from ..core.exceptions import ParameterError, ResourceError
from .qsim import (
    QuantumState,
    apply_linear_permutation,
    line_state_from_values,
    measure_prefix,
    projection_prob,
)

logger = logging.getLogger(__name__)

WEIGHT_TOL: float = 1e-12
BOUND_SLACK: float = 1e-9
MAX_CANDIDATES: int = 1 << 22

Branch = Tuple[np.ndarray, np.ndarray]
FunctionLike = Union[MultiPoly, np.ndarray, Sequence[int], Callable[[Tuple[int, ...]], int]]


class LineOracle:
    """Oráculo G = {g_ℓ} com polinômios de grau <= r em cada reta.

    Attributes:
        field: Corpo F.
        d: Dimensão do espaço.
        r: Limite de grau dos polinômios de reta.
        branches: Lista de (pesos (L,), tabela (L, |F|)).

    Raises:
        ParameterError: Se algum polinômio com peso positivo tiver grau > r,
            ou se os pesos de uma reta somarem mais que 1.
    """

    def __init__(
        self,
        field: FieldParams,
        d: int,
        r: int,
        branches: Sequence[Branch],
        check_degree: bool = True,
    ):
        catalogo = line_catalog(field, d)
        L, q = catalogo.num_lines, field.order
        if not 0 <= r:
            raise ParameterError(f"Grau r deve ser não negativo, recebido: {r}")
        normalizados: List[Branch] = []
        total = np.zeros(L)
        for pesos, tabela in branches:
            pesos = np.asarray(pesos, dtype=np.float64).reshape(-1)
            tabela = np.asarray(tabela, dtype=np.int64)
            if pesos.shape != (L,) or tabela.shape != (L, q):
                raise ParameterError(f"Ramo deve ter pesos ({L},) e tabela ({L}, {q})")
            if np.any(pesos < 0):
                raise ParameterError("Pesos negativos no oráculo de retas")
            if tabela.size and (tabela.min() < 0 or tabela.max() >= q):
                raise ParameterError("Valores do oráculo fora do corpo")
            total += pesos
            normalizados.append((pesos, tabela))
        if np.any(total > 1 + WEIGHT_TOL):
            raise ParameterError("Pesos de uma reta somam mais que 1")
        if check_degree:
            for pesos, tabela in normalizados:
                ativos = pesos > 0
                graus = univariate_degrees(field, tabela[ativos])
                if graus.size and graus.max() > r:
                    raise ParameterError(
                        f"Polinômio de reta com grau {int(graus.max())} > r = {r}"
                    )
        self.field = field
        self.d = d
        self.r = r
        self.branches = normalizados
        self.catalog = catalogo

    @classmethod
    def from_function(cls, field: FieldParams, d: int, values: Any, r: Optional[int] = None) -> "LineOracle":
        """g_ℓ = f|_ℓ para a tabela f em F^d (índice idx(z)); r padrão |F|-1."""
        catalogo = line_catalog(field, d)
        tabela = np.asarray(values, dtype=np.int64).reshape(-1)
        if tabela.shape != (field.order ** d,):
            raise ParameterError(f"Tabela deve ter {field.order ** d} valores")
        grau = field.order - 1 if r is None else r
        return cls(field, d, grau, [(np.ones(catalogo.num_lines), tabela[catalogo.points])])

    @classmethod
    def from_polynomial(cls, p: MultiPoly, r: Optional[int] = None) -> "LineOracle":
        """Oráculo honesto: g_ℓ = p|_ℓ, com r = grau total de p por padrão."""
        grau = max(p.total_degree(), 0) if r is None else r
        return cls.from_function(p.field, p.nvars, p.evaluation_grid(), grau)

    @classmethod
    def random(cls, field: FieldParams, d: int, r: int, rng: np.random.Generator) -> "LineOracle":
        """Polinômio de grau <= r uniforme e independente em cada reta."""
        catalogo = line_catalog(field, d)
        coefs = rng.integers(0, field.order, size=(catalogo.num_lines, r + 1))
        return cls(field, d, r, [(np.ones(catalogo.num_lines), evaluate_univariate_rows(field, coefs))])

    @classmethod
    def mixture(cls, oracles: Sequence["LineOracle"], probabilities: Sequence[float]) -> "LineOracle":
        """Oráculo aleatório que usa oracles[i] com probabilidade probabilities[i]."""
        if not oracles or len(oracles) != len(probabilities):
            raise ParameterError("Mistura exige oráculos e probabilidades em igual número")
        primeiro = oracles[0]
        if any(o.field != primeiro.field or o.d != primeiro.d for o in oracles):
            raise ParameterError("Oráculos de corpos ou dimensões diferentes")
        ramos: List[Branch] = []
        for o, p in zip(oracles, probabilities):
            ramos.extend((pesos * float(p), tabela) for pesos, tabela in o.branches)
        return cls(primeiro.field, primeiro.d, max(o.r for o in oracles), ramos, check_degree=False)

    @property
    def num_lines(self) -> int:
        return self.catalog.num_lines

    @property
    def is_deterministic(self) -> bool:
        return len(self.branches) == 1 and bool(np.all(self.branches[0][0] == 1.0))

    @property
    def table(self) -> np.ndarray:
        """Tabela (L, |F|) de um oráculo determinístico."""
        if not self.is_deterministic:
            raise ParameterError("Oráculo aleatório não tem tabela única")
        return self.branches[0][1]

    def with_override(self, line: Line, values: Sequence[int]) -> "LineOracle":
        """Cópia determinística com g_ℓ substituído (valores no parâmetro canônico)."""
        linha = self.catalog.row_of(line)
        tabela = self.table.copy()
        tabela[linha] = np.asarray(values, dtype=np.int64)
        return LineOracle(self.field, self.d, self.r, [(np.ones(self.num_lines), tabela)])

    def shifted(self, c: int) -> "LineOracle":
        """g_ℓ + c em todas as retas e ramos."""
        c = self.field.check(c)
        return LineOracle(
            self.field, self.d, self.r, [(p, t ^ c) for p, t in self.branches], check_degree=False
        )

    def line_distribution(self, row: int) -> List[Tuple[float, Optional[np.ndarray]]]:
        """Suporte (probabilidade, valores) de g_ℓ; None representa rejeição."""
        suporte: List[Tuple[float, Optional[np.ndarray]]] = [
            (float(p[row]), t[row]) for p, t in self.branches if p[row] > 0
        ]
        falta = 1.0 - sum(p for p, _ in suporte)
        if falta > WEIGHT_TOL:
            suporte.append((falta, None))
        return suporte

    def draw(self, row: int, rng: np.random.Generator) -> Optional[np.ndarray]:
        """Sorteia g_ℓ para a reta do catálogo; None quando o oráculo rejeita."""
        suporte = self.line_distribution(row)
        if len(suporte) == 1:
            return suporte[0][1]
        probs = np.array([p for p, _ in suporte])
        escolha = int(rng.choice(len(suporte), p=probs / probs.sum()))
        return suporte[escolha][1]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "field": self.field.to_dict(),
            "d": self.d,
            "r": self.r,
            "deterministic": self.is_deterministic,
            "branches": len(self.branches),
            "lines": self.num_lines,
        }


@dataclass(frozen=True, eq=False)
class InducedProbFunction:
    """f aleatória com Prob[f(z) = y] = (φ_{z,y}/φ_z)²; uniforme onde φ_z = 0."""

    field: FieldParams
    d: int
    dist: np.ndarray

    def probability(self, z: Sequence[int], y: int) -> float:
        idx = int(np.dot(np.asarray(z), self.field.order ** np.arange(self.d - 1, -1, -1)))
        return float(self.dist[idx, y])

    @property
    def is_deterministic(self) -> bool:
        return bool(np.all(np.isclose(self.dist.max(axis=1), 1.0)))

    def argmax(self) -> np.ndarray:
        """Valor mais provável em cada z (menor y em caso de empate)."""
        return np.argmax(self.dist, axis=1)

    def support(self) -> np.ndarray:
        return self.dist > 0

    def to_dict(self) -> Dict[str, Any]:
        return {"d": self.d, "dist": self.dist.tolist()}


@dataclass(frozen=True)
class AcceptanceReport:
    """Probabilidade de aceitação do teste, exata ou estimada."""

    gamma: float
    method: str
    trials: Optional[int] = None
    accepted: Optional[int] = None
    stderr: Optional[float] = None

    def to_dict(self) -> Dict[str, Any]:
        dados: Dict[str, Any] = {"gamma": self.gamma, "method": self.method}
        if self.method == "monte_carlo":
            dados.update(trials=self.trials, accepted=self.accepted, stderr=self.stderr)
        return dados


@dataclass(frozen=True)
class BoundCheck:
    """Resultado de Agr[f,G] >= (γ - 1/|F|)²; holds é None quando a cota é vácua."""

    gamma: float
    agr_fG: float
    bound_rhs: float
    holds: Optional[bool]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "gamma_exact": self.gamma,
            "agr_fG": self.agr_fG,
            "bound_rhs": self.bound_rhs,
            "holds": self.holds,
        }


def _as_table(f: FunctionLike, field: Optional[FieldParams], d: Optional[int]) -> np.ndarray:
    if isinstance(f, MultiPoly):
        return f.evaluation_grid()
    if callable(f):
        if field is None or d is None:
            raise ParameterError("Funções arbitrárias exigem field e d")
        return np.array([f(tuple(int(x) for x in z)) for z in all_points(field, d)], dtype=np.int64)
    return np.asarray(f, dtype=np.int64).reshape(-1)


def agr_functions(
    f: FunctionLike,
    f2: FunctionLike,
    field: Optional[FieldParams] = None,
    d: Optional[int] = None,
) -> float:
    """Agr[f, f2] = Prob_z[f(z) = f2(z)] sobre todo F^d.

    f e f2 podem ser MultiPoly, tabelas indexadas por idx(z) ou funções
    de pontos (neste caso field e d são obrigatórios).
    """
    a = _as_table(f, field, d)
    b = _as_table(f2, field, d)
    if a.shape != b.shape:
        raise ParameterError(f"Tabelas de tamanhos diferentes: {a.size} e {b.size}")
    return float(np.mean(a == b))


def point_scores(g: LineOracle) -> np.ndarray:
    """C[z, y] = E_ℓ Prob_{z'∈ℓ}[z' = z e g_ℓ(z) = y], com Agr[h,G] = Σ_z C[z, h(z)]."""
    q = g.field.order
    catalogo = g.catalog
    pontuacao = np.zeros((q ** g.d, q))
    escala = 1.0 / (catalogo.num_lines * q)
    for pesos, tabela in g.branches:
        np.add.at(
            pontuacao,
            (catalogo.points, tabela),
            np.broadcast_to(pesos[:, None] * escala, tabela.shape),
        )
    return pontuacao


def agr_with_oracle(f: Union[FunctionLike, InducedProbFunction], g: LineOracle) -> float:
    """Agr[f, G] = E_ℓ Agr[f, g_ℓ], exato sobre todas as retas e ramos do oráculo.

    Para f probabilística a concordância é a esperança sobre f.

    Examples:
        >>> gf4 = get_field(2)
        >>> p = MultiPoly.variable(gf4, 2, 0)
        >>> agr_with_oracle(p, LineOracle.from_polynomial(p))
        1.0
    """
    pontuacao = point_scores(g)
    if isinstance(f, InducedProbFunction):
        return float(np.sum(f.dist * pontuacao))
    tabela = _as_table(f, g.field, g.d)
    return float(pontuacao[np.arange(tabela.size), tabela].sum())


def qldt_accept_exact(state: QuantumState, g: LineOracle) -> AcceptanceReport:
    """γ exato pela forma fechada, válido para amplitudes complexas.

    Raises:
        ParameterError: Se estado e oráculo forem incompatíveis.
        ResourceError: Se o catálogo de retas não for enumerável.
    """
    if state.field != g.field or state.d != g.d:
        raise ParameterError("Estado e oráculo de retas incompatíveis")
    catalogo = g.catalog
    amps = state.dense
    total = 0.0
    for pesos, tabela in g.branches:
        internos = amps[catalogo.points, tabela].sum(axis=1)
        total += float(np.dot(pesos, np.abs(internos) ** 2))
    gamma = total / (state.q * catalogo.num_directions)
    return AcceptanceReport(gamma=min(1.0, gamma), method="exact")


def qldt_run_once(state: QuantumState, g: LineOracle, rng: np.random.Generator) -> bool:
    """Uma execução dos passos I e II do teste.

    Sorteia E em GL(d, F), mede os d-1 primeiros registradores de U_E|Φ⟩,
    lê g_ℓ para a reta ℓ = {u + t(v - u)} e aceita com probabilidade
    |⟨e₁|Φ'⟩|².
    """
    f = state.field
    mapa = random_invertible_map(f, state.d, rng)
    resultado = measure_prefix(apply_linear_permutation(state, mapa), rng, mapa)
    linha = g.catalog.row_of(resultado.line)
    valores = g.draw(linha, rng)
    if valores is None:
        return False
    pivo = int(g.catalog.pivot[linha])
    canonicos = resultado.line.points_array()[:, pivo]
    e1 = line_state_from_values(f, valores[canonicos])
    return bool(rng.random() < projection_prob(resultado.collapsed, e1))


def qldt_accept_sampled(
    state: QuantumState,
    g: LineOracle,
    trials: int,
    seed: int,
    workers: int = 1,
) -> AcceptanceReport:
    """Estimativa de Monte Carlo de γ com subfluxos independentes por worker."""
    if trials < 1:
        raise ParameterError(f"Número de tentativas deve ser positivo, recebido: {trials}")
    aceitos = run_trials(lambda rng: qldt_run_once(state, g, rng), trials, seed, workers)
    p = aceitos / trials
    logger.info("teste de baixo grau: %d/%d aceitações", aceitos, trials)
    return AcceptanceReport(
        gamma=p,
        method="monte_carlo",
        trials=trials,
        accepted=aceitos,
        stderr=float(np.sqrt(p * (1 - p) / trials)),
    )


def induced_f(state: QuantumState) -> InducedProbFunction:
    """Função probabilística induzida pelo estado (uniforme onde φ_z = 0)."""
    probs = state.probabilities()
    massa = probs.sum(axis=1, keepdims=True)
    with np.errstate(invalid="ignore", divide="ignore"):
        dist = np.where(massa > 0, probs / np.where(massa > 0, massa, 1.0), 1.0 / state.q)
    return InducedProbFunction(state.field, state.d, dist)


def agreement_lower_bound_check(state: QuantumState, g: LineOracle) -> BoundCheck:
    """Calcula γ e Agr[f, G] exatamente e verifica Agr[f, G] >= (γ - 1/|F|)².

    Com γ < 1/|F| a cota é vácua: holds fica None e nada é afirmado.
    """
    gamma = qldt_accept_exact(state, g).gamma
    concordancia = agr_with_oracle(induced_f(state), g)
    limite = 1.0 / state.q
    rhs = (gamma - limite) ** 2
    if gamma < limite:
        logger.warning("γ = %.6f < 1/|F|: desigualdade de concordância vácua", gamma)
        return BoundCheck(gamma, concordancia, rhs, None)
    return BoundCheck(gamma, concordancia, rhs, concordancia >= rhs - BOUND_SLACK)


def best_selection_agreement(state: QuantumState, g: LineOracle) -> Tuple[np.ndarray, float]:
    """Máximo de Agr[f', G] sobre seleções determinísticas do suporte de f.

    Como Agr[f', G] = Σ_z C[z, f'(z)], o máximo escolhe em cada z o
    melhor y do suporte; o resultado é >= Agr[f, G] por convexidade.
    """
    pontuacao = point_scores(g)
    suporte = induced_f(state).support()
    mascarada = np.where(suporte, pontuacao, -np.inf)
    selecao = np.argmax(mascarada, axis=1)
    return selecao, float(mascarada[np.arange(selecao.size), selecao].sum())


def _candidate_monomials(d: int, r: int, q: int, search_space: str) -> List[Tuple[int, ...]]:
    if search_space == "total_degree":
        return monomials(d, min(r, q - 1), r)
    if search_space == "per_variable":
        return monomials(d, min(r, q - 1))
    raise ParameterError(f"Espaço de busca desconhecido: {search_space!r}")


def _best_combination(
    g: LineOracle,
    base: np.ndarray,
    alphabet: int,
    max_candidates: int,
) -> Tuple[np.ndarray, float]:
    """Maximiza Σ_z C[z, h(z)] sobre h = Σ_i c_i·base[i], c_i em [0, alphabet).

    Os vetores c são percorridos em ordem lexicográfica e o primeiro
    máximo é mantido.
    """
    f = g.field
    m, npts = base.shape
    total = alphabet ** m
    if total > max_candidates:
        raise ResourceError(
            f"{alphabet}^{m} = {total} candidatos excedem o limite {max_candidates}"
        )
    pontuacao = point_scores(g)
    colunas = np.arange(npts)
    potencias = alphabet ** np.arange(m - 1, -1, -1, dtype=np.int64)
    bloco = max(1, (1 << 18) // max(1, npts * m))
    melhor_valor, melhor_indice = -1.0, 0
    for inicio in range(0, total, bloco):
        indices = np.arange(inicio, min(total, inicio + bloco), dtype=np.int64)
        coefs = (indices[:, None] // potencias[None, :]) % alphabet
        valores = np.bitwise_xor.reduce(f.mul_array(coefs[:, :, None], base[None, :, :]), axis=1)
        agr = pontuacao[colunas[None, :], valores].sum(axis=1)
        maximo = float(agr.max())
        if maximo > melhor_valor + WEIGHT_TOL:
            melhor_valor = maximo
            melhor_indice = int(indices[int(np.argmax(agr >= maximo - WEIGHT_TOL))])
    logger.debug("melhor combinação entre %d candidatos: Agr = %.6f", total, melhor_valor)
    return (melhor_indice // potencias) % alphabet, melhor_valor


def brute_force_best_h(
    g: LineOracle,
    r: int,
    search_space: str = "total_degree",
    max_candidates: int = MAX_CANDIDATES,
) -> Tuple[MultiPoly, float]:
    """Maximiza Agr[h, G] sobre todos os polinômios h do espaço de busca.

    Args:
        g: Oráculo de retas.
        r: Limite de grau de h.
        search_space: "total_degree" (grau total <= r) ou "per_variable"
            (grau <= r em cada variável).
        max_candidates: Limite de polinômios enumerados.

    Returns:
        (h, Agr[h, G]); empates ficam com o menor vetor de coeficientes na
        ordem lexicográfica dos monômios.

    Raises:
        ResourceError: Se |F|^{#monômios} exceder max_candidates.
    """
    f = g.field
    exps = _candidate_monomials(g.d, r, f.order, search_space)
    pontos = all_points(f, g.d)
    base = np.ones((len(exps), pontos.shape[0]), dtype=np.int64)
    for i, e in enumerate(exps):
        for j, ej in enumerate(e):
            if ej:
                base[i] = f.mul_array(base[i], f.pow_array(pontos[:, j], ej))
    coefs, agr = _best_combination(g, base, f.order, max_candidates)
    return MultiPoly(f, g.d, {e: int(c) for e, c in zip(exps, coefs)}), agr


def best_lde_assignment(
    g: LineOracle,
    params: LdeParams,
    alphabet: int,
    max_candidates: int = MAX_CANDIDATES,
) -> Tuple[DataTable, MultiPoly, float]:
    """Maximiza Agr[Ã, G] sobre as extensões de tabelas com valores em [0, alphabet).

    Ã é linear na tabela, então a busca reutiliza a enumeração vetorizada
    com as extensões dos vetores indicadores como base.

    Raises:
        ResourceError: Se alphabet^{|H|^d} exceder max_candidates.
    """
    if params.field != g.field or params.d != g.d:
        raise ParameterError("Parâmetros da extensão incompatíveis com o oráculo")
    n = params.domain_size
    base = np.stack(
        [
            interpolate_lde(params, DataTable(params, tuple(int(i == k) for i in range(n)))).evaluation_grid()
            for k in range(n)
        ]
    )
    valores, agr = _best_combination(g, base, alphabet, max_candidates)
    tabela = DataTable(params, tuple(int(v) for v in valores))
    return tabela, interpolate_lde(params, tabela), agr


def lemma_conclusions(gamma: float, agr: float) -> Dict[str, Any]:
    """γ⁴/50, γ⁴/32 e γ⁴/100 ao lado da concordância medida (apenas relatório)."""
    g4 = gamma ** 4
    return {
        "gamma": gamma,
        "agr": agr,
        "gamma4_over_32": g4 / 32,
        "gamma4_over_50": g4 / 50,
        "gamma4_over_100": g4 / 100,
        "agr_at_least_gamma4_over_50": agr >= g4 / 50,
    }


def verifier_cost(field: FieldParams, d: int, r: int) -> Dict[str, int]:
    """Registradores e qubits do estado testado e bits clássicos lidos do oráculo."""
    return {
        "registers": d + 1,
        "qubits": (d + 1) * field.a,
        "oracle_bits": (r + 1) * field.a,
    }
