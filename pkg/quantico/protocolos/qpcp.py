"""Verificador quântico de uma consulta para instâncias GAP(s, q, ε).

A prova correta é o par (|Ψ⟩, blocos): |Ψ⟩ é a extensão quântica de
baixo grau da atribuição e, para cada predicado j e cada subespaço S de
dimensão q+1 que contém τ̂_j, o bloco (j, S) guarda Ã restrito a S nas
coordenadas canônicas de S. O verificador executa o passo I do teste de
baixo grau, escolhe j, lê um único bloco, checa grau e predicado e
completa o passo II com a restrição do bloco à reta medida.
"""

import logging
import threading
from dataclasses import dataclass, field
from itertools import combinations, product
from typing import Any, Dict, FrozenSet, List, Optional, Sequence, Tuple

import numpy as np

from ..algebra.geom import (
    AffineSubspace,
    Point,
    affine_span,
    all_points,
    all_subspaces_containing,
    canonical_coordinates,
    canonical_subspace,
    line_catalog,
    random_extension_to_dim,
    random_invertible_map,
    smallest_affine_containing,
)
from ..algebra.gf import FieldParams
from ..algebra.mpoly import DataTable, LdeParams, MultiPoly, interpolate_lde, restrict_to_subspace
from ..core.exceptions import (
    InvalidInstance,
    ParameterError,
    ResourceError,
    UnsatisfiedAssignment,
)
from .ldt import LineOracle, best_lde_assignment, brute_force_best_h, qldt_accept_exact
from .qsim import (
    QuantumState,
    apply_linear_permutation,
    line_state_from_values,
    measure_prefix,
    qlde_from_polynomial,
    projection_prob,
)

logger = logging.getLogger(__name__)

MAX_ASSIGNMENTS: int = 1 << 20

SubspaceKey = Tuple[Point, Tuple[Point, ...]]
BlockKey = Tuple[int, SubspaceKey]


@dataclass(frozen=True)
class Predicate:
    """Predicado φ_j sobre as variáveis t_j, dado pelo conjunto de tuplas satisfatórias."""

    vars: Tuple[int, ...]
    sat: FrozenSet[Tuple[int, ...]]

    def satisfied_by(self, assignment: Sequence[int]) -> bool:
        return tuple(int(assignment[i]) for i in self.vars) in self.sat

    def to_dict(self) -> Dict[str, Any]:
        return {"vars": list(self.vars), "sat": [list(t) for t in sorted(self.sat)]}


@dataclass(frozen=True)
class GapInstance:
    """Instância GAP(s, q, ε): k predicados de aridade <= q em m variáveis de s bits.

    Raises:
        InvalidInstance: Se algum predicado violar aridade, índices ou
            valores, ou não tiver tupla satisfatória.
    """

    m: int
    s: int
    q: int
    predicates: Tuple[Predicate, ...]
    eps: float = 0.5

    def __post_init__(self) -> None:
        if self.m < 1 or self.s < 1 or self.q < 1:
            raise InvalidInstance(f"m, s e q devem ser positivos: m={self.m}, s={self.s}, q={self.q}")
        if not self.predicates:
            raise InvalidInstance("Instância sem predicados")
        limite = 1 << self.s
        for j, pred in enumerate(self.predicates):
            if not pred.vars or len(pred.vars) > self.q:
                raise InvalidInstance(f"Predicado {j}: aridade {len(pred.vars)} fora de [1, {self.q}]")
            if list(pred.vars) != sorted(set(pred.vars)):
                raise InvalidInstance(f"Predicado {j}: variáveis devem ser distintas e ordenadas")
            if any(not 0 <= i < self.m for i in pred.vars):
                raise InvalidInstance(f"Predicado {j}: variável fora de [0, {self.m})")
            if not pred.sat:
                raise InvalidInstance(f"Predicado {j} não tem atribuição satisfatória")
            for tupla in pred.sat:
                if len(tupla) != len(pred.vars) or any(not 0 <= v < limite for v in tupla):
                    raise InvalidInstance(f"Predicado {j}: tupla inválida {tupla}")
        tuplas = [p.vars for p in self.predicates]
        if len(set(tuplas)) != len(tuplas):
            logger.warning("instância com tuplas de variáveis repetidas entre predicados")

    @property
    def k(self) -> int:
        return len(self.predicates)

    def check_assignment(self, assignment: Sequence[int]) -> Tuple[int, ...]:
        valores = tuple(int(v) for v in assignment)
        if len(valores) != self.m:
            raise ParameterError(f"Atribuição deve ter {self.m} valores, recebido: {len(valores)}")
        if any(not 0 <= v < (1 << self.s) for v in valores):
            raise ParameterError(f"Valores da atribuição devem estar em [0, {1 << self.s})")
        return valores

    def satisfied_fraction(self, assignment: Sequence[int]) -> float:
        valores = self.check_assignment(assignment)
        return sum(p.satisfied_by(valores) for p in self.predicates) / self.k

    def max_satisfied_fraction(self) -> float:
        """Melhor fração satisfeita, por enumeração de todas as atribuições.

        Raises:
            ResourceError: Se 2^{s·m} exceder o limite de enumeração.
        """
        total = (1 << self.s) ** self.m
        if total > MAX_ASSIGNMENTS:
            raise ResourceError(f"{total} atribuições excedem o limite {MAX_ASSIGNMENTS}")
        return max(
            self.satisfied_fraction(a) for a in product(range(1 << self.s), repeat=self.m)
        )

    def to_dict(self) -> Dict[str, Any]:
        return {
            "m": self.m,
            "s": self.s,
            "q": self.q,
            "eps": self.eps,
            "predicates": [p.to_dict() for p in self.predicates],
        }


def planted_satisfiable(
    m: int,
    s: int,
    q: int,
    k: int,
    rng: np.random.Generator,
    extra: int = 1,
) -> Tuple[GapInstance, Tuple[int, ...]]:
    """Instância satisfatível com atribuição plantada.

    Cada predicado recebe um conjunto distinto de q variáveis, a tupla
    plantada e até `extra` tuplas satisfatórias aleatórias.

    Returns:
        (instância, atribuição plantada).
    """
    conjuntos = list(combinations(range(m), min(q, m)))
    if k > len(conjuntos):
        raise ParameterError(f"{k} predicados distintos não cabem em {len(conjuntos)} conjuntos")
    plantada = tuple(int(v) for v in rng.integers(0, 1 << s, size=m))
    escolhidos = rng.choice(len(conjuntos), size=k, replace=False)
    predicados = []
    for indice in sorted(int(i) for i in escolhidos):
        variaveis = conjuntos[indice]
        sat = {tuple(plantada[i] for i in variaveis)}
        for _ in range(extra):
            sat.add(tuple(int(v) for v in rng.integers(0, 1 << s, size=len(variaveis))))
        predicados.append(Predicate(variaveis, frozenset(sat)))
    return GapInstance(m, s, q, tuple(predicados)), plantada


def gap_unsat_equality() -> GapInstance:
    """Y1 = Y2 e Y1 != Y2: no máximo metade dos predicados é satisfeita."""
    return GapInstance(
        m=2,
        s=1,
        q=2,
        predicates=(
            Predicate((0, 1), frozenset({(0, 0), (1, 1)})),
            Predicate((0, 1), frozenset({(0, 1), (1, 0)})),
        ),
        eps=0.5,
    )


@dataclass(frozen=True)
class Embedding:
    """Pontos das variáveis em F^d e os conjuntos τ_j e τ̂_j."""

    variable_points: Tuple[Point, ...]
    tau: Tuple[Tuple[Point, ...], ...]
    tau_hat: Tuple[Tuple[Point, ...], ...]
    spans: Tuple[AffineSubspace, ...]


def embed_variables(instance: GapInstance, params: LdeParams) -> Embedding:
    """Posiciona Y_i em π⁻¹(i) e completa cada τ_j até dimensão afim q-1.

    Os pontos extras são os primeiros de H^d, em ordem lexicográfica, que
    aumentam a dimensão do fecho afim.

    Raises:
        ParameterError: Se m > |H|^d, d < q+1 ou 2^s > |F|.
    """
    f = params.field
    if instance.m > params.domain_size:
        raise ParameterError(f"m = {instance.m} excede |H|^d = {params.domain_size}")
    if params.d < instance.q + 1:
        raise ParameterError(f"d = {params.d} deve ser pelo menos q+1 = {instance.q + 1}")
    if params.d == instance.q + 1:
        logger.warning("d = q+1: todo subespaço de dimensão q+1 é o próprio F^d")
    if (1 << instance.s) > f.order:
        raise ParameterError(f"2^s = {1 << instance.s} excede |F| = {f.order}")
    pontos = tuple(params.pi_inv(i) for i in range(instance.m))
    alvo = instance.q - 1
    taus, completos, fechos = [], [], []
    for pred in instance.predicates:
        tau = tuple(pontos[i] for i in pred.vars)
        conjunto = list(tau)
        fecho = affine_span(f, conjunto)
        for i in range(params.domain_size):
            if fecho.dimension >= alvo:
                break
            candidato = params.pi_inv(i)
            if candidato in conjunto:
                continue
            novo = affine_span(f, conjunto + [candidato])
            if novo.dimension > fecho.dimension:
                conjunto.append(candidato)
                fecho = novo
        taus.append(tau)
        completos.append(tuple(conjunto))
        fechos.append(canonical_subspace(fecho))
    return Embedding(pontos, tuple(taus), tuple(completos), tuple(fechos))


class ProofBlocks:
    """Blocos p(τ_j, S) indexados por (j, forma canônica de S).

    read() conta leituras; peek() não conta e serve às enumerações exatas.
    """

    def __init__(self, field: FieldParams, d: int, blocks: Optional[Dict[BlockKey, MultiPoly]] = None):
        self.field = field
        self.d = d
        self._blocks: Dict[BlockKey, MultiPoly] = dict(blocks or {})
        self.reads = 0
        self._lock = threading.Lock()

    def __len__(self) -> int:
        return len(self._blocks)

    def __contains__(self, key: BlockKey) -> bool:
        return key in self._blocks

    def keys(self) -> List[BlockKey]:
        return sorted(self._blocks)

    def put(self, j: int, s: AffineSubspace, block: MultiPoly) -> None:
        self._blocks[(j, s.key())] = block

    def peek(self, j: int, s: AffineSubspace) -> Optional[MultiPoly]:
        return self._blocks.get((j, s.key()))

    def read(self, j: int, s: AffineSubspace) -> Optional[MultiPoly]:
        with self._lock:
            self.reads += 1
        return self.peek(j, s)

    def session(self) -> "BlockSession":
        return BlockSession(self)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "field": self.field.to_dict(),
            "d": self.d,
            "blocks": [
                {
                    "j": j,
                    "base": list(base),
                    "dirs": [list(v) for v in dirs],
                    "nvars": self._blocks[(j, (base, dirs))].nvars,
                    "terms": self._blocks[(j, (base, dirs))].to_list(),
                }
                for j, (base, dirs) in self.keys()
            ],
        }


class BlockSession:
    """Acesso de uma execução do verificador; conta as próprias leituras."""

    def __init__(self, blocks: ProofBlocks):
        self._blocks = blocks
        self.reads = 0

    def read(self, j: int, s: AffineSubspace) -> Optional[MultiPoly]:
        self.reads += 1
        return self._blocks.read(j, s)


@dataclass(frozen=True)
class VerdictReport:
    """Resultado de uma execução do verificador."""

    accept: bool
    failure_stage: str = "none"
    j: Optional[int] = None
    blocks_read: int = 0
    projection: Optional[float] = None

    def to_dict(self) -> Dict[str, Any]:
        return {
            "outcome": "accept" if self.accept else "reject",
            "failure_stage": self.failure_stage,
            "j": self.j,
            "blocks_read": self.blocks_read,
            "projection": self.projection,
        }


@dataclass(frozen=True)
class DecodeReport:
    """Atribuição decodificada do melhor h e sua fração satisfeita."""

    assignment: Tuple[int, ...]
    satisfied_fraction: float
    agr: float
    gamma: Optional[float] = None
    bound: Optional[float] = None
    holds: Optional[bool] = None

    def to_dict(self) -> Dict[str, Any]:
        return {
            "assignment": list(self.assignment),
            "satisfied_fraction": self.satisfied_fraction,
            "agr": self.agr,
            "gamma": self.gamma,
            "gamma4_over_100": self.bound,
            "holds": self.holds,
        }


@dataclass(frozen=True)
class LineRatioReport:
    """Contagens exatas de retas boas no espaço todo e em cada S."""

    total_lines: int
    good_lines: int
    ratio: float
    bound: float
    num_subspaces: int
    min_subspace_ratio: float
    subspace_bound: float
    ratios: Tuple[float, ...] = field(default=(), repr=False)

    @property
    def holds(self) -> bool:
        return self.ratio > self.bound and self.min_subspace_ratio > self.subspace_bound

    def to_dict(self) -> Dict[str, Any]:
        return {
            "total_lines": self.total_lines,
            "good_lines": self.good_lines,
            "ratio": self.ratio,
            "bound": self.bound,
            "num_subspaces": self.num_subspaces,
            "min_subspace_ratio": self.min_subspace_ratio,
            "subspace_bound": self.subspace_bound,
            "holds": self.holds,
        }


def build_correct_proof(
    instance: GapInstance,
    assignment: Sequence[int],
    params: LdeParams,
    r: Optional[int] = None,
    require_satisfying: bool = True,
) -> Tuple[QuantumState, ProofBlocks]:
    """Prova correta: extensão quântica da atribuição e blocos Ã|_S.

    Args:
        instance: Instância GAP.
        assignment: Valores de Y_1..Y_m; variáveis fictícias valem 0.
        params: Parâmetros F, d, |H|.
        r: Limite de grau, apenas registrado (padrão d·(|H|-1)).
        require_satisfying: Recusa atribuições que não satisfazem tudo.

    Raises:
        UnsatisfiedAssignment: Se require_satisfying e algum predicado falhar.
    """
    valores = instance.check_assignment(assignment)
    if require_satisfying and instance.satisfied_fraction(valores) < 1.0:
        raise UnsatisfiedAssignment("A atribuição não satisfaz todos os predicados")
    embedding = embed_variables(instance, params)
    lde = interpolate_lde(params, DataTable.padded(params, valores))
    blocos = ProofBlocks(params.field, params.d)
    for j, fecho in enumerate(embedding.spans):
        for s in all_subspaces_containing(fecho, instance.q + 1):
            blocos.put(j, s, restrict_to_subspace(lde, s))
    logger.info(
        "prova com %d blocos (k=%d, grau %d)",
        len(blocos),
        instance.k,
        params.default_degree if r is None else r,
    )
    return qlde_from_polynomial(lde), blocos


def check_block(
    instance: GapInstance,
    embedding: Embedding,
    j: int,
    s: AffineSubspace,
    block: Optional[MultiPoly],
    r: int,
) -> Optional[str]:
    """Estágio em que o bloco falha (block_degree ou block_predicate), ou None."""
    if block is None or block.nvars != instance.q + 1 or block.total_degree() > r:
        return "block_degree"
    coords = canonical_coordinates(s, embedding.tau[j])
    valores = block.evaluation_table(coords)
    if np.any(valores >= (1 << instance.s)):
        return "block_predicate"
    if tuple(int(v) for v in valores) not in instance.predicates[j].sat:
        return "block_predicate"
    return None


def verify_once(
    instance: GapInstance,
    state: QuantumState,
    blocks: ProofBlocks,
    params: LdeParams,
    r: int,
    rng: np.random.Generator,
    embedding: Optional[Embedding] = None,
) -> VerdictReport:
    """Uma execução do verificador: passo I, j uniforme, um bloco, passo II."""
    emb = embedding if embedding is not None else embed_variables(instance, params)
    f = state.field
    mapa = random_invertible_map(f, state.d, rng)
    resultado = measure_prefix(apply_linear_permutation(state, mapa), rng, mapa)
    j = int(rng.integers(instance.k))
    alvo = instance.q + 1
    conjunto = list(emb.tau_hat[j])
    s = smallest_affine_containing(resultado.line, conjunto)
    if s.dimension < alvo:
        s = random_extension_to_dim(s, alvo, rng)
    s = canonical_subspace(s)
    sessao = blocks.session()
    bloco = sessao.read(j, s)
    lidos = sessao.reads
    estagio = check_block(instance, emb, j, s, bloco, r)
    if estagio is not None:
        return VerdictReport(False, estagio, j, lidos)
    assert bloco is not None
    coords = canonical_coordinates(s, resultado.line.points_array())
    e1 = line_state_from_values(f, bloco.evaluation_table(coords))
    p = projection_prob(resultado.collapsed, e1)
    if rng.random() < p:
        return VerdictReport(True, "none", j, lidos, p)
    return VerdictReport(False, "projection", j, lidos, p)


def proof_line_oracle(
    instance: GapInstance,
    blocks: ProofBlocks,
    params: LdeParams,
    r: int,
    embedding: Optional[Embedding] = None,
) -> LineOracle:
    """Oráculo aleatório G induzido por (j, S): j uniforme e S uniforme entre
    os subespaços de dimensão q+1 que contêm ℓ e τ̂_j.

    Blocos que falham nas checagens contribuem com rejeição (peso ausente).
    Há um ramo por par (j, S); o peso em ℓ é 1/(k·#S(ℓ, j)) quando S ⊇ ℓ.

    Raises:
        ResourceError: Se as retas ou os subespaços não forem enumeráveis.
    """
    emb = embedding if embedding is not None else embed_variables(instance, params)
    f = params.field
    catalogo = line_catalog(f, params.d)
    pontos = all_points(f, params.d)
    ramos = []
    for j, fecho in enumerate(emb.spans):
        subespacos = all_subspaces_containing(fecho, instance.q + 1)
        pertence = np.zeros((len(subespacos), pontos.shape[0]), dtype=bool)
        grades = np.zeros((len(subespacos), pontos.shape[0]), dtype=np.int64)
        aprovados = np.zeros(len(subespacos), dtype=bool)
        for i, s in enumerate(subespacos):
            indices = s.point_indices()
            pertence[i, indices] = True
            bloco = blocks.peek(j, s)
            aprovados[i] = check_block(instance, emb, j, s, bloco, r) is None
            if aprovados[i]:
                assert bloco is not None
                grades[i, indices] = bloco.evaluation_table(
                    canonical_coordinates(s, pontos[indices])
                )
        contem = pertence[:, catalogo.points].all(axis=2)
        quantos = np.maximum(contem.sum(axis=0), 1)
        for i in range(len(subespacos)):
            if not aprovados[i]:
                continue
            pesos = contem[i] / (instance.k * quantos)
            ramos.append((pesos, grades[i][catalogo.points]))
    logger.debug("oráculo da prova: %d ramos sobre %d retas", len(ramos), catalogo.num_lines)
    return LineOracle(f, params.d, r, ramos)


def accept_prob_exact(
    instance: GapInstance,
    state: QuantumState,
    blocks: ProofBlocks,
    params: LdeParams,
    r: int,
) -> float:
    """Probabilidade exata de aceitação, pela forma fechada do teste de baixo grau."""
    oraculo = proof_line_oracle(instance, blocks, params, r)
    return qldt_accept_exact(state, oraculo).gamma


def decode_and_score(
    blocks: ProofBlocks,
    instance: GapInstance,
    params: LdeParams,
    r: int,
    state: Optional[QuantumState] = None,
    assume_hypothesis: bool = False,
    search_space: str = "lde_assignments",
    max_candidates: int = 1 << 22,
) -> DecodeReport:
    """Decodifica a_i = h(π⁻¹(i)) do h de maior concordância com o oráculo da prova.

    Args:
        blocks: Blocos da prova.
        instance: Instância GAP.
        params: Parâmetros F, d, |H|.
        r: Limite de grau.
        state: Estado da prova; quando presente γ é calculado e comparado
            com a fração satisfeita via γ⁴/100.
        assume_hypothesis: Afirma a comparação com γ⁴/100 (caso contrário
            ela é apenas reportada).
        search_space: "lde_assignments" (extensões de tabelas com valores em
            [0, 2^s)), "total_degree" ou "per_variable".
        max_candidates: Limite da enumeração.

    Raises:
        ResourceError: Se o espaço de busca exceder max_candidates.
    """
    emb = embed_variables(instance, params)
    oraculo = proof_line_oracle(instance, blocks, params, r, emb)
    limite = 1 << instance.s
    if search_space == "lde_assignments":
        _, h, agr = best_lde_assignment(oraculo, params, limite, max_candidates)
    else:
        h, agr = brute_force_best_h(oraculo, r, search_space, max_candidates)
    atribuicao: List[int] = []
    for p in emb.variable_points:
        valor = h.evaluate(p)
        atribuicao.append(valor if valor < limite else 0)
    fracao = instance.satisfied_fraction(atribuicao)
    gamma: Optional[float] = None
    bound: Optional[float] = None
    holds: Optional[bool] = None
    if state is not None:
        gamma = qldt_accept_exact(state, oraculo).gamma
        bound = gamma ** 4 / 100
        if assume_hypothesis:
            holds = fracao >= bound
    logger.info("decodificação: fração %.4f, Agr %.6f", fracao, agr)
    return DecodeReport(tuple(atribuicao), fracao, agr, gamma, bound, holds)


def line_ratio_report(field: FieldParams, d: int, tau: Sequence[Sequence[int]]) -> LineRatioReport:
    """Frações exatas de retas ℓ para as quais S(ℓ, τ) tem dimensão dim(τ)+2.

    Compara |L'|/|L| com 1 - 1/|F| e, para cada S de dimensão dim(τ)+2
    que contém τ, |L'_S|/|L_S| com 1 - 2/|F|.
    """
    fecho = canonical_subspace(affine_span(field, list(tau)))
    alvo = fecho.dimension + 2
    if alvo > d:
        raise ParameterError(f"dim(τ) + 2 = {alvo} excede d = {d}")
    catalogo = line_catalog(field, d)
    pontos = [tuple(int(x) for x in p) for p in tau]
    boas = np.array(
        [smallest_affine_containing(catalogo.line(i), pontos).dimension == alvo for i in range(catalogo.num_lines)]
    )
    razoes = []
    for s in all_subspaces_containing(fecho, alvo):
        dentro = np.zeros(field.order ** d, dtype=bool)
        dentro[s.point_indices()] = True
        em_s = dentro[catalogo.points].all(axis=1)
        razoes.append(float(boas[em_s].sum() / em_s.sum()))
    q = field.order
    return LineRatioReport(
        total_lines=catalogo.num_lines,
        good_lines=int(boas.sum()),
        ratio=float(boas.mean()),
        bound=1 - 1 / q,
        num_subspaces=len(razoes),
        min_subspace_ratio=min(razoes),
        subspace_bound=1 - 2 / q,
        ratios=tuple(razoes),
    )
