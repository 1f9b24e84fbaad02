"""Demonstração de conselho quântico: tabela-verdade como estado e recuperação por R1.

Os bits a_i = 1 sse i pertence à linguagem viram a tabela de dados de uma
extensão de baixo grau; para decidir x Alice recupera a_x com R1 e aceita
somente quando o valor concluído é 1.
"""

import logging
import math
from typing import Optional, Sequence, Tuple, Union

import numpy as np

from ..algebra.mpoly import DataTable, LdeParams, interpolate_lde
from ..core.aleatorio import make_rng
from ..core.exceptions import ParameterError
from ..protocolos.qsim import build_qlde_state
from ..protocolos.retrieve import (
    MerlinStrategy,
    Verdict,
    adversary_suite,
    exact_r1_distribution,
    honest_strategy,
    run_r1,
)

logger = logging.getLogger(__name__)

StrategyLike = Union[str, MerlinStrategy, None]


def _query_index(truth_table: Sequence[int], query: str) -> int:
    nu = len(query)
    if nu == 0 or any(c not in "01" for c in query):
        raise ParameterError(f"Consulta deve ser uma sequência de bits, recebido: {query!r}")
    if len(truth_table) != 1 << nu:
        raise ParameterError(
            f"Tabela-verdade com {len(truth_table)} entradas não corresponde a consultas de {nu} bits"
        )
    if any(b not in (0, 1) for b in truth_table):
        raise ParameterError("Tabela-verdade deve conter apenas bits")
    return int(query, 2)


def advice_params(nu: int) -> LdeParams:
    """Menor espaço GF(16)^d com |H| = 4 que comporta 2^nu entradas."""
    return LdeParams.create(a=4, d=max(1, math.ceil(nu / 2)), h_size=4)


def _setup(
    truth_table: Sequence[int],
    query: str,
    strategy: StrategyLike,
    params: Optional[LdeParams],
    rng: np.random.Generator,
    r: Optional[int],
) -> Tuple[LdeParams, DataTable, Tuple[int, ...], MerlinStrategy, int]:
    indice = _query_index(truth_table, query)
    params = params or advice_params(len(query))
    if len(truth_table) > params.domain_size:
        raise ParameterError(
            f"Tabela com {len(truth_table)} entradas excede |H|^d = {params.domain_size}"
        )
    dados = DataTable.padded(params, [int(b) for b in truth_table])
    grau = params.default_degree if r is None else r
    lde = interpolate_lde(params, dados)
    if strategy is None:
        merlin = honest_strategy(lde)
    elif isinstance(strategy, str):
        merlin = adversary_suite(lde, grau, rng, [strategy])[0]
    else:
        merlin = strategy
    return params, dados, params.pi_inv(indice), merlin, grau


def demo_advice(
    truth_table: Sequence[int],
    query: str,
    strategy: StrategyLike = None,
    params: Optional[LdeParams] = None,
    rng: Optional[np.random.Generator] = None,
    r: Optional[int] = None,
) -> Tuple[Verdict, bool]:
    """Decide a consulta recuperando o bit correspondente do conselho.

    Args:
        truth_table: 2^ν bits, a_i = 1 sse i está na linguagem.
        query: Consulta de ν bits.
        strategy: Merlin (objeto ou nome de ADVERSARY_NAMES); honesto quando None.
        params: Espaço da extensão (o menor GF(16)^d com |H| = 4 por padrão).
        rng: Gerador para a medição e para as estratégias nomeadas.
        r: Limite de grau (padrão d·(|H|-1)).

    Returns:
        (veredito, aceita); aceita somente com value(1).

    Raises:
        ParameterError: Se a tabela não couber em H^d ou a consulta for inválida.

    Examples:
        >>> demo_advice([0, 1, 1, 0], "01", rng=make_rng(0))
        (Verdict(kind='value', values=(1,)), True)
    """
    rng = rng if rng is not None else make_rng()
    params, dados, w, merlin, grau = _setup(truth_table, query, strategy, params, rng, r)
    estado = build_qlde_state(params, dados)
    veredito = run_r1(estado, w, merlin, grau, rng)
    aceita = veredito == Verdict.value(1)
    logger.info("conselho: consulta %s -> %s (%s)", query, veredito, "aceita" if aceita else "rejeita")
    return veredito, aceita


def demo_accept_probability(
    truth_table: Sequence[int],
    query: str,
    strategy: StrategyLike = None,
    params: Optional[LdeParams] = None,
    seed: int = 0,
    r: Optional[int] = None,
) -> float:
    """Probabilidade exata de aceitação da demonstração, sobre todas as medições."""
    rng = make_rng(seed)
    params, dados, w, merlin, grau = _setup(truth_table, query, strategy, params, rng, r)
    distribuicao = exact_r1_distribution(dados, params, w, merlin, grau)
    return float(distribuicao.get(Verdict.value(1), 0.0))
