"""Geradores pseudoaleatórios reprodutíveis (PCG64) usados em todo o pacote."""

from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Hashable, List, Optional, Sequence

import numpy as np

from .exceptions import ParameterError

Generator = np.random.Generator


def make_rng(seed: Optional[int] = None) -> Generator:
    """Cria um gerador PCG64 a partir de uma semente.

    Args:
        seed: Semente inteira não negativa; None usa entropia do sistema.

    Returns:
        Gerador numpy determinístico para a semente dada.

    Examples:
        >>> make_rng(7).integers(0, 16) == make_rng(7).integers(0, 16)
        True
    """
    return np.random.Generator(np.random.PCG64(seed))


def spawn_streams(seed: int, n: int) -> List[Generator]:
    """Deriva n subfluxos independentes de uma semente (um por worker).

    O fluxo i depende apenas de (seed, i), de modo que o resultado
    combinado por índice de worker não depende do escalonamento.
    """
    filhos = np.random.SeedSequence(seed).spawn(n)
    return [np.random.Generator(np.random.PCG64(filho)) for filho in filhos]


def keyed_rng(seed: int, key: Sequence[int]) -> Generator:
    """Gerador determinístico por chave (semente, chave da consulta)."""
    entropia = [int(seed)] + [int(k) for k in key]
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(entropia)))


def count_outcomes(
    trial: Callable[[Generator], Hashable],
    trials: int,
    seed: int,
    workers: int = 1,
) -> Counter:
    """Conta os resultados de tentativas independentes divididas entre workers.

    O worker i usa o subfluxo i de spawn_streams(seed, workers) e as
    contagens são combinadas na ordem dos índices, de modo que o total
    depende apenas de (seed, trials, workers).

    Args:
        trial: Função que recebe um gerador e retorna um resultado hashable.
        trials: Número total de tentativas.
        seed: Semente raiz.
        workers: Número de workers (threads).

    Returns:
        Contagem de cada resultado.
    """
    if trials < 0 or workers < 1:
        raise ParameterError(f"trials={trials} e workers={workers} inválidos")
    fluxos = spawn_streams(seed, workers)
    cotas = [trials // workers + (1 if i < trials % workers else 0) for i in range(workers)]

    def executar(indice: int) -> Counter:
        rng = fluxos[indice]
        return Counter(trial(rng) for _ in range(cotas[indice]))

    if workers == 1:
        parciais = [executar(0)]
    else:
        with ThreadPoolExecutor(max_workers=workers) as executor:
            parciais = list(executor.map(executar, range(workers)))
    total: Counter = Counter()
    for parcial in parciais:
        total.update(parcial)
    return total


def run_trials(
    trial: Callable[[Generator], bool],
    trials: int,
    seed: int,
    workers: int = 1,
) -> int:
    """Executa tentativas independentes de Bernoulli e conta os sucessos.

    Mesma divisão em subfluxos de count_outcomes.
    """
    contagem = count_outcomes(trial, trials, seed, workers)
    return sum(n for resultado, n in contagem.items() if resultado)
