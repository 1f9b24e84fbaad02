"""Estatística de Monte Carlo: erro padrão, portão de 4σ e amostragem por workers."""

import math
from collections import Counter
from dataclasses import dataclass
from typing import Callable, Dict, Hashable

import numpy as np

from ..core.aleatorio import count_outcomes
from ..core.exceptions import ParameterError

SIGMAS: float = 4.0
EXACT_TOL: float = 1e-12


def bernoulli_stderr(p: float, n: int) -> float:
    """sqrt(p(1-p)/n).

    Examples:
        >>> bernoulli_stderr(0.5, 100)
        0.05
    """
    if n < 1:
        raise ParameterError(f"n deve ser positivo, recebido: {n}")
    return math.sqrt(max(p * (1 - p), 0.0) / n)


def within_sigma(estimate: float, exact: float, n: int, sigmas: float = SIGMAS) -> bool:
    """|p̂ - p| <= sigmas·σ, com σ o maior entre os desvios de p̂ e de p.

    Com σ = 0 (p̂ e p em {0, 1}) exige igualdade.
    """
    sd = max(bernoulli_stderr(estimate, n), bernoulli_stderr(min(max(exact, 0.0), 1.0), n))
    if sd == 0:
        return abs(estimate - exact) <= EXACT_TOL
    return abs(estimate - exact) <= sigmas * sd


@dataclass(frozen=True)
class Estimate:
    """Frequência observada de um evento em `trials` tentativas."""

    successes: int
    trials: int

    @property
    def p(self) -> float:
        return self.successes / self.trials

    @property
    def stderr(self) -> float:
        return bernoulli_stderr(self.p, self.trials)

    def agrees_with(self, exact: float, sigmas: float = SIGMAS) -> bool:
        return within_sigma(self.p, exact, self.trials, sigmas)

    def to_dict(self) -> Dict[str, float]:
        return {"successes": self.successes, "trials": self.trials, "p": self.p, "stderr": self.stderr}


def sample_outcomes(
    trial: Callable[[np.random.Generator], Hashable],
    trials: int,
    seed: int,
    workers: int = 1,
) -> Counter:
    """Conta os resultados de `trials` tentativas (ao menos uma) via count_outcomes."""
    if trials < 1 or workers < 1:
        raise ParameterError(f"trials={trials} e workers={workers} devem ser positivos")
    return count_outcomes(trial, trials, seed, workers)
