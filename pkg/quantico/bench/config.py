"""Configuração de experimentos."""

from dataclasses import asdict, dataclass, fields
from typing import Any, Dict, List, Optional, Tuple

EXPERIMENTS: Tuple[str, ...] = ("retrieve", "retrieve2", "qldt", "qpcp", "demo-advice", "line-counts")
MODES: Tuple[str, ...] = ("exact", "sampled", "both")


@dataclass(frozen=True)
class ExperimentConfig:
    """Documento de configuração de um experimento.

    A semente determina todas as execuções amostradas: a mesma
    configuração produz o mesmo relatório, byte a byte.

    Attributes:
        experiment: Um de EXPERIMENTS.
        a: Grau de extensão de F = GF(2^a).
        modulus_bits: Módulo explícito (None usa o padrão).
        d: Dimensão do espaço.
        h_size: |H|.
        r: Limite de grau (None usa d·(|H|-1)).
        seed: Semente raiz.
        trials: Tentativas de Monte Carlo.
        workers: Workers para as tentativas.
        adversaries: Nomes de estratégias de Merlin (vazio usa todas).
        data: Tabela de dados (None sorteia a partir da semente).
        w: Ponto marcado (None sorteia).
        w2: Segundo ponto marcado de R2 (None sorteia).
        instance: Instância GAP inline, caminho local ou URL.
        assignment: Atribuição para a prova do experimento qpcp.
        output: Caminho do relatório JSON.
        csv: Caminho do relatório CSV.
        mode: exact, sampled ou both.
        assume_hypothesis: Afirma a cota γ⁴/100 da decodificação.
    """

    experiment: str
    a: int = 4
    modulus_bits: Optional[int] = None
    d: int = 2
    h_size: int = 4
    r: Optional[int] = None
    seed: int = 0
    trials: int = 1000
    workers: int = 1
    adversaries: Tuple[str, ...] = ()
    data: Optional[Tuple[int, ...]] = None
    w: Optional[Tuple[int, ...]] = None
    w2: Optional[Tuple[int, ...]] = None
    instance: Any = None
    assignment: Optional[Tuple[int, ...]] = None
    output: Optional[str] = None
    csv: Optional[str] = None
    mode: str = "both"
    assume_hypothesis: bool = False

    @property
    def degree(self) -> int:
        """r efetivo."""
        return self.r if self.r is not None else self.d * (self.h_size - 1)

    @property
    def wants_exact(self) -> bool:
        return self.mode in ("exact", "both")

    @property
    def wants_sampled(self) -> bool:
        return self.mode in ("sampled", "both")

    def to_dict(self) -> Dict[str, Any]:
        dados = asdict(self)
        for chave in ("adversaries", "data", "w", "w2", "assignment"):
            if dados[chave] is not None:
                dados[chave] = list(dados[chave])
        return dados


def config_fields() -> List[str]:
    return [f.name for f in fields(ExperimentConfig)]
