"""Validador de configurações de experimento."""

from pathlib import Path
from typing import Any, Dict, Optional, Tuple, Union

from ..algebra.gf import MAX_DEGREE
from ..bench.config import EXPERIMENTS, MODES, ExperimentConfig, config_fields
from ..core.base import BaseValidator
from ..core.exceptions import ConfigurationError, ParameterError
from ..core.http import HTTPClient, http_client
from ..protocolos.retrieve import ADVERSARY_NAMES
from .corpo import corpo


class ConfigValidator(BaseValidator[ExperimentConfig]):
    """Validador do documento JSON de ExperimentConfig.

    Campos desconhecidos, experimentos ou estratégias inexistentes,
    contagens não positivas e tamanhos inconsistentes levantam
    ConfigurationError com o nome do campo.

    Examples:
        >>> from quantico.validadores import config
        >>> config.validate({"experiment": "retrieve", "a": 4, "d": 2, "h_size": 4})
        True
        >>> config.validate({"experiment": "desconhecido"})
        False
    """

    def validate(self, value: Any, raise_error: bool = False) -> bool:
        """Valida um documento de configuração.

        Args:
            value: Dicionário vindo de JSON.
            raise_error: Se True, levanta ConfigurationError ao invés de retornar False.

        Returns:
            True se a configuração é válida, False caso contrário.

        Raises:
            ConfigurationError: Se raise_error=True e a configuração for inválida.
        """
        try:
            self.parse(value)
            return True
        except ConfigurationError:
            if raise_error:
                raise
            return False

    def parse(self, value: Any) -> ExperimentConfig:
        if not isinstance(value, dict):
            raise ConfigurationError(f"Configuração deve ser um objeto, recebido: {type(value).__name__}")
        desconhecidos = sorted(set(value) - set(config_fields()))
        if desconhecidos:
            raise ConfigurationError(f"Campos desconhecidos: {', '.join(desconhecidos)}")
        experimento = value.get("experiment")
        if experimento not in EXPERIMENTS:
            raise ConfigurationError(
                f"Experimento deve ser um de {', '.join(EXPERIMENTS)}, recebido: {experimento!r}"
            )
        a = self._inteiro(value, "a", 4, minimo=1)
        if a > MAX_DEGREE:
            raise ConfigurationError(f"Campo a deve estar em [1, {MAX_DEGREE}], recebido: {a}")
        modulo = value.get("modulus_bits")
        try:
            corpo.parse({"a": a, "modulus_bits": modulo})
        except ParameterError as e:
            raise ConfigurationError(f"Campo modulus_bits inválido: {e}") from e
        d = self._inteiro(value, "d", 2, minimo=1)
        h_size = self._inteiro(value, "h_size", 4, minimo=1)
        if h_size > (1 << a):
            raise ConfigurationError(f"Campo h_size = {h_size} excede |F| = {1 << a}")
        r = value.get("r")
        if r is not None:
            r = self._inteiro(value, "r", 0, minimo=0)
        modo = value.get("mode", "both")
        if modo not in MODES:
            raise ConfigurationError(f"Campo mode deve ser um de {', '.join(MODES)}, recebido: {modo!r}")
        adversarios = tuple(value.get("adversaries") or ())
        invalidos = [n for n in adversarios if n not in ADVERSARY_NAMES]
        if invalidos:
            raise ConfigurationError(f"Estratégias desconhecidas em adversaries: {', '.join(map(str, invalidos))}")
        dados = self._lista(value, "data")
        if dados is not None and len(dados) > h_size ** d:
            raise ConfigurationError(f"Campo data com {len(dados)} valores excede |H|^d = {h_size ** d}")
        if dados is not None and any(v >= (1 << a) for v in dados):
            raise ConfigurationError("Campo data com valores fora do corpo")
        pontos = {}
        for nome in ("w", "w2"):
            ponto = self._lista(value, nome)
            if ponto is not None and (len(ponto) != d or any(x >= (1 << a) for x in ponto)):
                raise ConfigurationError(f"Campo {nome} deve ser um ponto de F^{d}")
            pontos[nome] = ponto
        return ExperimentConfig(
            experiment=experimento,
            a=a,
            modulus_bits=modulo,
            d=d,
            h_size=h_size,
            r=r,
            seed=self._inteiro(value, "seed", 0, minimo=0),
            trials=self._inteiro(value, "trials", 1000, minimo=1),
            workers=self._inteiro(value, "workers", 1, minimo=1),
            adversaries=adversarios,
            data=dados,
            w=pontos["w"],
            w2=pontos["w2"],
            instance=value.get("instance"),
            assignment=self._lista(value, "assignment"),
            output=value.get("output"),
            csv=value.get("csv"),
            mode=modo,
            assume_hypothesis=bool(value.get("assume_hypothesis", False)),
        )

    def serialize(self, obj: ExperimentConfig) -> Dict[str, Any]:
        return obj.to_dict()

    def carregar(self, fonte: Union[str, Path], client: Optional[HTTPClient] = None) -> ExperimentConfig:
        """Carrega e valida uma configuração de arquivo local ou URL.

        Raises:
            ConfigurationError: Se a configuração for inválida.
            SourceError: Se a fonte não puder ser lida.
        """
        return self.parse((client or http_client).carregar_json(fonte))

    def _inteiro(self, value: Dict[str, Any], name: str, default: int, minimo: int) -> int:
        campo = value.get(name, default)
        if isinstance(campo, bool) or not isinstance(campo, int):
            raise ConfigurationError(f"Campo {name} deve ser inteiro, recebido: {campo!r}")
        if campo < minimo:
            raise ConfigurationError(f"Campo {name} deve ser >= {minimo}, recebido: {campo}")
        return campo

    def _lista(self, value: Dict[str, Any], name: str) -> Optional[Tuple[int, ...]]:
        campo = value.get(name)
        if campo is None:
            return None
        try:
            return tuple(self._int_list(campo, name))
        except TypeError as e:
            raise ConfigurationError(str(e)) from e


config: ConfigValidator = ConfigValidator()
