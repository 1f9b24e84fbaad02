"""Validador de instâncias GAP(s, q, ε) em JSON."""

from pathlib import Path
from typing import Any, Dict, Optional, Union

from ..core.base import BaseValidator
from ..core.exceptions import InvalidInstance
from ..core.http import HTTPClient, http_client
from ..protocolos.qpcp import GapInstance, Predicate


class InstanciaValidator(BaseValidator[GapInstance]):
    """Validador do documento {m, s, q, eps, predicates: [{vars, sat}]}.

    Examples:
        >>> from quantico.validadores import instancia
        >>> doc = {"m": 2, "s": 1, "q": 2, "eps": 0.5,
        ...        "predicates": [{"vars": [0, 1], "sat": [[0, 0], [1, 1]]}]}
        >>> instancia.validate(doc)
        True
        >>> instancia.parse(doc).k
        1
    """

    def validate(self, value: Any, raise_error: bool = False) -> bool:
        """Valida um documento de instância.

        Args:
            value: Dicionário vindo de JSON.
            raise_error: Se True, levanta InvalidInstance ao invés de retornar False.

        Returns:
            True se a instância é válida, False caso contrário.

        Raises:
            InvalidInstance: Se raise_error=True e a instância for inválida.
        """
        try:
            self.parse(value)
            return True
        except InvalidInstance:
            if raise_error:
                raise
            return False

    def parse(self, value: Any) -> GapInstance:
        if not isinstance(value, dict):
            raise InvalidInstance(f"Instância deve ser um objeto, recebido: {type(value).__name__}")
        for campo in ("m", "s", "q", "predicates"):
            if campo not in value:
                raise InvalidInstance(f"Campo obrigatório ausente: {campo}")
        try:
            m, s, q = (self._inteiro(value[c], c) for c in ("m", "s", "q"))
            eps = float(value.get("eps", 0.5))
            if not isinstance(value["predicates"], list):
                raise InvalidInstance("predicates deve ser uma lista")
            predicados = []
            for j, doc in enumerate(value["predicates"]):
                if not isinstance(doc, dict) or "vars" not in doc or "sat" not in doc:
                    raise InvalidInstance(f"Predicado {j} deve ter vars e sat")
                variaveis = tuple(self._int_list(doc["vars"], f"predicates[{j}].vars"))
                if not isinstance(doc["sat"], list):
                    raise InvalidInstance(f"predicates[{j}].sat deve ser uma lista")
                sat = frozenset(
                    tuple(self._int_list(t, f"predicates[{j}].sat")) for t in doc["sat"]
                )
                predicados.append(Predicate(variaveis, sat))
        except (TypeError, ValueError) as e:
            raise InvalidInstance(str(e)) from e
        return GapInstance(m, s, q, tuple(predicados), eps)

    def serialize(self, obj: GapInstance) -> Dict[str, Any]:
        return obj.to_dict()

    def carregar(
        self,
        fonte: Union[str, Path, Dict[str, Any]],
        client: Optional[HTTPClient] = None,
    ) -> GapInstance:
        """Carrega uma instância inline, de arquivo local ou de URL http(s).

        Raises:
            InvalidInstance: Se o documento for inválido.
            SourceError: Se a fonte não puder ser lida.
        """
        if isinstance(fonte, dict):
            return self.parse(fonte)
        return self.parse((client or http_client).carregar_json(fonte))

    def _inteiro(self, value: Any, name: str) -> int:
        if isinstance(value, bool) or not isinstance(value, int):
            raise InvalidInstance(f"Campo {name} deve ser inteiro, recebido: {value!r}")
        return value


instancia: InstanciaValidator = InstanciaValidator()
