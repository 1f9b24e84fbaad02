"""Validador de parâmetros de corpo, de extensão de baixo grau e de tabelas de dados."""

from typing import Any, Dict

from ..algebra.gf import MAX_DEGREE, FieldParams, get_field
from ..algebra.mpoly import DataTable, LdeParams
from ..core.base import BaseValidator
from ..core.exceptions import ParameterError


class CorpoValidator(BaseValidator[FieldParams]):
    """Validador de documentos {"a": ..., "modulus_bits": ...}.

    modulus_bits é opcional e, ausente, usa o módulo padrão do grau a.

    Examples:
        >>> from quantico.validadores import corpo
        >>> corpo.validate({"a": 3, "modulus_bits": 11})
        True
        >>> corpo.validate({"a": 2, "modulus_bits": 5})
        False
        >>> corpo.parse({"a": 4}).order
        16
    """

    def validate(self, value: Any, raise_error: bool = False) -> bool:
        """Valida um documento de corpo.

        Args:
            value: Dicionário com a e, opcionalmente, modulus_bits.
            raise_error: Se True, levanta ParameterError ao invés de retornar False.

        Returns:
            True se o documento descreve um corpo válido, False caso contrário.

        Raises:
            ParameterError: Se raise_error=True e o documento for inválido
                (InvalidModulus quando o módulo for redutível ou de grau errado).
        """
        try:
            self.parse(value)
            return True
        except ParameterError:
            if raise_error:
                raise
            return False

    def parse(self, value: Any) -> FieldParams:
        if not isinstance(value, dict):
            raise ParameterError(f"Corpo deve ser um objeto, recebido: {type(value).__name__}")
        a = value.get("a")
        if isinstance(a, bool) or not isinstance(a, int) or not 1 <= a <= MAX_DEGREE:
            raise ParameterError(f"Campo a deve ser inteiro em [1, {MAX_DEGREE}], recebido: {a!r}")
        modulo = value.get("modulus_bits")
        if modulo is not None and (isinstance(modulo, bool) or not isinstance(modulo, int)):
            raise ParameterError(f"Campo modulus_bits deve ser inteiro, recebido: {modulo!r}")
        return get_field(a, modulo)

    def serialize(self, obj: FieldParams) -> Dict[str, Any]:
        return obj.to_dict()

    def parse_lde(self, value: Any) -> LdeParams:
        """Converte {"field": {...}, "d": ..., "h_size": ...} em LdeParams.

        Raises:
            ParameterError: Se algum campo estiver ausente ou inválido.
        """
        if not isinstance(value, dict):
            raise ParameterError("Parâmetros da extensão devem ser um objeto")
        corpo = self.parse(value.get("field"))
        d = value.get("d")
        h_size = value.get("h_size")
        for nome, campo in (("d", d), ("h_size", h_size)):
            if isinstance(campo, bool) or not isinstance(campo, int):
                raise ParameterError(f"Campo {nome} deve ser inteiro, recebido: {campo!r}")
        return LdeParams(corpo, d, h_size)

    def parse_table(self, value: Any) -> DataTable:
        """Converte {"lde": {...}, "values": [...]} em DataTable (completada com zeros)."""
        if not isinstance(value, dict):
            raise ParameterError("Tabela de dados deve ser um objeto")
        params = self.parse_lde(value.get("lde"))
        try:
            valores = self._int_list(value.get("values"), "values")
        except TypeError as e:
            raise ParameterError(str(e)) from e
        return DataTable.padded(params, valores)

    def serialize_table(self, table: DataTable) -> Dict[str, Any]:
        return table.to_dict()


corpo: CorpoValidator = CorpoValidator()
