"""Classe base abstrata para todos os validadores do Quantico."""

from abc import ABC, abstractmethod
from typing import Any, Dict, Generic, List, TypeVar

T = TypeVar("T")


class BaseValidator(ABC, Generic[T]):
	"""Classe base abstrata para implementação de validadores.

	Esta classe define a interface que todos os validadores de documentos
	JSON devem implementar: validação, conversão para o objeto de domínio
	e serialização de volta para dicionário.

	Type Parameters:
		T: Tipo do objeto de domínio produzido pelo validador.

	Examples:
		>>> class MeuValidator(BaseValidator[int]):
		...     def validate(self, value, raise_error=False) -> bool:
		...         return isinstance(value, dict) and "n" in value
		...
		...     def parse(self, value) -> int:
		...         return int(value["n"])
		...
		...     def serialize(self, obj: int) -> dict:
		...         return {"n": obj}
	"""

	@abstractmethod
	def validate(self, value: Any, raise_error: bool = False) -> bool:
		"""Valida o documento fornecido.

		Args:
			value: Documento (geralmente um dicionário vindo de JSON).
			raise_error: Se True, levanta exceção em caso de validação falhar.
						Se False, retorna False silenciosamente.

		Returns:
			True se o documento é válido, False caso contrário.

		Raises:
			ValidationError: Se raise_error=True e a validação falhar.
		"""
		pass

	@abstractmethod
	def parse(self, value: Any) -> T:
		"""Converte um documento válido no objeto de domínio.

		Args:
			value: Documento a ser convertido.

		Returns:
			Objeto de domínio correspondente.

		Raises:
			ValidationError: Se o documento for inválido.
		"""
		pass

	@abstractmethod
	def serialize(self, obj: T) -> Dict[str, Any]:
		"""Serializa o objeto de domínio em um dicionário compatível com JSON.

		Args:
			obj: Objeto de domínio.

		Returns:
			Dicionário que parse() aceita de volta.
		"""
		pass

	def _int_list(self, value: Any, name: str) -> List[int]:
		"""Converte uma sequência JSON em lista de inteiros não negativos.

		Método utilitário compartilhado pelos validadores para pontos,
		vetores e tabelas de dados.

		Args:
			value: Sequência a converter.
			name: Nome do campo, usado na mensagem de erro.

		Returns:
			Lista de inteiros.

		Raises:
			TypeError: Se value não for uma sequência de inteiros não negativos.

		Examples:
			>>> validator._int_list([1, 2, 3], "w")
			[1, 2, 3]
		"""
		if not isinstance(value, (list, tuple)):
			raise TypeError(f"{name} deve ser uma lista, recebido: {type(value).__name__}")
		result = []
		for item in value:
			if isinstance(item, bool) or not isinstance(item, int) or item < 0:
				raise TypeError(f"{name} deve conter inteiros não negativos, recebido: {item!r}")
			result.append(item)
		return result
