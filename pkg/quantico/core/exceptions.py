"""Exceções customizadas do Quantico."""


class QuanticoException(Exception):
	"""Exceção base para todas as exceções do Quantico.

	Esta é a classe base da qual todas as outras exceções do Quantico herdam.
	Permite capturar todas as exceções do Quantico com um único except.
	"""

	pass


class ValidationError(QuanticoException):
	"""Exceção levantada quando a validação de um dado falha.

	Esta exceção é levantada quando um valor não passa na validação,
	mas não se encaixa em nenhuma categoria mais específica.
	"""

	pass


class ParameterError(ValidationError):
	"""Exceção levantada quando parâmetros de uma operação são inconsistentes.

	Pode ser levantada por:
	- Elementos de corpos diferentes combinados na mesma operação
	- Dimensões incompatíveis entre pontos, polinômios e subespaços
	- Mapas lineares singulares onde se exige inversibilidade
	- Limites de grau que tornam um teste vacuo (r >= |F|)
	"""

	pass


class InvalidModulus(ParameterError):
	"""Polinômio módulo de grau errado ou redutível sobre GF(2)."""

	pass


class DegenerateLineError(ParameterError):
	"""Reta pedida por dois pontos coincidentes (direção nula)."""

	pass


class DomainError(QuanticoException, ArithmeticError):
	"""Exceção levantada ao inverter o elemento zero do corpo."""

	pass


class ResourceError(QuanticoException):
	"""Exceção levantada quando uma enumeração excede o orçamento configurado.

	Indica que o domínio pedido (pontos, retas, polinômios candidatos)
	não cabe na escala de enumeração exaustiva.
	"""

	pass


class InvalidInstance(ValidationError):
	"""Exceção levantada quando uma instância GAP é inválida.

	Pode ser levantada por:
	- Aridade maior que q
	- Índices de variáveis fora de [0, m)
	- Predicado sem atribuição satisfatória
	- Valores fora de [0, 2^s)
	"""

	pass


class InvalidProof(ValidationError):
	"""Documento de prova (blocos ou estado quântico) malformado."""

	pass


class ConfigurationError(ValidationError):
	"""Configuração de experimento inválida."""

	pass


class UnsatisfiedAssignment(QuanticoException):
	"""Atribuição que deixa algum predicado insatisfeito.

	Levantada por build_correct_proof quando a prova correta é pedida
	para uma atribuição que não satisfaz a instância.
	"""

	pass


class SourceError(QuanticoException):
	"""Exceção levantada quando uma fonte JSON não pode ser carregada.

	Pode indicar:
	- Arquivo local inexistente ou ilegível
	- Timeout ou erro de conexão
	- Erro HTTP (4xx, 5xx)
	- Conteúdo que não é JSON válido
	"""

	pass
