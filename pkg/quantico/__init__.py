"""Quantico - Laboratório de extensões quânticas de baixo grau.

Biblioteca Python para simular a codificação de tabelas como extensões
quânticas de baixo grau, a recuperação de valores com Merlin, o teste
quântico de baixo grau e o verificador QPCP de uma consulta.

"""

__version__ = "0.1.0"

__all__ = [
	"__version__",
]
