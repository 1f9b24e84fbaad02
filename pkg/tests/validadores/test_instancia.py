"""Testes para o validador de instâncias GAP."""

import json

import pytest
from quantico.core.exceptions import InvalidInstance, SourceError
from quantico.protocolos.qpcp import gap_unsat_equality
from quantico.validadores import instancia

DOCUMENTO = {
    "m": 2,
    "s": 1,
    "q": 2,
    "eps": 0.5,
    "predicates": [{"vars": [0, 1], "sat": [[0, 0], [1, 1]]}],
}


class TestInstanciaValidation:
    """Testes de validação de instâncias."""

    def test_validate_valid_instance(self) -> None:
        """Testa documento válido."""
        assert instancia.validate(DOCUMENTO) is True
        assert instancia.parse(DOCUMENTO).k == 1

    def test_missing_field(self) -> None:
        """Testa campo obrigatório ausente."""
        documento = {k: v for k, v in DOCUMENTO.items() if k != "q"}
        assert instancia.validate(documento) is False
        with pytest.raises(InvalidInstance, match="Campo obrigatório ausente: q"):
            instancia.validate(documento, raise_error=True)

    def test_non_integer_field(self) -> None:
        """Testa m não inteiro."""
        with pytest.raises(InvalidInstance, match="Campo m deve ser inteiro"):
            instancia.parse({**DOCUMENTO, "m": "2"})

    def test_predicate_without_sat(self) -> None:
        """Testa predicado sem a chave sat."""
        with pytest.raises(InvalidInstance, match="deve ter vars e sat"):
            instancia.parse({**DOCUMENTO, "predicates": [{"vars": [0, 1]}]})

    def test_negative_variable(self) -> None:
        """Testa índice de variável negativo."""
        with pytest.raises(InvalidInstance, match="inteiros não negativos"):
            instancia.parse({**DOCUMENTO, "predicates": [{"vars": [-1, 1], "sat": [[0, 0]]}]})

    def test_serialize_round_trip(self) -> None:
        """Testa parse(serialize(x)) == x."""
        original = gap_unsat_equality()
        assert instancia.parse(instancia.serialize(original)) == original


class TestInstanciaCarregar:
    """Testes de carregamento de instâncias."""

    def test_load_inline(self) -> None:
        """Testa instância inline."""
        assert instancia.carregar(DOCUMENTO).m == 2

    def test_load_from_file(self, tmp_path) -> None:
        """Testa instância em arquivo local."""
        arquivo = tmp_path / "gap.json"
        arquivo.write_text(json.dumps(DOCUMENTO), encoding="utf-8")
        assert instancia.carregar(str(arquivo)).q == 2

    def test_load_missing_file(self, tmp_path) -> None:
        """Testa arquivo inexistente."""
        with pytest.raises(SourceError):
            instancia.carregar(tmp_path / "nada.json")
