"""Testes para o validador de corpos e tabelas."""

import pytest
from quantico.core.exceptions import InvalidModulus, ParameterError
from quantico.validadores import corpo


class TestCorpoValidation:
    """Testes de validação de corpos."""

    def test_validate_valid_field(self) -> None:
        """Testa documento com módulo irredutível."""
        assert corpo.validate({"a": 3, "modulus_bits": 11}) is True
        assert corpo.validate({"a": 4}) is True

    def test_validate_reducible_modulus(self) -> None:
        """Testa módulo redutível."""
        assert corpo.validate({"a": 2, "modulus_bits": 5}) is False
        with pytest.raises(InvalidModulus, match="redutível"):
            corpo.validate({"a": 2, "modulus_bits": 5}, raise_error=True)

    def test_validate_invalid_degree(self) -> None:
        """Testa grau ausente, booleano ou fora do intervalo."""
        assert corpo.validate({}) is False
        assert corpo.validate({"a": True}) is False
        with pytest.raises(ParameterError, match="Campo a deve ser inteiro"):
            corpo.parse({"a": 0})

    def test_validate_not_a_dict(self) -> None:
        """Testa documento que não é objeto."""
        with pytest.raises(ParameterError, match="deve ser um objeto"):
            corpo.parse([4])

    def test_serialize(self) -> None:
        """Testa que serialize produz um documento aceito por parse."""
        campo = corpo.parse({"a": 4})
        assert corpo.parse(corpo.serialize(campo)) == campo


class TestCorpoLde:
    """Testes de parâmetros da extensão e tabelas."""

    def test_parse_lde(self) -> None:
        """Testa a conversão em LdeParams."""
        params = corpo.parse_lde({"field": {"a": 4}, "d": 2, "h_size": 4})
        assert params.domain_size == 16

    def test_parse_lde_missing_field(self) -> None:
        """Testa d ausente."""
        with pytest.raises(ParameterError, match="Campo d deve ser inteiro"):
            corpo.parse_lde({"field": {"a": 4}, "h_size": 4})

    def test_parse_table_is_padded(self) -> None:
        """Testa o preenchimento com zeros."""
        tabela = corpo.parse_table({"lde": {"field": {"a": 2}, "d": 2, "h_size": 2}, "values": [3, 1]})
        assert tabela.values == (3, 1, 0, 0)

    def test_parse_table_invalid_values(self) -> None:
        """Testa valores negativos na tabela."""
        with pytest.raises(ParameterError, match="inteiros não negativos"):
            corpo.parse_table({"lde": {"field": {"a": 2}, "d": 2, "h_size": 2}, "values": [-1]})
