"""Testes para a demonstração de conselho quântico."""

import pytest
from quantico.bench.demo import advice_params, demo_accept_probability, demo_advice
from quantico.core.aleatorio import make_rng
from quantico.core.exceptions import ParameterError
from quantico.protocolos.retrieve import Verdict, soundness_bound

TABELA = [0, 1, 1, 0]


class TestDemoAdvice:
    """Testes da decisão por conselho."""

    def test_honest_accepts_members(self) -> None:
        """Testa aceitação de consultas na linguagem."""
        veredito, aceita = demo_advice(TABELA, "01", rng=make_rng(0))
        assert veredito == Verdict.value(1)
        assert aceita is True

    def test_honest_rejects_non_members(self) -> None:
        """Testa rejeição de consultas fora da linguagem."""
        veredito, aceita = demo_advice(TABELA, "11", rng=make_rng(0))
        assert veredito == Verdict.value(0)
        assert aceita is False

    def test_exact_probabilities(self) -> None:
        """Testa probabilidade exata 1 ou 0 com Merlin honesto."""
        assert [demo_accept_probability(TABELA, q) for q in ("00", "01", "10", "11")] == [0.0, 1.0, 1.0, 0.0]

    def test_cheating_is_bounded(self) -> None:
        """Testa a aceitação de não membros sob trapaça."""
        params = advice_params(2)
        limite = soundness_bound(params.field.order, params.d, params.default_degree)
        for nome in ("targeted-w-flip", "point-anchored", "random-garbage"):
            assert demo_accept_probability(TABELA, "00", nome, seed=3) <= limite + 1e-12

    def test_advice_params(self) -> None:
        """Testa o menor GF(16)^d com |H| = 4."""
        assert advice_params(2).d == 1
        assert advice_params(3).d == 2
        assert advice_params(4).domain_size == 16


class TestDemoErrors:
    """Testes de entradas inválidas."""

    def test_query_not_bits(self) -> None:
        """Testa consulta com caracteres inválidos."""
        with pytest.raises(ParameterError, match="sequência de bits"):
            demo_advice(TABELA, "0a")

    def test_table_size_mismatch(self) -> None:
        """Testa tabela com tamanho diferente de 2^ν."""
        with pytest.raises(ParameterError, match="não corresponde"):
            demo_advice(TABELA, "010")

    def test_table_not_bits(self) -> None:
        """Testa tabela com valores que não são bits."""
        with pytest.raises(ParameterError, match="apenas bits"):
            demo_advice([0, 2, 1, 0], "01")

    def test_table_larger_than_domain(self) -> None:
        """Testa tabela maior que |H|^d."""
        with pytest.raises(ParameterError, match="excede \\|H\\|\\^d"):
            demo_advice([0] * 8, "000", params=advice_params(2))
