"""Testes para polinômios e extensões de baixo grau."""

import numpy as np
import pytest
from quantico.algebra.geom import Line, all_points
from quantico.algebra.gf import get_field
from quantico.algebra.mpoly import (
    DataTable,
    LdeParams,
    MultiPoly,
    UniPoly,
    evaluate,
    evaluate_univariate_rows,
    fit_multivariate,
    fit_univariate,
    interpolate_function,
    interpolate_lde,
    monomials,
    poly_equal_schwartz_zippel,
    restrict_to_subspace,
    univariate_degrees,
)
from quantico.core.aleatorio import make_rng
from quantico.core.exceptions import ParameterError, ResourceError


@pytest.fixture
def params() -> LdeParams:
    return LdeParams(get_field(4), d=2, h_size=4)


@pytest.fixture
def tabela(params: LdeParams) -> DataTable:
    valores = make_rng(7).integers(0, 16, size=params.domain_size)
    return DataTable.from_sequence(params, valores)


class TestLdeParams:
    """Testes dos parâmetros e da bijeção π."""

    def test_pi_examples(self, params: LdeParams) -> None:
        """Testa π e π⁻¹ na ordem lexicográfica."""
        assert params.pi_inv(6) == (1, 2)
        assert params.pi((1, 2)) == 6
        assert params.pi_inv(0) == (0, 0)
        assert params.pi_inv(15) == (3, 3)

    def test_sizes(self, params: LdeParams) -> None:
        """Testa |H|^d, |F|^d e o grau padrão."""
        assert params.domain_size == 16
        assert params.num_points == 256
        assert params.default_degree == 6

    def test_h_larger_than_field(self) -> None:
        """Testa rejeição de |H| > |F|."""
        with pytest.raises(ParameterError, match=r"\|H\| deve estar"):
            LdeParams(get_field(2), d=2, h_size=5)

    def test_point_outside_h(self, params: LdeParams) -> None:
        """Testa π fora de H^d."""
        with pytest.raises(ParameterError, match="não pertence"):
            params.pi((4, 0))


class TestDataTable:
    """Testes da tabela de dados."""

    def test_wrong_length(self, params: LdeParams) -> None:
        """Testa tabela com tamanho diferente de |H|^d."""
        with pytest.raises(ParameterError, match="Tabela deve ter 16 valores"):
            DataTable(params, (1, 2, 3))

    def test_padded_with_zeros(self, params: LdeParams) -> None:
        """Testa o preenchimento com variáveis fictícias nulas."""
        dados = DataTable.padded(params, [5, 6])
        assert dados.values[:2] == (5, 6)
        assert set(dados.values[2:]) == {0}

    def test_padded_too_long(self) -> None:
        """Testa tabela maior que |H|^d."""
        pequeno = LdeParams(get_field(2), d=1, h_size=2)
        with pytest.raises(ParameterError, match="não cabem"):
            DataTable.padded(pequeno, [0, 1, 1])

    def test_value_outside_field(self) -> None:
        """Testa valor que não codifica elemento de F."""
        pequeno = LdeParams(get_field(2), d=1, h_size=2)
        with pytest.raises(ParameterError, match="fora de"):
            DataTable(pequeno, (0, 4))


class TestInterpolateLde:
    """Testes da extensão de baixo grau."""

    def test_small_example(self) -> None:
        """Testa que a tabela (0, 1) sobre H = {0, 1} estende para x."""
        pequeno = LdeParams(get_field(2), d=1, h_size=2)
        assert interpolate_lde(pequeno, DataTable(pequeno, (0, 1))).terms() == [((1,), 1)]

    def test_agrees_on_h(self, params: LdeParams, tabela: DataTable) -> None:
        """Testa Ã(π⁻¹(i)) = a_i para todo i."""
        lde = interpolate_lde(params, tabela)
        for i in range(params.domain_size):
            assert lde.evaluate(params.pi_inv(i)) == tabela.values[i]

    def test_degree_bounds(self, params: LdeParams, tabela: DataTable) -> None:
        """Testa grau <= |H|-1 por variável e <= d(|H|-1) no total."""
        lde = interpolate_lde(params, tabela)
        assert lde.max_var_degree() <= params.h_size - 1
        assert lde.total_degree() <= params.default_degree

    @pytest.mark.parametrize("d, h_size", [(1, 2), (1, 3), (2, 2), (2, 3)])
    def test_lde_is_unique(self, d: int, h_size: int) -> None:
        """Testa que um único polinômio de grau < |H| por variável coincide com a tabela em H^d."""
        gf4 = get_field(2)
        params = LdeParams(gf4, d=d, h_size=h_size)
        expoentes = monomials(d, h_size - 1)
        pontos = np.array([params.pi_inv(i) for i in range(params.domain_size)])
        base = np.ones((len(expoentes), len(pontos)), dtype=np.int64)
        for i, e in enumerate(expoentes):
            for j, ej in enumerate(e):
                base[i] = gf4.mul_array(base[i], gf4.pow_array(pontos[:, j], ej))
        total = 4 ** len(expoentes)
        potencias = 4 ** np.arange(len(expoentes) - 1, -1, -1, dtype=np.int64)
        rng = make_rng(10 * d + h_size)
        for _ in range(3):
            tabela = DataTable(params, tuple(int(v) for v in rng.integers(0, 4, size=params.domain_size)))
            alvo = np.array(tabela.values)
            concordantes = []
            for inicio in range(0, total, 1 << 14):
                indices = np.arange(inicio, min(total, inicio + (1 << 14)), dtype=np.int64)
                coefs = (indices[:, None] // potencias[None, :]) % 4
                valores = np.bitwise_xor.reduce(gf4.mul_array(coefs[:, :, None], base[None, :, :]), axis=1)
                concordantes.extend(coefs[(valores == alvo).all(axis=1)].tolist())
            assert len(concordantes) == 1
            unico = MultiPoly(gf4, d, {e: c for e, c in zip(expoentes, concordantes[0])})
            assert unico == interpolate_lde(params, tabela)

    def test_zero_table(self, params: LdeParams) -> None:
        """Testa que a tabela nula estende para o polinômio nulo."""
        lde = interpolate_lde(params, DataTable.padded(params, []))
        assert lde.is_zero()
        assert lde.total_degree() == -1

    def test_grid_matches_pointwise_evaluation(self, params: LdeParams, tabela: DataTable) -> None:
        """Testa evaluation_grid contra evaluation_table em todos os pontos."""
        lde = interpolate_lde(params, tabela)
        pontos = all_points(params.field, params.d)
        assert np.array_equal(lde.evaluation_grid(), lde.evaluation_table(pontos))
        assert evaluate(lde, (5, 9)) == lde.evaluation_grid()[5 * 16 + 9]


class TestMultiPoly:
    """Testes de operações com polinômios."""

    def test_exponent_reduction(self) -> None:
        """Testa x^|F| = x como função."""
        gf4 = get_field(2)
        assert MultiPoly(gf4, 1, {(4,): 1}) == MultiPoly(gf4, 1, {(1,): 1})

    def test_add_and_mul(self) -> None:
        """Testa (x + y)² = x² + y² em característica 2."""
        gf4 = get_field(2)
        x = MultiPoly.variable(gf4, 2, 0)
        y = MultiPoly.variable(gf4, 2, 1)
        assert (x + y) * (x + y) == x * x + y * y
        assert (x + x).is_zero()

    def test_wrong_dimension(self) -> None:
        """Testa avaliação em ponto de dimensão errada."""
        gf4 = get_field(2)
        with pytest.raises(ParameterError, match="Ponto de dimensão"):
            MultiPoly.variable(gf4, 2, 0).evaluate((1,))

    def test_list_round_trip(self) -> None:
        """Testa to_list/from_list."""
        gf16 = get_field(4)
        p = MultiPoly(gf16, 2, {(1, 2): 7, (0, 0): 3})
        assert MultiPoly.from_list(gf16, 2, p.to_list()) == p

    def test_interpolate_function_recovers_table(self) -> None:
        """Testa que o interpolador coincide com a tabela em F^n."""
        gf4 = get_field(2)
        valores = make_rng(3).integers(0, 4, size=16)
        p = interpolate_function(gf4, 2, valores)
        assert np.array_equal(p.evaluation_grid(), valores)
        assert p.max_var_degree() <= 3

    def test_grid_too_large(self) -> None:
        """Testa o limite de grades densas."""
        with pytest.raises(ResourceError, match="excede o limite"):
            MultiPoly.zero(get_field(8), 3).dense_coefficients()

    def test_restrict_to_line(self, params: LdeParams, tabela: DataTable) -> None:
        """Testa p|_ℓ(t) = p(base + t·dir)."""
        lde = interpolate_lde(params, tabela)
        reta = Line(params.field, (3, 1), (1, 7))
        restrita = restrict_to_subspace(lde, reta.as_subspace())
        for t in range(16):
            assert restrita.evaluate((t,)) == lde.evaluate(reta.point(t))
        assert restrita.total_degree() <= lde.total_degree()


class TestUnivariate:
    """Testes de ajuste e avaliação em uma variável."""

    def test_fit_univariate(self) -> None:
        """Testa o ajuste de t² em GF(4)."""
        gf4 = get_field(2)
        quadrado = [gf4.mul(t, t) for t in range(4)]
        assert fit_univariate(gf4, quadrado, 2).coeffs == (0, 0, 1)
        assert fit_univariate(gf4, quadrado, 1) is None

    def test_fit_from_mapping(self) -> None:
        """Testa o ajuste a partir de um dicionário t -> valor."""
        gf4 = get_field(2)
        assert fit_univariate(gf4, {0: 2, 1: 2, 2: 2, 3: 2}, 0).coeffs == (2,)
        with pytest.raises(ParameterError, match="todo F"):
            fit_univariate(gf4, {0: 1}, 3)

    def test_unipoly_values(self) -> None:
        """Testa avaliação escalar e vetorizada de 1 + t²."""
        gf4 = get_field(2)
        g = UniPoly(gf4, (1, 0, 1, 0))
        assert g.degree == 2
        assert list(g.values()) == [g.evaluate(t) for t in range(4)]

    def test_fit_multivariate(self) -> None:
        """Testa o ajuste com limite de grau total."""
        gf4 = get_field(2)
        xy = MultiPoly(gf4, 2, {(1, 1): 1})
        assert fit_multivariate(gf4, 2, xy.evaluation_grid(), 2) == xy
        assert fit_multivariate(gf4, 2, xy.evaluation_grid(), 1) is None

    def test_univariate_degrees(self) -> None:
        """Testa o grau de cada linha, com -1 para a linha nula."""
        gf4 = get_field(2)
        linhas = np.array([[0, 0, 0, 0], [3, 3, 3, 3], [gf4.mul(t, t) for t in range(4)]])
        assert list(univariate_degrees(gf4, linhas)) == [-1, 0, 2]

    def test_evaluate_univariate_rows(self) -> None:
        """Testa valores de linhas de coeficientes em todo F."""
        gf4 = get_field(2)
        valores = evaluate_univariate_rows(gf4, [[1, 0, 1]])
        assert list(valores[0]) == [UniPoly(gf4, (1, 0, 1)).evaluate(t) for t in range(4)]
        with pytest.raises(ParameterError, match="Grau"):
            evaluate_univariate_rows(gf4, [[1, 0, 1, 0, 1]])


class TestHelpers:
    """Testes de funções auxiliares."""

    def test_monomials(self) -> None:
        """Testa a enumeração de monômios com limites."""
        assert monomials(2, 1) == [(0, 0), (0, 1), (1, 0), (1, 1)]
        assert monomials(2, 2, 1) == [(0, 0), (0, 1), (1, 0)]

    def test_schwartz_zippel(self) -> None:
        """Testa identidade e diferença de polinômios."""
        gf16 = get_field(4)
        rng = make_rng(11)
        p = MultiPoly(gf16, 2, {(1, 0): 1, (0, 1): 2})
        q = MultiPoly(gf16, 2, {(1, 0): 1, (0, 1): 3})
        assert poly_equal_schwartz_zippel(p, p, 20, rng) is True
        assert poly_equal_schwartz_zippel(p, q, 20, rng) is False

    def test_schwartz_zippel_vacuous(self) -> None:
        """Testa rejeição quando o grau não é menor que |F|."""
        gf4 = get_field(2)
        p = MultiPoly(gf4, 2, {(2, 2): 1})
        with pytest.raises(ParameterError, match="vácuo"):
            poly_equal_schwartz_zippel(p, p, 5, make_rng(0))
