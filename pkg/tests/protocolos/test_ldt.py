"""Testes para o teste quântico de baixo grau."""

import numpy as np
import pytest
from quantico.algebra.geom import line_catalog
from quantico.algebra.gf import get_field
from quantico.algebra.mpoly import (
    DataTable,
    LdeParams,
    MultiPoly,
    evaluate_univariate_rows,
    interpolate_lde,
    monomials,
)
from quantico.bench.estatistica import within_sigma
from quantico.core.aleatorio import make_rng
from quantico.core.exceptions import ParameterError, ResourceError
from quantico.protocolos.ldt import (
    LineOracle,
    agr_functions,
    agr_with_oracle,
    agreement_lower_bound_check,
    best_lde_assignment,
    best_selection_agreement,
    brute_force_best_h,
    induced_f,
    lemma_conclusions,
    qldt_accept_exact,
    qldt_accept_sampled,
    verifier_cost,
)
from quantico.protocolos.qsim import QuantumState, line_state_from_values, projection_prob, qlde_from_polynomial


@pytest.fixture
def gf4():
    return get_field(2)


@pytest.fixture
def p(gf4) -> MultiPoly:
    return MultiPoly(gf4, 2, {(1, 0): 1, (0, 1): 2, (0, 0): 3})


def _corrompido(p: MultiPoly) -> LineOracle:
    """Oráculo honesto com um ponto trocado numa única reta."""
    honesto = LineOracle.from_polynomial(p, r=3)
    valores = honesto.table[0].copy()
    valores[1] ^= 1
    return honesto.with_override(honesto.catalog.line(0), valores)


def _polinomio_aleatorio(field, rng: np.random.Generator) -> MultiPoly:
    """Polinômio em 2 variáveis de grau total <= 2 com coeficientes uniformes."""
    return MultiPoly(field, 2, {e: int(rng.integers(0, field.order)) for e in monomials(2, 2, 2)})


def _estado_perturbado(p: MultiPoly, rng: np.random.Generator) -> QuantumState:
    """Estado qlde de p com ruído complexo fora do gráfico e marginais uniformes em z."""
    q = p.field.order
    valores = p.evaluation_grid()
    linhas = np.arange(valores.size)
    eps = rng.uniform(0.0, 0.3, size=valores.size)
    ruido = rng.normal(size=(valores.size, q)) + 1j * rng.normal(size=(valores.size, q))
    ruido[linhas, valores] = 0.0
    ruido *= np.sqrt(eps / np.sum(np.abs(ruido) ** 2, axis=1))[:, None]
    ruido[linhas, valores] = np.sqrt(1.0 - eps) * np.exp(1j * rng.uniform(0.0, 2 * np.pi))
    return QuantumState.from_amplitudes(p.field, 2, ruido / np.sqrt(valores.size), normalize=True)


def _oraculo_alterado(p: MultiPoly, rng: np.random.Generator) -> LineOracle:
    """Oráculo honesto de grau 2 com algumas retas trocadas por polinômios aleatórios."""
    oraculo = LineOracle.from_polynomial(p, r=2)
    for linha in rng.choice(oraculo.num_lines, size=int(rng.integers(1, 5)), replace=False):
        valores = evaluate_univariate_rows(p.field, rng.integers(0, p.field.order, size=(1, 3)))[0]
        oraculo = oraculo.with_override(oraculo.catalog.line(int(linha)), valores)
    return oraculo


def _par_aleatorio(gf4, semente: int):
    """Par (estado, oráculo) semeado; o tipo do par segue semente % 5."""
    rng = make_rng(semente)
    p = _polinomio_aleatorio(gf4, rng)
    tipo = semente % 5
    if tipo == 0:
        return qlde_from_polynomial(p), _oraculo_alterado(p, rng)
    if tipo == 1:
        return QuantumState.random(gf4, 2, rng), LineOracle.random(gf4, 2, 1, rng)
    if tipo == 2:
        return _estado_perturbado(p, rng), LineOracle.from_polynomial(p, r=2)
    if tipo == 3:
        honesto = LineOracle.from_polynomial(p, r=2)
        peso = float(rng.uniform(0.2, 0.8))
        deslocado = honesto.shifted(int(rng.integers(1, 4)))
        return qlde_from_polynomial(p), LineOracle.mixture([honesto, deslocado], [peso, 1 - peso])
    return QuantumState.random(gf4, 2, rng), LineOracle.from_polynomial(p, r=2)


class TestLineOracle:
    """Testes de construção do oráculo."""

    def test_degree_violation(self, gf4) -> None:
        """Testa rejeição de polinômio de reta com grau > r."""
        tabela = MultiPoly(gf4, 2, {(2, 0): 1}).evaluation_grid()
        with pytest.raises(ParameterError, match="grau"):
            LineOracle.from_function(gf4, 2, tabela, r=1)

    def test_weights_above_one(self, gf4, p: MultiPoly) -> None:
        """Testa pesos que somam mais que 1 numa reta."""
        honesto = LineOracle.from_polynomial(p)
        ramo = honesto.branches[0]
        with pytest.raises(ParameterError, match="somam mais que 1"):
            LineOracle(gf4, 2, 1, [ramo, ramo])

    def test_table_of_random_oracle(self, p: MultiPoly) -> None:
        """Testa que oráculo misto não expõe tabela única."""
        honesto = LineOracle.from_polynomial(p)
        misto = LineOracle.mixture([honesto, honesto.shifted(1)], [0.5, 0.5])
        assert not misto.is_deterministic
        with pytest.raises(ParameterError, match="tabela única"):
            misto.table

    def test_random_oracle_degree(self, gf4) -> None:
        """Testa que o oráculo aleatório respeita o grau."""
        oraculo = LineOracle.random(gf4, 2, 1, make_rng(4))
        assert oraculo.num_lines == 20
        assert oraculo.r == 1


class TestAcceptance:
    """Testes da probabilidade de aceitação."""

    def test_honest_pair_accepts(self, p: MultiPoly) -> None:
        """Testa γ = 1 para estado e oráculo honestos."""
        estado = qlde_from_polynomial(p)
        assert qldt_accept_exact(estado, LineOracle.from_polynomial(p)).gamma == pytest.approx(1.0)

    def test_one_corrupted_point(self, p: MultiPoly) -> None:
        """Testa γ = 1 - (1/20)(1 - (3/4)²) com um ponto corrompido."""
        estado = qlde_from_polynomial(p)
        assert qldt_accept_exact(estado, _corrompido(p)).gamma == pytest.approx(0.978125)

    def test_concentrated_state(self, gf4) -> None:
        """Testa γ = 1/|F| para |z₀⟩|y₀⟩ e oráculo constante y₀."""
        estado = QuantumState.basis(gf4, 2, (1, 2), 3)
        oraculo = LineOracle.from_function(gf4, 2, np.full(16, 3), r=0)
        assert qldt_accept_exact(estado, oraculo).gamma == pytest.approx(0.25)

    def test_mixture_and_missing_mass(self, p: MultiPoly) -> None:
        """Testa γ linear nos ramos e rejeição na massa que falta."""
        estado = qlde_from_polynomial(p)
        honesto = LineOracle.from_polynomial(p)
        misto = LineOracle.mixture([honesto, honesto.shifted(1)], [0.5, 0.5])
        assert qldt_accept_exact(estado, misto).gamma == pytest.approx(0.5)
        metade = LineOracle.mixture([honesto], [0.5])
        assert qldt_accept_exact(estado, metade).gamma == pytest.approx(0.5)

    def test_incompatible_oracle(self, p: MultiPoly) -> None:
        """Testa estado e oráculo de dimensões diferentes."""
        estado = QuantumState.uniform(p.field, 1)
        with pytest.raises(ParameterError, match="incompatíveis"):
            qldt_accept_exact(estado, LineOracle.from_polynomial(p))

    def test_sampled_matches_exact(self, p: MultiPoly) -> None:
        """Testa a estimativa de Monte Carlo dentro de 4σ."""
        estado = qlde_from_polynomial(p)
        oraculo = _corrompido(p)
        exato = qldt_accept_exact(estado, oraculo).gamma
        amostra = qldt_accept_sampled(estado, oraculo, trials=2000, seed=1, workers=2)
        desvio = max(amostra.stderr, np.sqrt(exato * (1 - exato) / 2000))
        assert abs(amostra.gamma - exato) <= 4 * desvio

    def test_sampled_random_state(self, gf4) -> None:
        """Testa estado aleatório complexo contra a forma fechada."""
        rng = make_rng(6)
        estado = QuantumState.random(gf4, 2, rng)
        oraculo = LineOracle.random(gf4, 2, 1, rng)
        exato = qldt_accept_exact(estado, oraculo).gamma
        amostra = qldt_accept_sampled(estado, oraculo, trials=2000, seed=3)
        assert abs(amostra.gamma - exato) <= 4 * np.sqrt(max(exato * (1 - exato), 1e-6) / 2000)

    def test_sampled_is_reproducible(self, p: MultiPoly) -> None:
        """Testa que (seed, workers) fixa a estimativa."""
        estado = qlde_from_polynomial(p)
        oraculo = _corrompido(p)
        a = qldt_accept_sampled(estado, oraculo, trials=300, seed=8, workers=3)
        b = qldt_accept_sampled(estado, oraculo, trials=300, seed=8, workers=3)
        assert a.accepted == b.accepted

    def test_invalid_trials(self, p: MultiPoly) -> None:
        """Testa número de tentativas não positivo."""
        with pytest.raises(ParameterError, match="positivo"):
            qldt_accept_sampled(qlde_from_polynomial(p), LineOracle.from_polynomial(p), trials=0, seed=0)

    def test_projection_with_one_disagreement(self, gf4) -> None:
        """Testa |⟨e₁|Φ'⟩|² = (3/4)² quando g difere em um dos 4 pontos."""
        phi = line_state_from_values(gf4, [0, 1, 2, 3])
        e1 = line_state_from_values(gf4, [0, 1, 2, 0])
        assert projection_prob(phi, e1) == pytest.approx(0.5625)


class TestSampledAgainstExact:
    """Testes da estimativa de Monte Carlo contra a forma fechada."""

    @pytest.mark.parametrize("semente", range(50))
    def test_sampled_within_four_sigma(self, gf4, semente: int) -> None:
        """Testa 10⁴ execuções do teste dentro de 4σ do γ exato."""
        estado, oraculo = _par_aleatorio(gf4, semente)
        exato = qldt_accept_exact(estado, oraculo).gamma
        amostra = qldt_accept_sampled(estado, oraculo, trials=10_000, seed=semente)
        assert within_sigma(amostra.gamma, exato, 10_000)


class TestAgreement:
    """Testes das medidas de concordância."""

    def test_agr_functions(self, gf4, p: MultiPoly) -> None:
        """Testa Agr entre polinômio e tabela alterada em um ponto."""
        tabela = p.evaluation_grid().copy()
        tabela[5] ^= 2
        assert agr_functions(p, tabela) == pytest.approx(15 / 16)
        assert agr_functions(lambda z: 0, lambda z: 0, gf4, 2) == 1.0

    def test_agr_with_corrupted_oracle(self, p: MultiPoly) -> None:
        """Testa Agr[f, G] = 1 - (1/20)(1/4)."""
        assert agr_with_oracle(p, _corrompido(p)) == pytest.approx(0.9875)

    @pytest.mark.parametrize("semente", range(100))
    def test_bound_check(self, gf4, semente: int) -> None:
        """Testa Agr[f, G] >= (γ - 1/|F|)² com γ >= 1/|F| em pares perturbados."""
        rng = make_rng(1000 + semente)
        p = _polinomio_aleatorio(gf4, rng)
        verificacao = agreement_lower_bound_check(_estado_perturbado(p, rng), _oraculo_alterado(p, rng))
        assert verificacao.gamma >= 0.25
        assert verificacao.holds is True
        assert verificacao.agr_fG >= verificacao.bound_rhs

    def test_vacuous_bound(self, gf4, p: MultiPoly) -> None:
        """Testa holds = None quando γ < 1/|F|."""
        estado = qlde_from_polynomial(p)
        verificacao = agreement_lower_bound_check(estado, LineOracle.from_polynomial(p).shifted(1))
        assert verificacao.gamma == pytest.approx(0.0)
        assert verificacao.holds is None

    def test_induced_function_of_qlde(self, p: MultiPoly) -> None:
        """Testa que o estado qlde induz a própria função."""
        f = induced_f(qlde_from_polynomial(p))
        assert f.is_deterministic
        assert np.array_equal(f.argmax(), p.evaluation_grid())

    def test_induced_function_uniform_on_zero_mass(self, gf4) -> None:
        """Testa a distribuição uniforme onde φ_z = 0."""
        f = induced_f(QuantumState.basis(gf4, 2, (0, 1), 2))
        assert f.probability((0, 1), 2) == pytest.approx(1.0)
        assert f.probability((3, 3), 0) == pytest.approx(0.25)

    def test_best_selection_at_least_agr(self, gf4) -> None:
        """Testa que a melhor seleção domina Agr[f, G]."""
        rng = make_rng(2)
        estado = QuantumState.random(gf4, 2, rng)
        oraculo = LineOracle.random(gf4, 2, 1, rng)
        _, melhor = best_selection_agreement(estado, oraculo)
        assert melhor >= agr_with_oracle(induced_f(estado), oraculo) - 1e-12


class TestDecoding:
    """Testes de busca exaustiva de polinômios."""

    def test_brute_force_recovers_polynomial(self, p: MultiPoly) -> None:
        """Testa que a busca encontra o polinômio honesto."""
        h, agr = brute_force_best_h(LineOracle.from_polynomial(p), 1)
        assert h == p
        assert agr == pytest.approx(1.0)

    def test_brute_force_limit(self, p: MultiPoly) -> None:
        """Testa o limite de candidatos."""
        with pytest.raises(ResourceError, match="excedem o limite"):
            brute_force_best_h(LineOracle.from_polynomial(p), 1, max_candidates=10)

    def test_unknown_search_space(self, p: MultiPoly) -> None:
        """Testa espaço de busca inválido."""
        with pytest.raises(ParameterError, match="desconhecido"):
            brute_force_best_h(LineOracle.from_polynomial(p), 1, search_space="qualquer")

    def test_best_lde_assignment(self, gf4) -> None:
        """Testa a recuperação da tabela de bits do oráculo honesto."""
        params = LdeParams(gf4, d=2, h_size=2)
        tabela = DataTable(params, (1, 0, 0, 1))
        lde = interpolate_lde(params, tabela)
        encontrada, poly, agr = best_lde_assignment(LineOracle.from_polynomial(lde), params, 2)
        assert encontrada == tabela
        assert poly == lde
        assert agr == pytest.approx(1.0)


class TestReports:
    """Testes dos relatórios auxiliares."""

    def test_lemma_conclusions(self) -> None:
        """Testa as frações de γ⁴."""
        relatorio = lemma_conclusions(1.0, 0.5)
        assert relatorio["gamma4_over_50"] == pytest.approx(0.02)
        assert relatorio["agr_at_least_gamma4_over_50"] is True

    def test_verifier_cost(self, gf4) -> None:
        """Testa registradores, qubits e bits lidos."""
        assert verifier_cost(gf4, 3, 2) == {"registers": 4, "qubits": 8, "oracle_bits": 6}

    def test_catalog_is_shared(self, gf4, p: MultiPoly) -> None:
        """Testa que o oráculo usa o catálogo em cache."""
        assert LineOracle.from_polynomial(p).catalog is line_catalog(gf4, 2)
