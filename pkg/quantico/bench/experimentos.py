"""Experimentos semeados: recuperação, teste de baixo grau, QPCP, conselho e contagens de retas.

Cada experimento recebe um ExperimentConfig e devolve um TrialReport com
linhas (uma por estratégia, caso ou atribuição) e critérios nomeados. Toda
aleatoriedade vem de make_rng(config.seed), na ordem em que o experimento
a consome, e as tentativas de Monte Carlo usam sementes sorteadas desse
mesmo gerador.
"""

import csv
import io
import json
import logging
from dataclasses import dataclass, field
from itertools import product
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Tuple, Union

import numpy as np

from ..algebra.geom import line_catalog
from ..algebra.gf import get_field
from ..algebra.mpoly import DataTable, LdeParams, evaluate_univariate_rows, interpolate_lde
from ..core.aleatorio import make_rng
from ..core.exceptions import ConfigurationError, ParameterError, ResourceError
from ..protocolos.ldt import (
    LineOracle,
    agreement_lower_bound_check,
    qldt_accept_sampled,
    verifier_cost,
)
from ..protocolos.qpcp import (
    accept_prob_exact,
    build_correct_proof,
    decode_and_score,
    embed_variables,
    line_ratio_report,
    planted_satisfiable,
    verify_once,
)
from ..protocolos.qsim import QuantumState, build_qlde_state, qlde_from_polynomial
from ..protocolos.retrieve import (
    MerlinStrategy,
    Verdict,
    adversary_suite,
    exact_r1_distribution,
    exact_r2_distribution,
    loose_soundness_bound,
    run_r1,
    run_r2,
    soundness_bound,
)
from ..validadores.instancia import instancia
from .config import ExperimentConfig
from .demo import demo_accept_probability
from .estatistica import EXACT_TOL, Estimate, sample_outcomes, within_sigma

logger = logging.getLogger(__name__)

MAX_ENUMERATED_ASSIGNMENTS: int = 64
MAX_ADVICE_BITS: int = 4


@dataclass
class TrialReport:
    """Relatório de um experimento.

    Attributes:
        experiment: Nome do experimento.
        config: Configuração usada, serializada.
        rows: Uma linha por estratégia, caso ou atribuição.
        criteria: Critérios afirmados, nome -> passou.
        summary: Valores que não pertencem a uma linha (cotas, contagens).
    """

    experiment: str
    config: Dict[str, Any]
    rows: List[Dict[str, Any]] = field(default_factory=list)
    criteria: Dict[str, bool] = field(default_factory=dict)
    summary: Dict[str, Any] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(self.criteria.values())

    def check(self, name: str, ok: bool) -> None:
        self.criteria[name] = bool(ok)
        if not ok:
            logger.warning("critério %s falhou", name)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "experiment": self.experiment,
            "config": self.config,
            "summary": self.summary,
            "rows": self.rows,
            "criteria": self.criteria,
            "passed": self.passed,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    def to_csv(self) -> str:
        colunas: List[str] = []
        for linha in self.rows:
            for chave in linha:
                if chave not in colunas:
                    colunas.append(chave)
        buffer = io.StringIO()
        writer = csv.DictWriter(buffer, fieldnames=colunas, lineterminator="\n")
        writer.writeheader()
        for linha in self.rows:
            writer.writerow({chave: _celula(valor) for chave, valor in linha.items()})
        return buffer.getvalue()


def _celula(valor: Any) -> Any:
    if valor is None:
        return ""
    if isinstance(valor, (list, tuple, dict)):
        return json.dumps(valor, sort_keys=True)
    return valor


def _seeds(rng: np.random.Generator, n: int) -> List[int]:
    return [int(s) for s in rng.integers(0, 2 ** 32, size=n)]


def _lde_setup(config: ExperimentConfig, rng: np.random.Generator) -> Tuple[LdeParams, DataTable]:
    params = LdeParams.create(config.a, config.d, config.h_size, config.modulus_bits)
    if config.data is not None:
        return params, DataTable.padded(params, list(config.data))
    valores = rng.integers(0, params.field.order, size=params.domain_size)
    return params, DataTable.from_sequence(params, valores)


def _point(valor: Optional[Tuple[int, ...]], q: int, d: int, rng: np.random.Generator) -> Tuple[int, ...]:
    if valor is not None:
        return tuple(valor)
    return tuple(int(x) for x in rng.integers(0, q, size=d))


def _rates(distribuicao: Dict[Verdict, float], correto: Verdict) -> Dict[str, float]:
    err = float(distribuicao.get(Verdict.err(), 0.0))
    certo = float(distribuicao.get(correto, 0.0))
    return {"correct": certo, "wrong": max(0.0, 1.0 - certo - err), "err": err}


def _frequencies(contagem: Dict[Verdict, int], trials: int) -> Dict[Verdict, float]:
    return {v: c / trials for v, c in contagem.items()}


def _retrieval(config: ExperimentConfig, two_points: bool) -> TrialReport:
    rng = make_rng(config.seed)
    params, dados = _lde_setup(config, rng)
    f = params.field
    r = config.degree
    lde = interpolate_lde(params, dados)
    w = _point(config.w, f.order, params.d, rng)
    if two_points:
        w2 = _point(config.w2, f.order, params.d, rng)
        while config.w2 is None and w2 == w:
            w2 = _point(None, f.order, params.d, rng)
        if w2 == w:
            raise ConfigurationError("Campos w e w2 devem ser pontos distintos")
        correto = Verdict.pair(lde.evaluate(w), lde.evaluate(w2))
    else:
        correto = Verdict.value(lde.evaluate(w))
    estrategias = adversary_suite(lde, r, rng, config.adversaries or None)
    sementes = _seeds(rng, len(estrategias))
    limite = soundness_bound(f.order, params.d, r)
    relatorio = TrialReport(
        config.experiment,
        config.to_dict(),
        summary={
            "q": f.order,
            "d": params.d,
            "r": r,
            "w": list(w),
            "correct": str(correto),
            "soundness_bound": limite,
            "loose_bound": loose_soundness_bound(f.order, params.d, r),
        },
    )
    if two_points:
        relatorio.summary["w2"] = list(w2)
    estado = build_qlde_state(params, dados) if config.wants_sampled else None

    for merlin, semente in zip(estrategias, sementes):
        linha: Dict[str, Any] = {"strategy": merlin.name}
        exato: Optional[Dict[str, float]] = None
        if config.wants_exact:
            if two_points:
                distribuicao = exact_r2_distribution(dados, params, w, w2, merlin, r)
            else:
                distribuicao = exact_r1_distribution(dados, params, w, merlin, r)
            exato = _rates(distribuicao, correto)
            linha.update({f"exact_{k}": v for k, v in exato.items()})
            if merlin.name == "honest":
                relatorio.check(f"{merlin.name}:completeness", exato["correct"] >= 1.0 - EXACT_TOL)
            elif not two_points:
                relatorio.check(f"{merlin.name}:soundness", exato["wrong"] <= limite + EXACT_TOL)
        if estado is not None:

            def tentativa(g: np.random.Generator, m: MerlinStrategy = merlin) -> Verdict:
                if two_points:
                    return run_r2(estado, w, w2, m, r, g)
                return run_r1(estado, w, m, r, g)

            contagem = sample_outcomes(tentativa, config.trials, semente, config.workers)
            amostral = _rates(_frequencies(contagem, config.trials), correto)
            linha.update({f"sampled_{k}": v for k, v in amostral.items()})
            if exato is not None:
                relatorio.check(
                    f"{merlin.name}:sampled_vs_exact",
                    within_sigma(amostral["wrong"], exato["wrong"], config.trials)
                    and within_sigma(amostral["err"], exato["err"], config.trials),
                )
            elif merlin.name == "honest":
                relatorio.check(f"{merlin.name}:completeness", amostral["correct"] == 1.0)
        logger.info("%s: estratégia %s concluída", config.experiment, merlin.name)
        relatorio.rows.append(linha)
    return relatorio


def _qldt(config: ExperimentConfig) -> TrialReport:
    rng = make_rng(config.seed)
    params, dados = _lde_setup(config, rng)
    f = params.field
    r = config.degree
    lde = interpolate_lde(params, dados)
    correto = qlde_from_polynomial(lde)
    honesto = LineOracle.from_polynomial(lde, r)
    catalogo = honesto.catalog
    grau_reta = min(r, f.order - 1)
    c = int(rng.integers(1, f.order))
    alvo = catalogo.line(int(rng.integers(catalogo.num_lines)))
    sobrescrita = evaluate_univariate_rows(f, rng.integers(0, f.order, size=(1, grau_reta + 1)))[0]
    casos: List[Tuple[str, QuantumState, LineOracle]] = [
        ("honest", correto, honesto),
        ("shifted", correto, honesto.shifted(c)),
        ("corrupted-line", correto, honesto.with_override(alvo, sobrescrita)),
        ("random-oracle", correto, LineOracle.random(f, params.d, grau_reta, rng)),
        ("random-state", QuantumState.random(f, params.d, rng), honesto),
    ]
    sementes = _seeds(rng, len(casos))
    relatorio = TrialReport(
        config.experiment,
        config.to_dict(),
        summary={
            "q": f.order,
            "d": params.d,
            "r": r,
            "num_lines": catalogo.num_lines,
            "num_directions": catalogo.num_directions,
            "cost": verifier_cost(f, params.d, r),
        },
    )
    for (nome, estado, oraculo), semente in zip(casos, sementes):
        linha: Dict[str, Any] = {"case": nome}
        exato: Optional[float] = None
        if config.wants_exact:
            verificacao = agreement_lower_bound_check(estado, oraculo)
            exato = verificacao.gamma
            linha.update(verificacao.to_dict())
            if verificacao.holds is not None:
                relatorio.check(f"{nome}:agreement_bound", verificacao.holds)
            if nome == "honest":
                relatorio.check(f"{nome}:completeness", exato >= 1.0 - EXACT_TOL)
        if config.wants_sampled:
            amostra = qldt_accept_sampled(estado, oraculo, config.trials, semente, config.workers)
            linha.update(gamma_sampled=amostra.gamma, accepted=amostra.accepted, stderr=amostra.stderr)
            if exato is not None:
                relatorio.check(
                    f"{nome}:sampled_vs_exact", within_sigma(amostra.gamma, exato, config.trials)
                )
        logger.info("qldt: caso %s concluído", nome)
        relatorio.rows.append(linha)
    return relatorio


def _qpcp(config: ExperimentConfig) -> TrialReport:
    rng = make_rng(config.seed)
    params = LdeParams.create(config.a, config.d, config.h_size, config.modulus_bits)
    plantada: Optional[Tuple[int, ...]] = None
    if config.instance is not None:
        instancia_gap = instancia.carregar(config.instance)
    else:
        instancia_gap, plantada = planted_satisfiable(
            m=min(4, params.domain_size), s=1, q=2, k=3, rng=rng
        )
    if config.assignment is not None:
        atribuicoes = [tuple(config.assignment)]
    elif plantada is not None:
        atribuicoes = [plantada]
    else:
        total = (1 << instancia_gap.s) ** instancia_gap.m
        if total > MAX_ENUMERATED_ASSIGNMENTS:
            raise ConfigurationError(
                f"{total} atribuições excedem {MAX_ENUMERATED_ASSIGNMENTS}; informe o campo assignment"
            )
        atribuicoes = list(product(range(1 << instancia_gap.s), repeat=instancia_gap.m))
    r = config.degree
    embedding = embed_variables(instancia_gap, params)
    sementes = _seeds(rng, len(atribuicoes))
    relatorio = TrialReport(
        config.experiment,
        config.to_dict(),
        summary={
            "instance": instancia_gap.to_dict(),
            "k": instancia_gap.k,
            "r": r,
            "max_satisfied_fraction": instancia_gap.max_satisfied_fraction(),
        },
    )
    melhor_insatisfeita: Optional[float] = None

    for i, (atribuicao, semente) in enumerate(zip(atribuicoes, sementes)):
        rotulo = f"assignment[{i}]"
        fracao = instancia_gap.satisfied_fraction(atribuicao)
        estado, blocos = build_correct_proof(
            instancia_gap, atribuicao, params, r, require_satisfying=False
        )
        linha: Dict[str, Any] = {
            "assignment": list(atribuicao),
            "satisfied_fraction": fracao,
            "blocks": len(blocos),
        }
        exato: Optional[float] = None
        if config.wants_exact:
            exato = accept_prob_exact(instancia_gap, estado, blocos, params, r)
            linha["accept_exact"] = exato
            if fracao == 1.0:
                relatorio.check(f"{rotulo}:completeness", exato >= 1.0 - EXACT_TOL)
            else:
                relatorio.check(f"{rotulo}:soundness", exato < 1.0 - EXACT_TOL)
                melhor_insatisfeita = max(exato, melhor_insatisfeita or 0.0)
        if config.wants_sampled:

            def tentativa(g: np.random.Generator) -> Tuple[bool, int]:
                veredito = verify_once(instancia_gap, estado, blocos, params, r, g, embedding)
                return veredito.accept, veredito.blocks_read

            contagem = sample_outcomes(tentativa, config.trials, semente, config.workers)
            estimativa = Estimate(sum(n for (aceita, _), n in contagem.items() if aceita), config.trials)
            leituras = sorted({lidos for _, lidos in contagem})
            linha.update(accept_sampled=estimativa.p, stderr=estimativa.stderr, blocks_read=leituras)
            relatorio.check(f"{rotulo}:one_query", leituras == [1])
            if exato is not None:
                relatorio.check(f"{rotulo}:sampled_vs_exact", estimativa.agrees_with(exato))
        try:
            decodificado = decode_and_score(
                blocos,
                instancia_gap,
                params,
                r,
                state=estado if config.wants_exact else None,
                assume_hypothesis=config.assume_hypothesis,
            )
        except ResourceError as e:
            logger.warning("decodificação omitida para %s: %s", rotulo, e)
            linha["decoded"] = "skipped"
        else:
            linha.update(
                decoded_assignment=list(decodificado.assignment),
                decoded_fraction=decodificado.satisfied_fraction,
                agr=decodificado.agr,
                gamma4_over_100=decodificado.bound,
            )
            if fracao > 0:
                relatorio.check(f"{rotulo}:decode", decodificado.satisfied_fraction == fracao)
            if decodificado.holds is not None:
                relatorio.check(f"{rotulo}:decode_bound", decodificado.holds)
        logger.info("qpcp: %s concluída (fração %.4f)", rotulo, fracao)
        relatorio.rows.append(linha)
    relatorio.summary["best_unsatisfying_accept"] = melhor_insatisfeita
    return relatorio


def _advice_table(config: ExperimentConfig, params: LdeParams, rng: np.random.Generator) -> List[int]:
    if config.data is not None:
        tabela = list(config.data)
        if len(tabela) & (len(tabela) - 1) or len(tabela) < 2:
            raise ConfigurationError("Campo data deve ter 2^ν bits, com ν >= 1")
        return tabela
    nu = min(MAX_ADVICE_BITS, params.domain_size.bit_length() - 1)
    if nu < 1:
        raise ConfigurationError("|H|^d deve comportar ao menos duas entradas")
    return [int(b) for b in rng.integers(0, 2, size=1 << nu)]


def _demo_advice(config: ExperimentConfig) -> TrialReport:
    rng = make_rng(config.seed)
    params = LdeParams.create(config.a, config.d, config.h_size, config.modulus_bits)
    tabela = _advice_table(config, params, rng)
    nu = len(tabela).bit_length() - 1
    r = config.degree
    dados = DataTable.padded(params, tabela)
    lde = interpolate_lde(params, dados)
    estrategias = adversary_suite(lde, r, rng, config.adversaries or None)
    limite = soundness_bound(params.field.order, params.d, r)
    estado = build_qlde_state(params, dados) if config.wants_sampled else None
    relatorio = TrialReport(
        config.experiment,
        config.to_dict(),
        summary={"truth_table": tabela, "nu": nu, "r": r, "soundness_bound": limite},
    )
    for x in range(len(tabela)):
        consulta = format(x, f"0{nu}b")
        w = params.pi_inv(x)
        for merlin, semente in zip(estrategias, _seeds(rng, len(estrategias))):
            rotulo = f"{consulta}:{merlin.name}"
            linha: Dict[str, Any] = {"query": consulta, "bit": tabela[x], "strategy": merlin.name}
            exato: Optional[float] = None
            if config.wants_exact:
                exato = demo_accept_probability(tabela, consulta, merlin, params, r=r)
                linha["accept_exact"] = exato
                if merlin.name == "honest":
                    relatorio.check(f"{rotulo}:completeness", abs(exato - tabela[x]) <= EXACT_TOL)
                elif tabela[x] == 0:
                    relatorio.check(f"{rotulo}:soundness", exato <= limite + EXACT_TOL)
            if estado is not None:
                contagem = sample_outcomes(
                    lambda g, m=merlin, w=w: run_r1(estado, w, m, r, g) == Verdict.value(1),
                    config.trials,
                    semente,
                    config.workers,
                )
                estimativa = Estimate(contagem.get(True, 0), config.trials)
                linha["accept_sampled"] = estimativa.p
                if exato is not None:
                    relatorio.check(f"{rotulo}:sampled_vs_exact", estimativa.agrees_with(exato))
            relatorio.rows.append(linha)
    return relatorio


def _line_counts(config: ExperimentConfig) -> TrialReport:
    f = get_field(config.a, config.modulus_bits)
    d = config.d
    q = f.order
    catalogo = line_catalog(f, d)
    n = (q ** d - 1) // (q - 1)
    incidencia = catalogo.incidence()
    relatorio = TrialReport(
        config.experiment,
        config.to_dict(),
        summary={"q": q, "d": d, "num_directions": n, "num_lines": catalogo.num_lines},
    )
    relatorio.check("lines_per_point", bool(np.all(incidencia == n)))
    relatorio.check("num_lines", catalogo.num_lines == n * q ** (d - 1))
    tau = [tuple(config.w) if config.w is not None else (0,) * d]
    if config.w2 is not None:
        tau.append(tuple(config.w2))
    relatorio_retas = line_ratio_report(f, d, tau)
    linha = {"tau": [list(p) for p in tau]}
    linha.update(relatorio_retas.to_dict())
    relatorio.rows.append(linha)
    relatorio.check("line_ratios", relatorio_retas.holds)
    return relatorio


EXPERIMENT_RUNNERS: Dict[str, Callable[[ExperimentConfig], TrialReport]] = {
    "retrieve": lambda c: _retrieval(c, two_points=False),
    "retrieve2": lambda c: _retrieval(c, two_points=True),
    "qldt": _qldt,
    "qpcp": _qpcp,
    "demo-advice": _demo_advice,
    "line-counts": _line_counts,
}


def run_experiment(config: ExperimentConfig) -> TrialReport:
    """Executa o experimento nomeado na configuração.

    A mesma configuração (semente incluída) produz o mesmo relatório.

    Raises:
        ConfigurationError: Se o experimento for desconhecido ou os
            parâmetros forem incompatíveis com ele.
        ResourceError: Se alguma enumeração exata exceder seus limites.
    """
    executar = EXPERIMENT_RUNNERS.get(config.experiment)
    if executar is None:
        raise ConfigurationError(f"Experimento desconhecido: {config.experiment!r}")
    logger.info("experimento %s com semente %d", config.experiment, config.seed)
    try:
        relatorio = executar(config)
    except ConfigurationError:
        raise
    except ParameterError as e:
        raise ConfigurationError(f"Configuração inválida para {config.experiment}: {e}") from e
    logger.info(
        "experimento %s: %d linhas, %s",
        config.experiment,
        len(relatorio.rows),
        "aprovado" if relatorio.passed else "reprovado",
    )
    return relatorio


def write_report(
    report: TrialReport,
    output: Union[str, Path, None] = None,
    csv_path: Union[str, Path, None] = None,
) -> str:
    """Grava o JSON (e o CSV, se pedido) e devolve o texto JSON."""
    texto = report.to_json()
    if output is not None:
        Path(output).write_text(texto + "\n", encoding="utf-8")
    if csv_path is not None:
        Path(csv_path).write_text(report.to_csv(), encoding="utf-8")
    return texto
