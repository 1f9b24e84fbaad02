"""Linha de comando do Quantico.

Saída JSON no stdout (ou em --output), CSV com --csv. O código de saída é
0 quando todos os critérios afirmados pelo comando passam, 1 quando algum
falha e 2 para entradas inválidas.
"""

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

from ..algebra.mpoly import DataTable, LdeParams, interpolate_lde
from ..core.aleatorio import make_rng
from ..core.exceptions import InvalidProof, QuanticoException
from ..core.http import http_client
from ..protocolos.qpcp import (
    accept_prob_exact,
    build_correct_proof,
    decode_and_score,
    embed_variables,
    verify_once,
)
from ..protocolos.qsim import qlde_from_polynomial
from ..protocolos.retrieve import ADVERSARY_NAMES
from ..validadores.config import config as validador_config
from ..validadores.corpo import corpo
from ..validadores.instancia import instancia
from ..validadores.prova import prova
from .demo import advice_params, demo_accept_probability, demo_advice
from .estatistica import sample_outcomes
from .experimentos import TrialReport, run_experiment, write_report

logger = logging.getLogger(__name__)

Resultado = Tuple[Dict[str, Any], bool]


def _ints(texto: str) -> List[int]:
    """"1,2,3" -> [1, 2, 3]."""
    return [int(parte, 0) for parte in texto.split(",") if parte.strip()]


def _lde_arguments(parser: argparse.ArgumentParser, data: bool = True) -> None:
    parser.add_argument("--a", type=int, default=4, help="grau da extensão, F = GF(2^a)")
    parser.add_argument("--modulus", dest="modulus_bits", type=lambda s: int(s, 0), default=None,
                        help="módulo irredutível em bits (ex.: 0x13)")
    parser.add_argument("--d", type=int, default=2, help="dimensão do espaço F^d")
    parser.add_argument("--h-size", type=int, default=4, help="|H|")
    parser.add_argument("--r", type=int, default=None, help="limite de grau; padrão d·(|H|-1)")
    if data:
        parser.add_argument("--data", type=_ints, default=None,
                            help="tabela de dados separada por vírgulas; sorteada quando ausente")


def _run_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--seed", type=int, default=0, help="semente raiz")
    parser.add_argument("--trials", type=int, default=1000, help="tentativas de Monte Carlo")
    parser.add_argument("--workers", type=int, default=1, help="workers para as tentativas")


def _output_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--output", default=None, help="arquivo do relatório JSON")
    parser.add_argument("--csv", default=None, help="arquivo do relatório CSV")


def _config_doc(args: argparse.Namespace, experiment: str, mode: str, **extra: Any) -> Dict[str, Any]:
    documento: Dict[str, Any] = {"experiment": experiment, "mode": mode}
    for nome in ("a", "modulus_bits", "d", "h_size", "r", "seed", "trials", "workers", "data", "w", "w2"):
        valor = getattr(args, nome, None)
        if valor is not None:
            documento[nome] = valor
    documento.update(extra)
    return documento


def _experiment(documento: Dict[str, Any]) -> TrialReport:
    return run_experiment(validador_config.parse(documento))


def cmd_encode(args: argparse.Namespace) -> Resultado:
    params = corpo.parse_lde({"field": {"a": args.a, "modulus_bits": args.modulus_bits},
                              "d": args.d, "h_size": args.h_size})
    if args.data is not None:
        dados = DataTable.padded(params, args.data)
    else:
        valores = make_rng(args.seed).integers(0, params.field.order, size=params.domain_size)
        dados = DataTable.from_sequence(params, valores)
    lde = interpolate_lde(params, dados)
    return {
        "table": corpo.serialize_table(dados),
        "lde": {"nvars": lde.nvars, "total_degree": lde.total_degree(), "terms": lde.to_list()},
        "state": prova.serialize_state(qlde_from_polynomial(lde)),
    }, True


def _retrieve(args: argparse.Namespace, mode: str) -> TrialReport:
    experimento = "retrieve2" if args.w2 is not None else "retrieve"
    extra = {"adversaries": args.strategy} if args.strategy else {}
    return _experiment(_config_doc(args, experimento, mode, **extra))


def cmd_retrieve(args: argparse.Namespace) -> TrialReport:
    return _retrieve(args, "sampled")


def cmd_retrieve_exact(args: argparse.Namespace) -> TrialReport:
    return _retrieve(args, "exact")


def cmd_qldt(args: argparse.Namespace) -> TrialReport:
    return _experiment(_config_doc(args, "qldt", "sampled"))


def cmd_qldt_exact(args: argparse.Namespace) -> TrialReport:
    return _experiment(_config_doc(args, "qldt", "exact"))


def cmd_line_counts(args: argparse.Namespace) -> TrialReport:
    return _experiment(_config_doc(args, "line-counts", "exact", h_size=1))


def cmd_experiment(args: argparse.Namespace) -> TrialReport:
    configuracao = validador_config.carregar(args.config)
    args.output = args.output or configuracao.output
    args.csv = args.csv or configuracao.csv
    return run_experiment(configuracao)


def cmd_demo_advice(args: argparse.Namespace) -> Resultado:
    tabela = [ord(c) - ord("0") for c in args.table.strip()]
    params = None
    if args.d is not None:
        params = LdeParams.create(4, args.d, 4)
    rng = make_rng(args.seed)
    veredito, aceita = demo_advice(tabela, args.query, args.strategy, params, rng)
    documento: Dict[str, Any] = {
        "query": args.query,
        "verdict": str(veredito),
        "accept": aceita,
    }
    if args.exact:
        documento["accept_exact"] = demo_accept_probability(
            tabela, args.query, args.strategy, params or advice_params(len(args.query)), args.seed
        )
    return documento, True


def cmd_qpcp_prove(args: argparse.Namespace) -> Resultado:
    gap = instancia.carregar(args.instance)
    params = corpo.parse_lde({"field": {"a": args.a, "modulus_bits": args.modulus_bits},
                              "d": args.d, "h_size": args.h_size})
    r = params.default_degree if args.r is None else args.r
    estado, blocos = build_correct_proof(
        gap, args.assignment, params, r, require_satisfying=not args.allow_unsatisfying
    )
    return {
        "instance": instancia.serialize(gap),
        "lde": params.to_dict(),
        "r": r,
        "state": prova.serialize_state(estado),
        "proof": prova.serialize(blocos),
    }, True


def _load_proof(fonte: str) -> Tuple[Any, ...]:
    documento = http_client.carregar_json(fonte)
    if not isinstance(documento, dict):
        raise InvalidProof("Documento de prova deve ser um objeto")
    gap = instancia.parse(documento.get("instance"))
    params = corpo.parse_lde(documento.get("lde"))
    estado = prova.parse_state(documento.get("state"))
    blocos = prova.parse(documento.get("proof"))
    r = int(documento.get("r", params.default_degree))
    return gap, params, estado, blocos, r


def cmd_qpcp_verify(args: argparse.Namespace) -> Resultado:
    gap, params, estado, blocos, r = _load_proof(args.proof)
    embedding = embed_variables(gap, params)

    def tentativa(rng: Any) -> Tuple[bool, int]:
        veredito = verify_once(gap, estado, blocos, params, r, rng, embedding)
        return veredito.accept, veredito.blocks_read

    contagem = sample_outcomes(tentativa, args.trials, args.seed, args.workers)
    aceitos = sum(n for (aceita, _), n in contagem.items() if aceita)
    leituras = sorted({lidos for _, lidos in contagem})
    return {
        "trials": args.trials,
        "accepted": aceitos,
        "accept_rate": aceitos / args.trials,
        "blocks_read": leituras,
    }, leituras == [1]


def cmd_qpcp_exact(args: argparse.Namespace) -> Resultado:
    gap, params, estado, blocos, r = _load_proof(args.proof)
    return {"accept_exact": accept_prob_exact(gap, estado, blocos, params, r)}, True


def cmd_qpcp_decode(args: argparse.Namespace) -> Resultado:
    gap, params, estado, blocos, r = _load_proof(args.proof)
    relatorio = decode_and_score(
        blocos,
        gap,
        params,
        r,
        state=estado,
        assume_hypothesis=args.assume_hypothesis,
        search_space=args.search_space,
    )
    return relatorio.to_dict(), relatorio.holds is not False


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="quantico",
        description="Laboratório de extensões quânticas de baixo grau, teste de baixo grau e QPCP",
    )
    parser.add_argument("--log-level", default="WARNING",
                        choices=["DEBUG", "INFO", "WARNING", "ERROR"], help="nível de log")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("encode", help="tabela de dados, extensão de baixo grau e estado")
    _lde_arguments(p)
    p.add_argument("--seed", type=int, default=0, help="semente para a tabela sorteada")
    _output_arguments(p)
    p.set_defaults(handler=cmd_encode)

    for nome, handler, ajuda in (
        ("retrieve", cmd_retrieve, "R1 (ou R2 com --w2) por Monte Carlo"),
        ("retrieve-exact", cmd_retrieve_exact, "distribuição exata dos vereditos de R1/R2"),
    ):
        p = sub.add_parser(nome, help=ajuda)
        _lde_arguments(p)
        _run_arguments(p)
        p.add_argument("--w", type=_ints, default=None, help="ponto marcado")
        p.add_argument("--w2", type=_ints, default=None, help="segundo ponto marcado (R2)")
        p.add_argument("--strategy", action="append", choices=ADVERSARY_NAMES,
                       help="estratégia de Merlin (repetível; todas quando ausente)")
        _output_arguments(p)
        p.set_defaults(handler=handler)

    for nome, handler, ajuda in (
        ("qldt", cmd_qldt, "teste quântico de baixo grau por Monte Carlo"),
        ("qldt-exact", cmd_qldt_exact, "aceitação exata e cota de concordância"),
    ):
        p = sub.add_parser(nome, help=ajuda)
        _lde_arguments(p)
        _run_arguments(p)
        _output_arguments(p)
        p.set_defaults(handler=handler)

    p = sub.add_parser("qpcp", help="verificador QPCP")
    qpcp_sub = p.add_subparsers(dest="qpcp_command", required=True)
    q = qpcp_sub.add_parser("prove", help="prova correta para uma atribuição")
    q.add_argument("--instance", required=True, help="instância GAP (arquivo ou URL)")
    q.add_argument("--assignment", type=_ints, required=True, help="valores de Y_1..Y_m")
    q.add_argument("--allow-unsatisfying", action="store_true",
                   help="formata a prova mesmo se a atribuição não satisfizer tudo")
    _lde_arguments(q, data=False)
    _output_arguments(q)
    q.set_defaults(handler=cmd_qpcp_prove)
    for nome, handler, ajuda in (
        ("verify", cmd_qpcp_verify, "execuções do verificador"),
        ("exact", cmd_qpcp_exact, "probabilidade exata de aceitação"),
        ("decode", cmd_qpcp_decode, "decodificação pelo melhor h"),
    ):
        q = qpcp_sub.add_parser(nome, help=ajuda)
        q.add_argument("--proof", required=True, help="documento gerado por qpcp prove")
        if nome == "verify":
            _run_arguments(q)
        if nome == "decode":
            q.add_argument("--assume-hypothesis", action="store_true",
                           help="afirma a fração decodificada >= γ⁴/100")
            q.add_argument("--search-space", default="lde_assignments",
                           choices=["lde_assignments", "total_degree", "per_variable"])
        _output_arguments(q)
        q.set_defaults(handler=handler)

    p = sub.add_parser("demo-advice", help="decide uma consulta pelo conselho quântico")
    p.add_argument("--table", required=True, help="tabela-verdade como sequência de bits")
    p.add_argument("--query", required=True, help="consulta de ν bits")
    p.add_argument("--strategy", choices=ADVERSARY_NAMES, default=None)
    p.add_argument("--d", type=int, default=None, help="dimensão; a menor que comporta a tabela por padrão")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--exact", action="store_true", help="inclui a probabilidade exata de aceitação")
    _output_arguments(p)
    p.set_defaults(handler=cmd_demo_advice)

    p = sub.add_parser("line-counts", help="contagens exatas de retas e razões de retas boas")
    p.add_argument("--a", type=int, default=2)
    p.add_argument("--modulus", dest="modulus_bits", type=lambda s: int(s, 0), default=None)
    p.add_argument("--d", type=int, default=2)
    p.add_argument("--w", type=_ints, default=None, help="ponto de τ (origem por padrão)")
    p.add_argument("--w2", type=_ints, default=None, help="segundo ponto de τ")
    _output_arguments(p)
    p.set_defaults(handler=cmd_line_counts)

    p = sub.add_parser("experiment", help="executa um ExperimentConfig")
    p.add_argument("--config", required=True, help="arquivo ou URL do ExperimentConfig")
    _output_arguments(p)
    p.set_defaults(handler=cmd_experiment)
    return parser


def _emit(resultado: Any, args: argparse.Namespace) -> bool:
    if isinstance(resultado, TrialReport):
        texto = write_report(resultado, args.output, args.csv)
        passou = resultado.passed
    else:
        documento, passou = resultado
        texto = json.dumps(documento, indent=2, sort_keys=True)
        if args.output:
            Path(args.output).write_text(texto + "\n", encoding="utf-8")
        if args.csv:
            logger.warning("--csv ignorado: o comando não produz tabela")
    if not args.output:
        print(texto)
    return passou


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=getattr(logging, args.log_level), format="%(levelname)s %(name)s: %(message)s")
    handler: Callable[[argparse.Namespace], Any] = args.handler
    try:
        resultado = handler(args)
    except QuanticoException as e:
        logger.debug("erro em %s", args.command, exc_info=True)
        print(f"erro: {e}", file=sys.stderr)
        return 2
    return 0 if _emit(resultado, args) else 1


if __name__ == "__main__":
    sys.exit(main())
