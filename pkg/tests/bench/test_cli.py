"""Testes para a linha de comando."""

import json

import pytest
from quantico.bench.cli import build_parser, main

INSTANCIA = {"m": 2, "s": 1, "q": 2, "eps": 0.5, "predicates": [{"vars": [0, 1], "sat": [[0, 0], [1, 1]]}]}


@pytest.fixture
def prova_json(tmp_path):
    """Prova correta gravada por qpcp prove."""
    instancia = tmp_path / "gap.json"
    instancia.write_text(json.dumps(INSTANCIA), encoding="utf-8")
    saida = tmp_path / "prova.json"
    codigo = main([
        "qpcp", "prove", "--instance", str(instancia), "--assignment", "1,1",
        "--a", "2", "--d", "3", "--h-size", "2", "--output", str(saida),
    ])
    assert codigo == 0
    return saida


class TestCliCommands:
    """Testes dos subcomandos."""

    def test_encode(self, capsys) -> None:
        """Testa a extensão de uma tabela fixa."""
        assert main(["encode", "--a", "2", "--d", "1", "--h-size", "2", "--data", "0,1"]) == 0
        documento = json.loads(capsys.readouterr().out)
        assert documento["lde"]["terms"] == [[[1], 1]]
        assert documento["state"]["form"] == "qlde"

    def test_retrieve_exact(self, capsys) -> None:
        """Testa R1 exato com Merlin honesto."""
        codigo = main([
            "retrieve-exact", "--a", "2", "--d", "2", "--h-size", "2", "--w", "1,2",
            "--strategy", "honest", "--strategy", "targeted-w-flip",
        ])
        assert codigo == 0
        documento = json.loads(capsys.readouterr().out)
        assert [linha["strategy"] for linha in documento["rows"]] == ["honest", "targeted-w-flip"]

    def test_retrieve_two_points(self, capsys) -> None:
        """Testa que --w2 seleciona R2."""
        codigo = main([
            "retrieve", "--a", "2", "--d", "2", "--h-size", "2", "--w", "0,1", "--w2", "1,0",
            "--trials", "50", "--strategy", "honest",
        ])
        assert codigo == 0
        assert json.loads(capsys.readouterr().out)["experiment"] == "retrieve2"

    def test_qldt_exact(self, capsys) -> None:
        """Testa a aceitação exata do teste de baixo grau."""
        assert main(["qldt-exact", "--a", "2", "--d", "2", "--h-size", "2"]) == 0
        documento = json.loads(capsys.readouterr().out)
        assert documento["rows"][0]["gamma_exact"] == pytest.approx(1.0)

    def test_line_counts_csv(self, tmp_path, capsys) -> None:
        """Testa line-counts com saída CSV."""
        tabela = tmp_path / "retas.csv"
        assert main(["line-counts", "--a", "2", "--d", "3", "--csv", str(tabela)]) == 0
        assert json.loads(capsys.readouterr().out)["summary"]["num_lines"] == 336
        assert tabela.read_text(encoding="utf-8").startswith("tau,")

    def test_demo_advice(self, capsys) -> None:
        """Testa a decisão de uma consulta."""
        assert main(["demo-advice", "--table", "0110", "--query", "10", "--exact"]) == 0
        documento = json.loads(capsys.readouterr().out)
        assert documento["accept"] is True
        assert documento["accept_exact"] == pytest.approx(1.0)

    def test_experiment_from_file(self, tmp_path, capsys) -> None:
        """Testa um ExperimentConfig em arquivo com saída em --output."""
        configuracao = tmp_path / "cfg.json"
        saida = tmp_path / "relatorio.json"
        configuracao.write_text(
            json.dumps({"experiment": "line-counts", "a": 2, "d": 3, "output": str(saida)}),
            encoding="utf-8",
        )
        assert main(["experiment", "--config", str(configuracao)]) == 0
        assert capsys.readouterr().out == ""
        assert json.loads(saida.read_text(encoding="utf-8"))["passed"] is True


class TestCliQpcp:
    """Testes do fluxo prove / verify / exact / decode."""

    def test_verify(self, prova_json, capsys) -> None:
        """Testa que toda execução lê um bloco e aceita."""
        assert main(["qpcp", "verify", "--proof", str(prova_json), "--trials", "20", "--workers", "2"]) == 0
        documento = json.loads(capsys.readouterr().out)
        assert documento["blocks_read"] == [1]
        assert documento["accepted"] == 20

    def test_exact(self, prova_json, capsys) -> None:
        """Testa a aceitação exata da prova correta."""
        assert main(["qpcp", "exact", "--proof", str(prova_json)]) == 0
        assert json.loads(capsys.readouterr().out)["accept_exact"] == pytest.approx(1.0)

    def test_decode(self, prova_json, capsys) -> None:
        """Testa a decodificação da atribuição."""
        assert main(["qpcp", "decode", "--proof", str(prova_json), "--assume-hypothesis"]) == 0
        documento = json.loads(capsys.readouterr().out)
        assert documento["assignment"] == [1, 1]
        assert documento["satisfied_fraction"] == 1.0

    def test_prove_unsatisfying(self, tmp_path, capsys) -> None:
        """Testa a recusa de atribuição insatisfatória (código 2)."""
        instancia = tmp_path / "gap.json"
        instancia.write_text(json.dumps(INSTANCIA), encoding="utf-8")
        codigo = main([
            "qpcp", "prove", "--instance", str(instancia), "--assignment", "0,1",
            "--a", "2", "--d", "3", "--h-size", "2",
        ])
        assert codigo == 2
        assert "não satisfaz" in capsys.readouterr().err


class TestCliErrors:
    """Testes de erros e códigos de saída."""

    def test_invalid_configuration(self, capsys) -> None:
        """Testa |H| > |F| (código 2)."""
        assert main(["qldt", "--a", "2", "--h-size", "5"]) == 2
        assert "erro:" in capsys.readouterr().err

    def test_missing_proof_file(self, tmp_path, capsys) -> None:
        """Testa prova inexistente."""
        assert main(["qpcp", "exact", "--proof", str(tmp_path / "nada.json")]) == 2
        assert "Não foi possível ler" in capsys.readouterr().err

    def test_unknown_strategy(self) -> None:
        """Testa escolha inválida rejeitada pelo argparse."""
        with pytest.raises(SystemExit):
            build_parser().parse_args(["retrieve", "--strategy", "preguicoso"])
