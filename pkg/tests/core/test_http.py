"""Testes para o carregador de documentos JSON."""

import json

import httpx
import pytest
from quantico.core.exceptions import SourceError
from quantico.core.http import HTTPClient


def _client(handler) -> HTTPClient:
    return HTTPClient(timeout=5, transport=httpx.MockTransport(handler))


class TestCarregarLocal:
    """Testes de carregamento de arquivos locais."""

    def test_load_local_file(self, tmp_path) -> None:
        """Testa a leitura de um arquivo JSON local."""
        arquivo = tmp_path / "gap.json"
        arquivo.write_text(json.dumps({"q": 2, "k": 3}), encoding="utf-8")
        assert HTTPClient().carregar_json(arquivo) == {"q": 2, "k": 3}

    def test_missing_file(self, tmp_path) -> None:
        """Testa arquivo inexistente."""
        with pytest.raises(SourceError, match="Não foi possível ler"):
            HTTPClient().carregar_json(tmp_path / "nada.json")

    def test_invalid_json_file(self, tmp_path) -> None:
        """Testa arquivo com conteúdo que não é JSON."""
        arquivo = tmp_path / "ruim.json"
        arquivo.write_text("{q: 2", encoding="utf-8")
        with pytest.raises(SourceError, match="não é JSON válido"):
            HTTPClient().carregar_json(arquivo)


class TestCarregarRemoto:
    """Testes de carregamento por HTTP com transporte simulado."""

    def test_load_remote_document(self) -> None:
        """Testa GET bem-sucedido."""
        client = _client(lambda request: httpx.Response(200, json={"a": 4}))
        assert client.carregar_json("https://exemplo.org/config.json") == {"a": 4}

    def test_http_error_status(self) -> None:
        """Testa resposta 404."""
        client = _client(lambda request: httpx.Response(404))
        with pytest.raises(SourceError, match="Erro HTTP 404"):
            client.carregar_json("https://exemplo.org/nada.json")

    def test_connection_error(self) -> None:
        """Testa falha de conexão."""
        def recusar(request: httpx.Request) -> httpx.Response:
            raise httpx.ConnectError("recusada", request=request)

        with pytest.raises(SourceError, match="Erro de conexão"):
            _client(recusar).carregar_json("http://exemplo.org/x.json")

    def test_remote_body_not_json(self) -> None:
        """Testa resposta com corpo que não é JSON."""
        client = _client(lambda request: httpx.Response(200, text="<html>"))
        with pytest.raises(SourceError, match="não é JSON válido"):
            client.carregar_json("https://exemplo.org/pagina")
