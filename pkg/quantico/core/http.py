"""Cliente HTTP compartilhado para carregar documentos JSON remotos ou locais."""

import json
import logging
from pathlib import Path
from typing import Any, Dict, Optional, Union

import httpx

from .exceptions import SourceError

logger = logging.getLogger(__name__)


class HTTPClient:
    """Cliente HTTP síncrono para instâncias e configurações publicadas.

    Fornece requisições GET com timeout e tratamento de erros padronizado,
    e um carregador único que aceita tanto caminhos locais quanto URLs.

    Attributes:
        timeout: Tempo máximo de espera em segundos.
        transport: Transporte httpx opcional (usado em testes com MockTransport).

    Examples:
        >>> client = HTTPClient(timeout=10)
        >>> instancia = client.carregar_json("https://exemplo.org/gap.json")
        >>> config = client.carregar_json("experimentos/r1.json")
    """

    def __init__(
        self,
        timeout: int = 10,
        transport: Optional[httpx.BaseTransport] = None,
    ):
        """Inicializa o cliente HTTP.

        Args:
            timeout: Tempo máximo de espera em segundos (padrão: 10).
            transport: Transporte httpx alternativo (padrão: rede real).
        """
        self.timeout = timeout
        self.transport = transport

    def get(
        self,
        url: str,
        params: Optional[Dict[str, Any]] = None,
        headers: Optional[Dict[str, str]] = None
    ) -> Any:
        """Realiza requisição GET síncrona.

        Args:
            url: URL completa para requisição.
            params: Parâmetros query string (opcional).
            headers: Headers HTTP customizados (opcional).

        Returns:
            Resposta JSON decodificada.

        Raises:
            httpx.HTTPStatusError: Se status code não for 2xx.
            httpx.RequestError: Se houver erro de conexão.
        """
        with httpx.Client(
            timeout=self.timeout,
            transport=self.transport,
            follow_redirects=True,
        ) as client:
            response = client.get(url, params=params, headers=headers)
            response.raise_for_status()
            return response.json()

    def carregar_json(self, fonte: Union[str, Path]) -> Any:
        """Carrega um documento JSON de um caminho local ou de uma URL http(s).

        Args:
            fonte: Caminho de arquivo ou URL começando com http:// ou https://.

        Returns:
            Documento JSON decodificado.

        Raises:
            SourceError: Se a fonte não existir, falhar ou não for JSON.

        Examples:
            >>> http_client.carregar_json("instancias/gap_unsat.json")["q"]
            2
        """
        texto = str(fonte)
        if texto.startswith(("http://", "https://")):
            logger.debug("carregando JSON remoto de %s", texto)
            try:
                return self.get(texto)
            except httpx.HTTPStatusError as e:
                raise SourceError(
                    f"Erro HTTP {e.response.status_code} ao carregar {texto}"
                ) from e
            except httpx.RequestError as e:
                raise SourceError(f"Erro de conexão ao carregar {texto}: {str(e)}") from e
            except ValueError as e:
                raise SourceError(f"Resposta de {texto} não é JSON válido") from e

        caminho = Path(texto)
        logger.debug("carregando JSON local de %s", caminho)
        try:
            with caminho.open("r", encoding="utf-8") as arquivo:
                return json.load(arquivo)
        except OSError as e:
            raise SourceError(f"Não foi possível ler {caminho}: {str(e)}") from e
        except json.JSONDecodeError as e:
            raise SourceError(f"Arquivo {caminho} não é JSON válido: {str(e)}") from e


http_client: HTTPClient = HTTPClient()
