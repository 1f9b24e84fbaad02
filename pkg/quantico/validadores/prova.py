"""Validador de provas: blocos p(τ_j, S) e estados quânticos em JSON."""

from typing import Any, Dict

import numpy as np

from ..algebra.geom import AffineSubspace, all_points, canonical_subspace, point_index
from ..algebra.mpoly import MultiPoly
from ..core.base import BaseValidator
from ..core.exceptions import InvalidProof, ParameterError
from ..protocolos.qpcp import ProofBlocks
from ..protocolos.qsim import QuantumState
from .corpo import corpo


class ProvaValidator(BaseValidator[ProofBlocks]):
    """Validador do documento de blocos.

    Formato: {"field": {...}, "d": d, "blocks": [{"j", "base", "dirs",
    "nvars", "terms"}]}, com S sempre na forma canônica (direções
    escalonadas reduzidas e base zerada nas colunas pivô).

    Examples:
        >>> from quantico.validadores import prova
        >>> blocos = prova.parse(documento)
        >>> prova.serialize(blocos) == documento
        True
    """

    def validate(self, value: Any, raise_error: bool = False) -> bool:
        """Valida um documento de blocos.

        Args:
            value: Dicionário vindo de JSON.
            raise_error: Se True, levanta InvalidProof ao invés de retornar False.

        Returns:
            True se o documento é válido, False caso contrário.

        Raises:
            InvalidProof: Se raise_error=True e o documento for inválido.
        """
        try:
            self.parse(value)
            return True
        except InvalidProof:
            if raise_error:
                raise
            return False

    def parse(self, value: Any) -> ProofBlocks:
        if not isinstance(value, dict) or "blocks" not in value:
            raise InvalidProof("Documento de blocos deve ter field, d e blocks")
        try:
            campo = corpo.parse(value.get("field"))
            d = value.get("d")
            if isinstance(d, bool) or not isinstance(d, int) or d < 1:
                raise InvalidProof(f"Campo d deve ser inteiro positivo, recebido: {d!r}")
            blocos = ProofBlocks(campo, d)
            for i, doc in enumerate(value["blocks"]):
                s = AffineSubspace(
                    campo,
                    tuple(self._int_list(doc["base"], f"blocks[{i}].base")),
                    tuple(tuple(self._int_list(v, f"blocks[{i}].dirs")) for v in doc["dirs"]),
                )
                if len(s.base) != d:
                    raise InvalidProof(f"Bloco {i}: base fora de F^{d}")
                canonico = canonical_subspace(s)
                if (canonico.base, canonico.dirs) != (s.base, s.dirs):
                    raise InvalidProof(f"Bloco {i}: subespaço fora da forma canônica")
                poly = MultiPoly.from_list(campo, int(doc["nvars"]), doc["terms"])
                blocos.put(int(doc["j"]), s, poly)
        except (KeyError, TypeError, ValueError, ParameterError) as e:
            raise InvalidProof(f"Documento de blocos inválido: {e}") from e
        return blocos

    def serialize(self, obj: ProofBlocks) -> Dict[str, Any]:
        return obj.to_dict()

    def parse_state(self, value: Any) -> QuantumState:
        """Converte um documento de estado (forma "qlde" ou "dense") em QuantumState.

        Raises:
            InvalidProof: Se o documento for inválido ou o estado não normalizado.
        """
        if not isinstance(value, dict):
            raise InvalidProof("Estado deve ser um objeto")
        try:
            campo = corpo.parse(value.get("field"))
            d = int(value["d"])
            forma = value.get("form")
            if forma == "qlde":
                return QuantumState.qlde(campo, d, self._int_list(value["values"], "values"))
            if forma != "dense":
                raise InvalidProof(f"Forma de estado desconhecida: {forma!r}")
            all_points(campo, d)
            amps = np.zeros((campo.order ** d, campo.order), dtype=np.complex128)
            for entrada in value["entries"]:
                if len(entrada) != d + 3:
                    raise InvalidProof(f"Entrada de amplitude deve ter {d + 3} campos")
                z = [campo.check(int(x)) for x in entrada[:d]]
                y = campo.check(int(entrada[d]))
                amps[point_index(campo, z), y] = complex(
                    float(entrada[d + 1]), float(entrada[d + 2])
                )
            return QuantumState(campo, d, amplitudes=amps)
        except (KeyError, TypeError, ValueError, ParameterError) as e:
            raise InvalidProof(f"Documento de estado inválido: {e}") from e

    def serialize_state(self, state: QuantumState) -> Dict[str, Any]:
        return state.to_dict()


prova: ProvaValidator = ProvaValidator()
