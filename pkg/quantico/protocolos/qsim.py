"""Simulador de estados em C^{|F|^{d+1}} no nível de registradores.

Um estado guarda as amplitudes φ_{z,y} numa tabela (|F|^d, |F|), linha
idx(z), coluna y. Extensões quânticas de baixo grau (e suas imagens por
U_E) ficam na forma esparsa "qlde": um único y por z, amplitude |F|^{-d/2};
a tabela densa só é materializada quando necessária.
"""

import logging
from dataclasses import dataclass
from typing import Any, Dict, Optional, Sequence, Tuple

import numpy as np

from ..algebra.geom import (
    Line,
    LinearMap,
    Point,
    all_points,
    indices_of,
    line_catalog,
    solve_line_from_prefix,
    sub,
)
from ..algebra.gf import FieldParams
from ..algebra.mpoly import DataTable, LdeParams, MultiPoly, UniPoly, interpolate_lde
from ..core.exceptions import ParameterError

logger = logging.getLogger(__name__)

NORM_TOL: float = 1e-12


class QuantumState:
    """Estado puro |Φ⟩ = Σ φ_{z,y} |z⟩|y⟩ sobre F^d × F.

    Attributes:
        field: Corpo F.
        d: Número de registradores de ponto.

    Examples:
        >>> gf4 = get_field(2)
        >>> estado = QuantumState.basis(gf4, 2, (1, 3), 2)
        >>> estado.probabilities()[7, 2]
        1.0
    """

    def __init__(
        self,
        field: FieldParams,
        d: int,
        amplitudes: Optional[np.ndarray] = None,
        qlde_values: Optional[np.ndarray] = None,
    ):
        if (amplitudes is None) == (qlde_values is None):
            raise ParameterError("Informe amplitudes densas ou valores qlde, não ambos")
        self.field = field
        self.d = d
        q = field.order
        pontos = q ** d
        self._dense: Optional[np.ndarray] = None
        self._values: Optional[np.ndarray] = None
        if qlde_values is not None:
            valores = np.array(qlde_values, dtype=np.int64).reshape(-1)
            if valores.shape != (pontos,):
                raise ParameterError(f"Tabela qlde deve ter {pontos} valores")
            if valores.size and (valores.min() < 0 or valores.max() >= q):
                raise ParameterError("Valores qlde fora do corpo")
            valores.setflags(write=False)
            self._values = valores
        else:
            amps = np.asarray(amplitudes, dtype=np.complex128)
            if amps.shape != (pontos, q):
                raise ParameterError(
                    f"Amplitudes devem ter forma ({pontos}, {q}), recebido: {amps.shape}"
                )
            norma = float(np.sum(np.abs(amps) ** 2))
            if abs(norma - 1.0) > NORM_TOL:
                raise ParameterError(f"Estado não normalizado: norma² = {norma}")
            amps = amps.copy()
            amps.setflags(write=False)
            self._dense = amps

    @classmethod
    def from_amplitudes(cls, field: FieldParams, d: int, amplitudes: Any, normalize: bool = False) -> "QuantumState":
        amps = np.asarray(amplitudes, dtype=np.complex128)
        if normalize:
            norma = np.sqrt(np.sum(np.abs(amps) ** 2))
            if norma == 0:
                raise ParameterError("Vetor nulo não pode ser normalizado")
            amps = amps / norma
        return cls(field, d, amplitudes=amps)

    @classmethod
    def qlde(cls, field: FieldParams, d: int, values: Any) -> "QuantumState":
        return cls(field, d, qlde_values=values)

    @classmethod
    def basis(cls, field: FieldParams, d: int, z: Sequence[int], y: int) -> "QuantumState":
        q = field.order
        amps = np.zeros((q ** d, q), dtype=np.complex128)
        amps[indices_of(field, np.array(z)), field.check(y)] = 1.0
        return cls(field, d, amplitudes=amps)

    @classmethod
    def uniform(cls, field: FieldParams, d: int) -> "QuantumState":
        q = field.order
        amps = np.full((q ** d, q), 1.0 / np.sqrt(q ** (d + 1)), dtype=np.complex128)
        return cls(field, d, amplitudes=amps)

    @classmethod
    def random(
        cls,
        field: FieldParams,
        d: int,
        rng: np.random.Generator,
        complex_amplitudes: bool = True,
    ) -> "QuantumState":
        """Estado aleatório (gaussiano normalizado), complexo por padrão."""
        q = field.order
        amps = rng.normal(size=(q ** d, q)).astype(np.complex128)
        if complex_amplitudes:
            amps = amps + 1j * rng.normal(size=(q ** d, q))
        return cls.from_amplitudes(field, d, amps, normalize=True)

    @property
    def q(self) -> int:
        return self.field.order

    @property
    def num_points(self) -> int:
        return self.field.order ** self.d

    @property
    def is_qlde(self) -> bool:
        return self._values is not None

    @property
    def qlde_values(self) -> np.ndarray:
        if self._values is None:
            raise ParameterError("Estado não está na forma qlde")
        return self._values

    @property
    def dense(self) -> np.ndarray:
        if self._dense is None:
            assert self._values is not None
            amps = np.zeros((self.num_points, self.q), dtype=np.complex128)
            amps[np.arange(self.num_points), self._values] = 1.0 / np.sqrt(self.num_points)
            amps.setflags(write=False)
            self._dense = amps
        return self._dense

    def probabilities(self) -> np.ndarray:
        return np.abs(self.dense) ** 2

    def norm(self) -> float:
        return float(np.sqrt(np.sum(self.probabilities())))

    def point_marginals(self) -> np.ndarray:
        """φ_z = sqrt(Σ_y |φ_{z,y}|²) para cada índice z."""
        return np.sqrt(np.sum(self.probabilities(), axis=1))

    def line_marginals(self) -> np.ndarray:
        """φ_ℓ = sqrt(Σ_{z∈ℓ} φ_z²) na ordem do catálogo de retas."""
        catalogo = line_catalog(self.field, self.d)
        massa = self.point_marginals() ** 2
        return np.sqrt(massa[catalogo.points].sum(axis=1))

    def shift_y(self, c: int) -> "QuantumState":
        """Estado com o registrador y deslocado: |z⟩|y⟩ -> |z⟩|y + c⟩."""
        if self._values is not None:
            return QuantumState.qlde(self.field, self.d, self._values ^ c)
        colunas = np.arange(self.q) ^ c
        novo = np.zeros_like(self.dense)
        novo[:, colunas] = self.dense
        return QuantumState(self.field, self.d, amplitudes=novo)

    def to_dict(self) -> Dict[str, Any]:
        cabecalho: Dict[str, Any] = {"field": self.field.to_dict(), "d": self.d}
        if self._values is not None:
            return {**cabecalho, "form": "qlde", "values": [int(v) for v in self._values]}
        pontos = all_points(self.field, self.d)
        entradas = []
        for idx, y in zip(*np.nonzero(self.dense)):
            amp = self.dense[idx, y]
            entradas.append(
                [int(x) for x in pontos[idx]] + [int(y), float(amp.real), float(amp.imag)]
            )
        return {**cabecalho, "form": "dense", "entries": entradas}


@dataclass(frozen=True, eq=False)
class LineState:
    """Estado em C^{|F|×|F|} indexado por (t, y): |Φ'⟩ colapsado ou |e₁⟩."""

    field: FieldParams
    amplitudes: np.ndarray

    def __post_init__(self) -> None:
        q = self.field.order
        amps = np.asarray(self.amplitudes, dtype=np.complex128)
        if amps.shape != (q, q):
            raise ParameterError(f"Estado de reta deve ter forma ({q}, {q})")
        norma = float(np.sum(np.abs(amps) ** 2))
        if abs(norma - 1.0) > NORM_TOL:
            raise ParameterError(f"Estado de reta não normalizado: norma² = {norma}")
        object.__setattr__(self, "amplitudes", amps)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "entries": [
                [int(t), int(y), float(self.amplitudes[t, y].real), float(self.amplitudes[t, y].imag)]
                for t, y in zip(*np.nonzero(self.amplitudes))
            ]
        }


@dataclass(frozen=True, eq=False)
class PrefixOutcome:
    """Resultado da medição dos d-1 primeiros registradores."""

    b: Point
    collapsed: LineState
    line: Line
    u: Point
    v: Point
    probability: float


def build_qlde_state(params: LdeParams, data: DataTable) -> QuantumState:
    """|Ψ⟩ = |F|^{-d/2} Σ_z |z⟩|Ã(z)⟩, guardado na forma esparsa.

    Raises:
        ResourceError: Se |F|^d exceder o limite de enumeração.
    """
    lde = interpolate_lde(params, data)
    return qlde_from_polynomial(lde)


def qlde_from_polynomial(p: MultiPoly) -> QuantumState:
    all_points(p.field, p.nvars)
    return QuantumState.qlde(p.field, p.nvars, p.evaluation_grid())


def measure_all(state: QuantumState, rng: np.random.Generator) -> Tuple[Point, int]:
    """Mede todos os registradores: (z, y) com probabilidade |φ_{z,y}|²."""
    pontos = all_points(state.field, state.d)
    if state.is_qlde:
        idx = int(rng.integers(state.num_points))
        y = int(state.qlde_values[idx])
    else:
        probs = state.probabilities().reshape(-1)
        plano = int(rng.choice(probs.size, p=probs / probs.sum()))
        idx, y = divmod(plano, state.q)
    return tuple(int(x) for x in pontos[idx]), y


def apply_linear_permutation(state: QuantumState, e: LinearMap) -> QuantumState:
    """U_E: |z⟩|y⟩ -> |E(z)⟩|y⟩.

    Raises:
        ParameterError: Se E for singular ou incompatível com o estado.
    """
    if e.field != state.field or e.d != state.d:
        raise ParameterError("Mapa linear incompatível com o estado")
    if not e.is_invertible():
        raise ParameterError("U_E exige um mapa linear inversível")
    imagens = indices_of(state.field, e.apply_array(all_points(state.field, state.d)))
    if state.is_qlde:
        valores = np.empty(state.num_points, dtype=np.int64)
        valores[imagens] = state.qlde_values
        return QuantumState.qlde(state.field, state.d, valores)
    novo = np.zeros_like(state.dense)
    novo[imagens] = state.dense
    return QuantumState(state.field, state.d, amplitudes=novo)


def measure_prefix(
    state: QuantumState,
    rng: np.random.Generator,
    e: Optional[LinearMap] = None,
) -> PrefixOutcome:
    """Mede os d-1 primeiros registradores de U_E|Φ⟩.

    O estado colapsado é indexado por (t, y), t sendo o valor do último
    registrador; o ponto correspondente a t é u + t·(v - u), com
    u = E⁻¹(b, 0) e v = E⁻¹(b, 1).

    Args:
        state: Estado já transformado por U_E.
        rng: Gerador.
        e: O mapa E aplicado (identidade quando None).
    """
    f = state.field
    q = f.order
    prefixos = q ** (state.d - 1)
    if state.is_qlde:
        b_idx = int(rng.integers(prefixos))
        probabilidade = 1.0 / prefixos
        valores = state.qlde_values.reshape(prefixos, q)[b_idx]
        colapsado = np.zeros((q, q), dtype=np.complex128)
        colapsado[np.arange(q), valores] = 1.0 / np.sqrt(q)
    else:
        fibras = state.dense.reshape(prefixos, q, q)
        massa = np.sum(np.abs(fibras) ** 2, axis=(1, 2))
        b_idx = int(rng.choice(prefixos, p=massa / massa.sum()))
        probabilidade = float(massa[b_idx])
        colapsado = fibras[b_idx] / np.sqrt(probabilidade)
    if state.d > 1:
        b = tuple(int(x) for x in all_points(f, state.d - 1)[b_idx])
    else:
        b = ()
    mapa = e if e is not None else LinearMap.identity(f, state.d)
    u, v = solve_line_from_prefix(mapa, b)
    return PrefixOutcome(
        b=b,
        collapsed=LineState(f, colapsado),
        line=Line(f, u, sub(v, u)),
        u=u,
        v=v,
        probability=probabilidade,
    )


def line_state_from_values(field: FieldParams, values: Any) -> LineState:
    """|F|^{-1/2} Σ_t |t⟩|g(t)⟩ a partir dos valores g(t), t em ordem de codificação."""
    q = field.order
    valores = np.asarray(values, dtype=np.int64)
    if valores.shape != (q,):
        raise ParameterError(f"Esperados {q} valores, recebido: {valores.shape}")
    amps = np.zeros((q, q), dtype=np.complex128)
    amps[np.arange(q), valores] = 1.0 / np.sqrt(q)
    return LineState(field, amps)


def build_line_state(g: UniPoly, field: FieldParams) -> LineState:
    """|e₁⟩ = |F|^{-1/2} Σ_t |t⟩|g(t)⟩."""
    return line_state_from_values(field, g.values())


def projection_prob(phi: LineState, e1: LineState) -> float:
    """|⟨e₁|Φ'⟩|², sem construir a base ortonormal que estende |e₁⟩."""
    return float(min(1.0, abs(np.vdot(e1.amplitudes, phi.amplitudes)) ** 2))
