"""Geometria afim de F^d: retas, planos, subespaços e mapas lineares.

Pontos são tuplas de codificações de elementos de F. O índice de um
ponto z em F^d é idx(z) = Σ z_i·q^(d-1-i) (primeira coordenada mais
significativa), a mesma ordem das grades de mpoly.
"""

import logging
from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Any, Dict, Iterable, List, Optional, Sequence, Set, Tuple

import numpy as np

from ..core.exceptions import DegenerateLineError, ParameterError, ResourceError
from .gf import FieldParams

logger = logging.getLogger(__name__)

Point = Tuple[int, ...]

MAX_POINTS: int = 1 << 20
MAX_CATALOG: int = 1 << 24


def _as_point(field: FieldParams, p: Iterable[Any]) -> Point:
    return tuple(field.check(int(x)) for x in p)


def sub(p: Sequence[int], q: Sequence[int]) -> Point:
    """p - q (em característica 2, igual a p + q)."""
    return tuple(int(a) ^ int(b) for a, b in zip(p, q))


def axpy(field: FieldParams, base: Sequence[int], t: int, direction: Sequence[int]) -> Point:
    """base + t·direction."""
    return tuple(int(b) ^ field.mul(t, int(v)) for b, v in zip(base, direction))


def _check_points(q: int, d: int) -> int:
    total = q ** d
    if total > MAX_POINTS:
        raise ResourceError(f"|F|^d = {total} pontos excede o limite {MAX_POINTS}")
    return total


@lru_cache(maxsize=None)
def all_points(field: FieldParams, d: int) -> np.ndarray:
    """Array (q^d, d) com todos os pontos, na ordem dos índices."""
    q = field.order
    total = _check_points(q, d)
    indices = np.arange(total, dtype=np.int64)
    pesos = q ** np.arange(d - 1, -1, -1, dtype=np.int64)
    pontos = (indices[:, None] // pesos[None, :]) % q
    pontos.setflags(write=False)
    return pontos


def indices_of(field: FieldParams, points: Any) -> np.ndarray:
    pontos = np.asarray(points, dtype=np.int64)
    d = pontos.shape[-1]
    pesos = field.order ** np.arange(d - 1, -1, -1, dtype=np.int64)
    return pontos @ pesos


def point_index(field: FieldParams, z: Sequence[int]) -> int:
    indice = 0
    for x in z:
        indice = indice * field.order + int(x)
    return indice


def rref(field: FieldParams, matrix: Any) -> Tuple[np.ndarray, List[int]]:
    """Forma escalonada reduzida por linhas sobre F e colunas pivô."""
    m = np.array(matrix, dtype=np.int64, copy=True)
    if m.ndim != 2 or m.shape[0] == 0:
        return m.reshape(0, m.shape[-1] if m.ndim == 2 else 0), []
    linhas, colunas = m.shape
    pivots: List[int] = []
    r = 0
    for c in range(colunas):
        if r == linhas:
            break
        candidatos = np.nonzero(m[r:, c])[0]
        if candidatos.size == 0:
            continue
        p = r + int(candidatos[0])
        if p != r:
            m[[r, p]] = m[[p, r]]
        m[r] = field.mul_array(m[r], field.inv(int(m[r, c])))
        for i in range(linhas):
            if i != r and m[i, c]:
                m[i] ^= field.mul_array(m[r], int(m[i, c]))
        pivots.append(c)
        r += 1
    return m, pivots


def rank(field: FieldParams, vectors: Sequence[Sequence[int]]) -> int:
    if len(vectors) == 0:
        return 0
    return len(rref(field, vectors)[1])


def determinant(field: FieldParams, matrix: Any) -> int:
    """Determinante por eliminação (trocas não mudam o sinal em característica 2)."""
    m = np.array(matrix, dtype=np.int64, copy=True)
    n = m.shape[0]
    det = 1
    for c in range(n):
        candidatos = np.nonzero(m[c:, c])[0]
        if candidatos.size == 0:
            return 0
        p = c + int(candidatos[0])
        if p != c:
            m[[c, p]] = m[[p, c]]
        pivo = int(m[c, c])
        det = field.mul(det, pivo)
        inv_pivo = field.inv(pivo)
        for i in range(c + 1, n):
            if m[i, c]:
                fator = field.mul(int(m[i, c]), inv_pivo)
                m[i] ^= field.mul_array(m[c], fator)
    return det


def inverse_matrix(field: FieldParams, matrix: Any) -> np.ndarray:
    """Inversa por Gauss-Jordan sobre [M | I].

    Raises:
        ParameterError: Se a matriz for singular.
    """
    m = np.asarray(matrix, dtype=np.int64)
    n = m.shape[0]
    aumentada = np.concatenate([m, np.eye(n, dtype=np.int64)], axis=1)
    reduzida, pivots = rref(field, aumentada)
    if pivots[:n] != list(range(n)):
        raise ParameterError("Mapa linear singular não possui inversa")
    return reduzida[:, n:]


@dataclass(frozen=True)
class Line:
    """Reta {base + t·dir : t em F}.

    Examples:
        >>> gf4 = get_field(2)
        >>> reta = Line(gf4, (0, 0), (1, 1))
        >>> reta.points()
        [(0, 0), (1, 1), (2, 2), (3, 3)]
    """

    field: FieldParams
    base: Point
    dir: Point

    def __post_init__(self) -> None:
        object.__setattr__(self, "base", _as_point(self.field, self.base))
        object.__setattr__(self, "dir", _as_point(self.field, self.dir))
        if len(self.base) != len(self.dir):
            raise ParameterError("Base e direção com dimensões diferentes")
        if not any(self.dir):
            raise DegenerateLineError("Direção nula não define uma reta")

    @property
    def d(self) -> int:
        return len(self.base)

    def point(self, t: int) -> Point:
        return axpy(self.field, self.base, t, self.dir)

    def points(self) -> List[Point]:
        return [tuple(int(x) for x in p) for p in self.points_array()]

    def points_array(self) -> np.ndarray:
        ts = self.field.elements()
        passos = self.field.mul_array(ts[:, None], np.array(self.dir)[None, :])
        return passos ^ np.array(self.base)[None, :]

    def point_indices(self) -> np.ndarray:
        return indices_of(self.field, self.points_array())

    def contains(self, p: Sequence[int]) -> bool:
        return self.parameter_of(p) is not None

    def parameter_of(self, p: Sequence[int]) -> Optional[int]:
        """t com base + t·dir = p, ou None se p não está na reta."""
        delta = sub(p, self.base)
        k = next(i for i, v in enumerate(self.dir) if v)
        t = self.field.div(delta[k], self.dir[k])
        return t if axpy(self.field, self.base, t, self.dir) == tuple(p) else None

    def as_subspace(self) -> "AffineSubspace":
        return AffineSubspace(self.field, self.base, (self.dir,))

    def to_dict(self) -> Dict[str, Any]:
        return {"base": list(self.base), "dir": list(self.dir)}


@dataclass(frozen=True)
class AffineSubspace:
    """Subespaço afim base + span(dirs).

    Com degenerate=True os geradores podem ser dependentes (plano por três
    pontos colineares); a parametrização por len(dirs) variáveis é mantida.
    """

    field: FieldParams
    base: Point
    dirs: Tuple[Point, ...]
    degenerate: bool = False

    def __post_init__(self) -> None:
        object.__setattr__(self, "base", _as_point(self.field, self.base))
        object.__setattr__(self, "dirs", tuple(_as_point(self.field, v) for v in self.dirs))
        if any(len(v) != len(self.base) for v in self.dirs):
            raise ParameterError("Geradores com dimensão diferente da base")
        if not self.degenerate and rank(self.field, self.dirs) != len(self.dirs):
            raise ParameterError("Geradores linearmente dependentes")

    @property
    def d(self) -> int:
        return len(self.base)

    @property
    def num_params(self) -> int:
        return len(self.dirs)

    @property
    def dimension(self) -> int:
        return rank(self.field, self.dirs) if self.degenerate else len(self.dirs)

    def point(self, ts: Sequence[int]) -> Point:
        p = self.base
        for t, v in zip(ts, self.dirs):
            p = axpy(self.field, p, int(t), v)
        return p

    def points_array(self) -> np.ndarray:
        """Pontos para todos os parâmetros t em F^k (ordem lexicográfica de t)."""
        k = self.num_params
        if k == 0:
            return np.array([self.base], dtype=np.int64)
        params = all_points(self.field, k)
        dirs = np.array(self.dirs, dtype=np.int64)
        contribuicoes = self.field.mul_array(params[:, :, None], dirs[None, :, :])
        return np.bitwise_xor.reduce(contribuicoes, axis=1) ^ np.array(self.base)[None, :]

    def point_indices(self) -> np.ndarray:
        return indices_of(self.field, self.points_array())

    def contains(self, p: Sequence[int]) -> bool:
        delta = sub(p, self.base)
        base_rank = rank(self.field, self.dirs)
        return rank(self.field, list(self.dirs) + [delta]) == base_rank

    def canonical(self) -> "AffineSubspace":
        return canonical_subspace(self)

    def key(self) -> Tuple[Point, Tuple[Point, ...]]:
        """Chave de bloco: (base, dirs) na forma canônica."""
        c = canonical_subspace(self)
        return (c.base, c.dirs)

    def pivots(self) -> List[int]:
        return [next(i for i, x in enumerate(v) if x) for v in self.dirs]

    def to_dict(self) -> Dict[str, Any]:
        return {"base": list(self.base), "dirs": [list(v) for v in self.dirs]}


def canonical_coordinates(s: AffineSubspace, points: Any) -> np.ndarray:
    """Coordenadas de pontos num subespaço em forma canônica.

    Na forma escalonada reduzida a coordenada k é a entrada de (p - base)
    na coluna pivô k.
    """
    pontos = np.asarray(points, dtype=np.int64).reshape(-1, s.d)
    delta = pontos ^ np.array(s.base, dtype=np.int64)[None, :]
    return delta[:, s.pivots()]


@dataclass(frozen=True)
class LinearMap:
    """Mapa linear de F^d dado por uma matriz d×d."""

    field: FieldParams
    matrix: Tuple[Tuple[int, ...], ...]

    def __post_init__(self) -> None:
        linhas = tuple(_as_point(self.field, linha) for linha in self.matrix)
        if any(len(linha) != len(linhas) for linha in linhas):
            raise ParameterError("Matriz do mapa linear deve ser quadrada")
        object.__setattr__(self, "matrix", linhas)

    @classmethod
    def identity(cls, field: FieldParams, d: int) -> "LinearMap":
        return cls(field, tuple(tuple(int(i == j) for j in range(d)) for i in range(d)))

    @classmethod
    def from_array(cls, field: FieldParams, array: Any) -> "LinearMap":
        return cls(field, tuple(tuple(int(x) for x in linha) for linha in np.asarray(array)))

    @property
    def d(self) -> int:
        return len(self.matrix)

    def array(self) -> np.ndarray:
        return np.array(self.matrix, dtype=np.int64).reshape(self.d, self.d)

    def det(self) -> int:
        return determinant(self.field, self.array())

    def is_invertible(self) -> bool:
        return self.det() != 0

    def inverse(self) -> "LinearMap":
        return LinearMap.from_array(self.field, inverse_matrix(self.field, self.array()))

    def apply(self, z: Sequence[int]) -> Point:
        return tuple(int(x) for x in self.apply_array(np.array([z]))[0])

    def apply_array(self, points: Any) -> np.ndarray:
        """Imagem de cada linha de um array (M, d)."""
        pontos = np.asarray(points, dtype=np.int64)
        produto = self.field.mul_array(pontos[:, None, :], self.array()[None, :, :])
        return np.bitwise_xor.reduce(produto, axis=-1)

    def compose(self, other: "LinearMap") -> "LinearMap":
        """self ∘ other."""
        colunas = self.apply_array(other.array().T)
        return LinearMap.from_array(self.field, colunas.T)

    def to_dict(self) -> Dict[str, Any]:
        return {"matrix": [list(linha) for linha in self.matrix]}


def line_through(field: FieldParams, w: Sequence[int], z: Sequence[int]) -> Line:
    """Reta com w em t=0 e z em t=1.

    Raises:
        DegenerateLineError: Se w = z.
    """
    w = _as_point(field, w)
    z = _as_point(field, z)
    if w == z:
        raise DegenerateLineError(f"Pontos coincidentes {w} não definem uma reta")
    return Line(field, w, sub(z, w))


def plane_through(field: FieldParams, w: Sequence[int], w2: Sequence[int], z: Sequence[int]) -> AffineSubspace:
    """Plano {w + (z-w)·t1 + (w2-w)·t2}; triplas colineares mantêm os dois geradores.

    Raises:
        ParameterError: Se algum par de pontos coincidir.
    """
    w = _as_point(field, w)
    w2 = _as_point(field, w2)
    z = _as_point(field, z)
    if w == w2 or w == z or w2 == z:
        raise ParameterError(f"Pontos coincidentes: w={w}, w2={w2}, z={z}")
    dirs = (sub(z, w), sub(w2, w))
    colinear = rank(field, dirs) < 2
    if colinear:
        logger.debug("plano degenerado (pontos colineares) por %s, %s, %s", w, w2, z)
    return AffineSubspace(field, w, dirs, degenerate=colinear)


def canonical_line(l: Line) -> Line:
    """Forma canônica: primeira coordenada não nula de dir igual a 1 e
    base igual ao menor ponto da reta na ordem lexicográfica."""
    f = l.field
    k = next(i for i, v in enumerate(l.dir) if v)
    escala = f.inv(l.dir[k])
    direcao = tuple(f.mul(v, escala) for v in l.dir)
    base = axpy(f, l.base, l.base[k], direcao)
    return Line(f, base, direcao)


def canonical_subspace(s: AffineSubspace) -> AffineSubspace:
    """Direções em forma escalonada reduzida e base zerada nas colunas pivô."""
    f = s.field
    if not s.dirs:
        return AffineSubspace(f, s.base, ())
    reduzida, pivots = rref(f, s.dirs)
    linhas = [tuple(int(x) for x in reduzida[k]) for k in range(len(pivots))]
    base = s.base
    for linha, coluna in zip(linhas, pivots):
        base = axpy(f, base, base[coluna], linha)
    return AffineSubspace(f, base, tuple(linhas))


def affine_span(field: FieldParams, points: Sequence[Sequence[int]]) -> AffineSubspace:
    """Menor subespaço afim contendo os pontos (base no primeiro ponto)."""
    if not points:
        raise ParameterError("Conjunto de pontos vazio")
    base = _as_point(field, points[0])
    dirs: List[Point] = []
    for p in points[1:]:
        delta = sub(p, base)
        if rank(field, dirs + [delta]) > len(dirs):
            dirs.append(delta)
    return AffineSubspace(field, base, tuple(dirs))


def full_space(field: FieldParams, d: int) -> AffineSubspace:
    return AffineSubspace(
        field, (0,) * d, tuple(tuple(int(i == j) for j in range(d)) for i in range(d))
    )


class LineCatalog:
    """Todas as retas de F^d em forma canônica, com a matriz de incidência.

    points[l, t] é o índice do ponto base_l + t·dir_l; a coluna t
    corresponde ao parâmetro canônico (coordenada pivô do ponto).
    """

    def __init__(self, field: FieldParams, d: int):
        q = field.order
        _check_points(q, d)
        num_directions = (q ** d - 1) // (q - 1)
        num_lines = num_directions * q ** (d - 1)
        if num_lines * q > MAX_CATALOG:
            raise ResourceError(
                f"{num_lines} retas de F^{d} excedem o limite de enumeração"
            )
        self.field = field
        self.d = d
        bases: List[Point] = []
        dirs: List[Point] = []
        pivot: List[int] = []
        for k in range(d):
            outras = [i for i in range(d) if i != k]
            for cauda in product(range(q), repeat=d - 1 - k):
                direcao = (0,) * k + (1,) + tuple(cauda)
                for livres in product(range(q), repeat=d - 1):
                    base = [0] * d
                    for i, v in zip(outras, livres):
                        base[i] = v
                    bases.append(tuple(base))
                    dirs.append(direcao)
                    pivot.append(k)
        self.bases = np.array(bases, dtype=np.int64).reshape(-1, d)
        self.dirs = np.array(dirs, dtype=np.int64).reshape(-1, d)
        self.pivot = np.array(pivot, dtype=np.int64)
        ts = field.elements()
        passos = field.mul_array(ts[None, :, None], self.dirs[:, None, :])
        self.points = indices_of(field, passos ^ self.bases[:, None, :])
        self._rows: Dict[Tuple[Point, Point], int] = {
            (b, v): i for i, (b, v) in enumerate(zip(bases, dirs))
        }
        self.num_directions = num_directions
        logger.debug("catálogo de retas: F^%d, |F|=%d, %d retas", d, q, len(bases))

    @property
    def num_lines(self) -> int:
        return int(self.points.shape[0])

    def line(self, row: int) -> Line:
        return Line(
            self.field,
            tuple(int(x) for x in self.bases[row]),
            tuple(int(x) for x in self.dirs[row]),
        )

    def lines(self) -> List[Line]:
        return [self.line(i) for i in range(self.num_lines)]

    def row_of(self, line: Line) -> int:
        c = canonical_line(line)
        return self._rows[(c.base, c.dir)]

    def incidence(self) -> np.ndarray:
        """Número de retas por ponto (|L(z)| para cada índice z)."""
        return np.bincount(self.points.ravel(), minlength=self.field.order ** self.d)

    def lines_through(self, z: Sequence[int]) -> np.ndarray:
        indice = point_index(self.field, z)
        return np.nonzero((self.points == indice).any(axis=1))[0]


@lru_cache(maxsize=None)
def line_catalog(field: FieldParams, d: int) -> LineCatalog:
    return LineCatalog(field, d)


def all_lines(field: FieldParams, d: int) -> List[Line]:
    """Todas as retas de F^d, cada uma uma vez, em forma canônica.

    Raises:
        ResourceError: Se o catálogo exceder o limite de enumeração.
    """
    return line_catalog(field, d).lines()


def smallest_affine_containing(l: Line, tau: Sequence[Sequence[int]]) -> AffineSubspace:
    """Menor subespaço afim contendo a reta l e os pontos de tau."""
    if not tau:
        raise ParameterError("tau deve ser não vazio")
    dirs: List[Point] = [l.dir]
    for p in tau:
        delta = sub(p, l.base)
        if rank(l.field, dirs + [delta]) > len(dirs):
            dirs.append(delta)
    return AffineSubspace(l.field, l.base, tuple(dirs))


def random_extension_to_dim(s: AffineSubspace, target_dim: int, rng: np.random.Generator) -> AffineSubspace:
    """Extensão uniforme de s a um subespaço de dimensão target_dim.

    Direções uniformes são sorteadas e descartadas enquanto dependentes.

    Raises:
        ParameterError: Se target_dim > d ou target_dim < dim(s).
    """
    if target_dim > s.d:
        raise ParameterError(f"Dimensão alvo {target_dim} maior que d = {s.d}")
    if s.degenerate:
        s = canonical_subspace(s)
    if target_dim < s.dimension:
        raise ParameterError(f"Dimensão alvo {target_dim} menor que dim(s) = {s.dimension}")
    dirs = list(s.dirs)
    while len(dirs) < target_dim:
        v = tuple(int(x) for x in rng.integers(0, s.field.order, size=s.d))
        if rank(s.field, dirs + [v]) > len(dirs):
            dirs.append(v)
    return AffineSubspace(s.field, s.base, tuple(dirs))


def canonical_directions(field: FieldParams, d: int) -> List[Point]:
    """Os N vetores com primeira coordenada não nula igual a 1."""
    q = field.order
    return [
        (0,) * k + (1,) + tuple(cauda)
        for k in range(d)
        for cauda in product(range(q), repeat=d - 1 - k)
    ]


def all_subspaces_containing(s: AffineSubspace, target_dim: int) -> List[AffineSubspace]:
    """Todos os subespaços de dimensão target_dim que contêm s (forma canônica)."""
    if target_dim > s.d:
        raise ParameterError(f"Dimensão alvo {target_dim} maior que d = {s.d}")
    atual = canonical_subspace(s)
    if target_dim < atual.dimension:
        raise ParameterError(f"Dimensão alvo {target_dim} menor que dim(s) = {atual.dimension}")
    if target_dim == s.d:
        return [full_space(s.field, s.d)]
    fronteira: Dict[Tuple[Point, Tuple[Point, ...]], AffineSubspace] = {atual.key(): atual}
    direcoes = canonical_directions(s.field, s.d)
    for _ in range(target_dim - atual.dimension):
        proxima: Dict[Tuple[Point, Tuple[Point, ...]], AffineSubspace] = {}
        for sub_atual in fronteira.values():
            vistos: Set[Tuple[Point, ...]] = set()
            for v in direcoes:
                if rank(s.field, list(sub_atual.dirs) + [v]) == len(sub_atual.dirs):
                    continue
                novo = canonical_subspace(
                    AffineSubspace(s.field, sub_atual.base, sub_atual.dirs + (v,))
                )
                if novo.dirs in vistos:
                    continue
                vistos.add(novo.dirs)
                proxima.setdefault(novo.key(), novo)
        fronteira = proxima
    return [fronteira[k] for k in sorted(fronteira)]


def sample_invertible_map(field: FieldParams, d: int, rng: np.random.Generator) -> Tuple[LinearMap, int]:
    """Amostragem por rejeição em GL(d, F): (mapa, número de matrizes sorteadas)."""
    tentativas = 0
    while True:
        tentativas += 1
        matriz = rng.integers(0, field.order, size=(d, d))
        if determinant(field, matriz) != 0:
            if tentativas > 1:
                logger.debug("mapa inversível após %d tentativas", tentativas)
            return LinearMap.from_array(field, matriz), tentativas


def random_invertible_map(field: FieldParams, d: int, rng: np.random.Generator) -> LinearMap:
    """Mapa uniforme em GL(d, F): sorteia matrizes até det != 0."""
    return sample_invertible_map(field, d, rng)[0]


def solve_line_from_prefix(e: LinearMap, b: Sequence[int]) -> Tuple[Point, Point]:
    """u = E⁻¹(b, 0) e v = E⁻¹(b, 1).

    Raises:
        ParameterError: Se E for singular ou b não tiver d-1 coordenadas.
    """
    if len(b) != e.d - 1:
        raise ParameterError(f"Prefixo deve ter {e.d - 1} coordenadas, recebido: {len(b)}")
    inversa = e.inverse()
    u = inversa.apply(tuple(b) + (0,))
    v = inversa.apply(tuple(b) + (1,))
    return u, v
