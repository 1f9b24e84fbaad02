"""Polinômios sobre F em d variáveis e a extensão de baixo grau de tabelas.

Coeficientes e valores são manipulados pelas codificações inteiras dos
elementos de F (ver gf.FieldParams). Interpolação e avaliação em grades
completas são feitas eixo a eixo com matrizes de Lagrange/Vandermonde,
o que mantém tudo vetorizado em numpy.
"""

import logging
from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import (
    TYPE_CHECKING,
    Any,
    Dict,
    Iterable,
    List,
    Mapping,
    Optional,
    Sequence,
    Tuple,
    Union,
)

import numpy as np

from ..core.exceptions import ParameterError, ResourceError
from .gf import FieldParams, get_field

if TYPE_CHECKING:
    from .geom import AffineSubspace

logger = logging.getLogger(__name__)

Exponents = Tuple[int, ...]

MAX_GRID: int = 1 << 22


def _gf_matmul_last_axis(field: FieldParams, tensor: np.ndarray, matrix: np.ndarray) -> np.ndarray:
    """out[..., i] = XOR_j matrix[i, j] * tensor[..., j] sobre F."""
    produto = field.mul_array(tensor[..., None, :], matrix)
    return np.bitwise_xor.reduce(produto, axis=-1)


def _axis_transform(field: FieldParams, tensor: np.ndarray, matrix: np.ndarray) -> np.ndarray:
    resultado = np.asarray(tensor, dtype=np.int64)
    for eixo in range(resultado.ndim):
        resultado = np.moveaxis(resultado, eixo, -1)
        resultado = _gf_matmul_last_axis(field, resultado, matrix)
        resultado = np.moveaxis(resultado, -1, eixo)
    return resultado


def _mul_linear(field: FieldParams, coeffs: List[int], c: int) -> List[int]:
    """Multiplica um polinômio (grau crescente) por (x + c)."""
    novo = [0] * (len(coeffs) + 1)
    for i, coef in enumerate(coeffs):
        novo[i + 1] ^= coef
        novo[i] ^= field.mul(c, coef)
    return novo


@lru_cache(maxsize=None)
def _lagrange_full(field: FieldParams) -> np.ndarray:
    """Linha t: coeficientes de L_t(x) = (x^q + x)/(x + t) sobre todo F.

    Em característica 2 a derivada de x^q + x vale 1, então não há
    denominador a corrigir.
    """
    q = field.order
    tabela = np.zeros((q, q), dtype=np.int64)
    for t in range(q):
        b = 1
        tabela[t, q - 1] = 1
        for k in range(q - 1, 0, -1):
            a_k = 1 if k == 1 else 0
            b = a_k ^ field.mul(t, b)
            tabela[t, k - 1] = b
    return tabela


@lru_cache(maxsize=None)
def _vandermonde(field: FieldParams) -> np.ndarray:
    """V[t, e] = t^e, com 0^0 = 1."""
    q = field.order
    elementos = field.elements()
    return np.stack([field.pow_array(elementos, e) for e in range(q)], axis=1)


@lru_cache(maxsize=None)
def _lagrange_h(field: FieldParams, h_size: int) -> np.ndarray:
    """Linha h: coeficientes da base de Lagrange de H = {0..h_size-1}."""
    tabela = np.zeros((h_size, h_size), dtype=np.int64)
    for h in range(h_size):
        coeffs = [1]
        denominador = 1
        for outro in range(h_size):
            if outro == h:
                continue
            coeffs = _mul_linear(field, coeffs, outro)
            denominador = field.mul(denominador, h ^ outro)
        escala = field.inv(denominador)
        tabela[h, :] = [field.mul(c, escala) for c in coeffs]
    return tabela


def _reduce_exponent(e: int, q: int) -> int:
    # x^q = x como função sobre F
    if e < q:
        return e
    return (e - 1) % (q - 1) + 1


def _check_grid(q: int, n: int) -> int:
    tamanho = q ** n
    if tamanho > MAX_GRID:
        raise ResourceError(f"Grade de {q}^{n} = {tamanho} pontos excede o limite {MAX_GRID}")
    return tamanho


@dataclass(frozen=True)
class LdeParams:
    """Parâmetros da extensão de baixo grau: F, d e |H|.

    π é a ordem lexicográfica de H^d com a primeira coordenada mais
    significativa; H são os |H| primeiros elementos de F (codificações
    0..|H|-1).

    Examples:
        >>> params = LdeParams(get_field(4), d=2, h_size=4)
        >>> params.pi_inv(6)
        (1, 2)
        >>> params.pi((1, 2))
        6
    """

    field: FieldParams
    d: int
    h_size: int

    def __post_init__(self) -> None:
        if self.d < 1:
            raise ParameterError(f"d deve ser positivo, recebido: {self.d}")
        if not 1 <= self.h_size <= self.field.order:
            raise ParameterError(
                f"|H| deve estar em [1, {self.field.order}], recebido: {self.h_size}"
            )
        _check_grid(self.h_size, self.d)

    @property
    def domain_size(self) -> int:
        return self.h_size ** self.d

    @property
    def num_points(self) -> int:
        return self.field.order ** self.d

    @property
    def H(self) -> List[int]:
        return list(range(self.h_size))

    @property
    def default_degree(self) -> int:
        """Grau total de qualquer LDE: d·(|H|-1)."""
        return self.d * (self.h_size - 1)

    def pi(self, point: Sequence[int]) -> int:
        if len(point) != self.d or any(not 0 <= h < self.h_size for h in point):
            raise ParameterError(f"Ponto {tuple(point)} não pertence a H^{self.d}")
        indice = 0
        for h in point:
            indice = indice * self.h_size + int(h)
        return indice

    def pi_inv(self, i: int) -> Tuple[int, ...]:
        if not 0 <= i < self.domain_size:
            raise ParameterError(f"Índice {i} fora de [0, {self.domain_size})")
        digitos = []
        for _ in range(self.d):
            digitos.append(i % self.h_size)
            i //= self.h_size
        return tuple(reversed(digitos))

    def to_dict(self) -> Dict[str, Any]:
        return {"field": self.field.to_dict(), "d": self.d, "h_size": self.h_size}

    @classmethod
    def create(cls, a: int = 4, d: int = 2, h_size: int = 4, modulus_bits: Optional[int] = None) -> "LdeParams":
        return cls(get_field(a, modulus_bits), d, h_size)


@dataclass(frozen=True)
class DataTable:
    """Tabela a_1..a_{|H|^d}, indexada por π."""

    params: LdeParams
    values: Tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.values) != self.params.domain_size:
            raise ParameterError(
                f"Tabela deve ter {self.params.domain_size} valores, "
                f"recebido: {len(self.values)}"
            )
        for v in self.values:
            self.params.field.check(v)

    @classmethod
    def from_sequence(cls, params: LdeParams, values: Iterable[int]) -> "DataTable":
        return cls(params, tuple(int(v) for v in values))

    @classmethod
    def padded(cls, params: LdeParams, values: Sequence[int]) -> "DataTable":
        """Completa com zeros (variáveis fictícias) até |H|^d valores."""
        if len(values) > params.domain_size:
            raise ParameterError(
                f"{len(values)} valores não cabem em |H|^d = {params.domain_size}"
            )
        completos = list(values) + [0] * (params.domain_size - len(values))
        return cls.from_sequence(params, completos)

    def value_at(self, point: Sequence[int]) -> int:
        return self.values[self.params.pi(point)]

    def to_dict(self) -> Dict[str, Any]:
        return {"lde": self.params.to_dict(), "values": list(self.values)}


class MultiPoly:
    """Polinômio esparso em n variáveis sobre F.

    Expoentes são mantidos reduzidos (< |F|), já que x^|F| = x como função;
    coeficientes nulos nunca são armazenados.

    Examples:
        >>> gf4 = get_field(2)
        >>> p = MultiPoly(gf4, 2, {(1, 1): 1})  # z1·z2
        >>> p.evaluate((2, 3)) == gf4.mul(2, 3)
        True
    """

    def __init__(self, field: FieldParams, nvars: int, coeffs: Mapping[Exponents, int]):
        if nvars < 0:
            raise ParameterError(f"Número de variáveis inválido: {nvars}")
        self.field = field
        self.nvars = nvars
        q = field.order
        termos: Dict[Exponents, int] = {}
        for exps, coef in coeffs.items():
            if len(exps) != nvars:
                raise ParameterError(
                    f"Vetor de expoentes {exps} incompatível com {nvars} variáveis"
                )
            if any(e < 0 for e in exps):
                raise ParameterError(f"Expoente negativo em {exps}")
            chave = tuple(_reduce_exponent(int(e), q) for e in exps)
            termos[chave] = termos.get(chave, 0) ^ field.check(int(coef))
        self.coeffs: Dict[Exponents, int] = {e: c for e, c in termos.items() if c}

    @classmethod
    def zero(cls, field: FieldParams, nvars: int) -> "MultiPoly":
        return cls(field, nvars, {})

    @classmethod
    def constant(cls, field: FieldParams, nvars: int, c: int) -> "MultiPoly":
        return cls(field, nvars, {(0,) * nvars: c})

    @classmethod
    def variable(cls, field: FieldParams, nvars: int, i: int) -> "MultiPoly":
        exps = [0] * nvars
        exps[i] = 1
        return cls(field, nvars, {tuple(exps): 1})

    @classmethod
    def from_dense(cls, field: FieldParams, tensor: np.ndarray) -> "MultiPoly":
        """Constrói a partir de um tensor de coeficientes indexado por expoentes."""
        nvars = tensor.ndim
        coeffs = {
            tuple(int(e) for e in idx): int(tensor[idx])
            for idx in zip(*np.nonzero(tensor))
        }
        return cls(field, nvars, coeffs)

    def terms(self) -> List[Tuple[Exponents, int]]:
        return sorted(self.coeffs.items())

    def is_zero(self) -> bool:
        return not self.coeffs

    def total_degree(self) -> int:
        """Maior soma de expoentes; -1 para o polinômio nulo."""
        if not self.coeffs:
            return -1
        return max(sum(e) for e in self.coeffs)

    def max_var_degree(self) -> int:
        if not self.coeffs:
            return -1
        return max(max(e) if e else 0 for e in self.coeffs)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return (
            self.field == other.field
            and self.nvars == other.nvars
            and self.coeffs == other.coeffs
        )

    def __hash__(self) -> int:
        return hash((self.field, self.nvars, frozenset(self.coeffs.items())))

    def __repr__(self) -> str:
        return f"MultiPoly(nvars={self.nvars}, terms={self.terms()})"

    def _compatible(self, other: "MultiPoly") -> None:
        if self.field != other.field or self.nvars != other.nvars:
            raise ParameterError("Polinômios em corpos ou números de variáveis diferentes")

    def __add__(self, other: "MultiPoly") -> "MultiPoly":
        self._compatible(other)
        soma = dict(self.coeffs)
        for e, c in other.coeffs.items():
            soma[e] = soma.get(e, 0) ^ c
        return MultiPoly(self.field, self.nvars, soma)

    __sub__ = __add__

    def __mul__(self, other: "MultiPoly") -> "MultiPoly":
        self._compatible(other)
        produto: Dict[Exponents, int] = {}
        q = self.field.order
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                e = tuple(_reduce_exponent(x + y, q) for x, y in zip(e1, e2))
                produto[e] = produto.get(e, 0) ^ self.field.mul(c1, c2)
        return MultiPoly(self.field, self.nvars, produto)

    def scale(self, c: int) -> "MultiPoly":
        return MultiPoly(
            self.field,
            self.nvars,
            {e: self.field.mul(coef, c) for e, coef in self.coeffs.items()},
        )

    def evaluate(self, z: Sequence[int]) -> int:
        if len(z) != self.nvars:
            raise ParameterError(
                f"Ponto de dimensão {len(z)} para polinômio em {self.nvars} variáveis"
            )
        f = self.field
        potencias: List[Dict[int, int]] = [{} for _ in range(self.nvars)]
        total = 0
        for exps, coef in self.coeffs.items():
            termo = coef
            for i, e in enumerate(exps):
                if e:
                    cache = potencias[i]
                    if e not in cache:
                        cache[e] = f.pow(int(z[i]), e)
                    termo = f.mul(termo, cache[e])
            total ^= termo
        return total

    def evaluation_table(self, points: np.ndarray) -> np.ndarray:
        """Avalia em cada linha de um array (M, n) de pontos."""
        pontos = np.asarray(points, dtype=np.int64).reshape(-1, self.nvars)
        f = self.field
        total = np.zeros(pontos.shape[0], dtype=np.int64)
        cache: Dict[Tuple[int, int], np.ndarray] = {}
        for exps, coef in self.coeffs.items():
            termo = np.full(pontos.shape[0], coef, dtype=np.int64)
            for i, e in enumerate(exps):
                if e:
                    if (i, e) not in cache:
                        cache[(i, e)] = f.pow_array(pontos[:, i], e)
                    termo = f.mul_array(termo, cache[(i, e)])
            total ^= termo
        return total

    def dense_coefficients(self) -> np.ndarray:
        q = self.field.order
        _check_grid(q, self.nvars)
        tensor = np.zeros((q,) * self.nvars, dtype=np.int64)
        for e, c in self.coeffs.items():
            tensor[e] = c
        return tensor

    def evaluation_grid(self) -> np.ndarray:
        """Valores em todos os pontos de F^n, na ordem idx(z) = Σ z_i q^(n-1-i)."""
        if self.nvars == 0:
            return np.array([self.coeffs.get((), 0)], dtype=np.int64)
        tensor = _axis_transform(self.field, self.dense_coefficients(), _vandermonde(self.field))
        return tensor.reshape(-1)

    def to_list(self) -> List[List[Any]]:
        return [[list(e), c] for e, c in self.terms()]

    @classmethod
    def from_list(cls, field: FieldParams, nvars: int, terms: Iterable[Sequence[Any]]) -> "MultiPoly":
        coeffs: Dict[Exponents, int] = {}
        for exps, coef in terms:
            chave = tuple(int(e) for e in exps)
            coeffs[chave] = coeffs.get(chave, 0) ^ int(coef)
        return cls(field, nvars, coeffs)


@dataclass(frozen=True)
class UniPoly:
    """Polinômio em uma variável, coeficientes do menor para o maior grau."""

    field: FieldParams
    coeffs: Tuple[int, ...]

    def __post_init__(self) -> None:
        coeffs = [self.field.check(int(c)) for c in self.coeffs]
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        object.__setattr__(self, "coeffs", tuple(coeffs))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def evaluate(self, t: int) -> int:
        acumulado = 0
        for c in reversed(self.coeffs):
            acumulado = self.field.mul(acumulado, t) ^ c
        return acumulado

    def evaluate_array(self, ts: Any) -> np.ndarray:
        ts = np.asarray(ts, dtype=np.int64)
        acumulado = np.zeros_like(ts)
        for c in reversed(self.coeffs):
            acumulado = self.field.mul_array(acumulado, ts) ^ c
        return acumulado

    def values(self) -> np.ndarray:
        """Valores em todo F, indexados pela codificação de t."""
        return self.evaluate_array(self.field.elements())

    def to_list(self) -> List[int]:
        return list(self.coeffs)


def interpolate_lde(params: LdeParams, data: DataTable) -> MultiPoly:
    """Extensão de baixo grau Ã da tabela: grau <= |H|-1 em cada variável.

    Args:
        params: Parâmetros F, d, |H|.
        data: Tabela indexada por π.

    Returns:
        Ã com Ã(h) = A(h) para todo h em H^d.

    Raises:
        ParameterError: Se a tabela não corresponder aos parâmetros.

    Examples:
        >>> params = LdeParams(get_field(2), d=1, h_size=2)
        >>> interpolate_lde(params, DataTable(params, (0, 1))).terms()
        [((1,), 1)]
    """
    if len(data.values) != params.domain_size:
        raise ParameterError(
            f"Tabela com {len(data.values)} valores para |H|^d = {params.domain_size}"
        )
    tensor = np.array(data.values, dtype=np.int64).reshape((params.h_size,) * params.d)
    matriz = _lagrange_h(params.field, params.h_size).T
    coeffs = _axis_transform(params.field, tensor, matriz)
    return MultiPoly.from_dense(params.field, coeffs)


def evaluate(p: MultiPoly, z: Sequence[int]) -> int:
    """Valor de p em z (ParameterError se a dimensão não bater)."""
    return p.evaluate(z)


def interpolate_function(field: FieldParams, nvars: int, values: Any) -> MultiPoly:
    """Único polinômio reduzido que coincide com a tabela de valores em F^n."""
    q = field.order
    tamanho = _check_grid(q, nvars)
    tabela = np.asarray(values, dtype=np.int64).reshape(-1)
    if tabela.size != tamanho:
        raise ParameterError(f"Esperados {tamanho} valores, recebido: {tabela.size}")
    if nvars == 0:
        return MultiPoly.constant(field, 0, int(tabela[0]))
    tensor = tabela.reshape((q,) * nvars)
    coeffs = _axis_transform(field, tensor, _lagrange_full(field).T)
    return MultiPoly.from_dense(field, coeffs)


def restrict_to_subspace(p: MultiPoly, s: "AffineSubspace") -> MultiPoly:
    """Restrição de p a s, nas variáveis de parametrização t de s.

    q(t) = p(base + Σ t_i·dir_i) para todo t; subespaços degenerados
    (geradores dependentes) mantêm uma variável por gerador.
    """
    if p.field != s.field or len(s.base) != p.nvars:
        raise ParameterError("Subespaço incompatível com o polinômio")
    pontos = s.points_array()
    valores = p.evaluation_table(pontos)
    return interpolate_function(p.field, s.num_params, valores)


def fit_univariate(
    field: FieldParams,
    values: Union[Mapping[int, int], Sequence[int], np.ndarray],
    max_degree: int,
) -> Optional[UniPoly]:
    """Interpola valores em todo F e verifica o grau.

    Args:
        field: Corpo F.
        values: Valor em cada t de F (mapeamento t -> valor ou sequência
            indexada pela codificação de t).
        max_degree: Grau máximo aceito.

    Returns:
        O polinômio interpolador, ou None quando o grau excede max_degree.

    Examples:
        >>> gf4 = get_field(2)
        >>> quadrado = [gf4.mul(t, t) for t in range(4)]
        >>> fit_univariate(gf4, quadrado, 2).coeffs
        (0, 0, 1)
        >>> fit_univariate(gf4, quadrado, 1) is None
        True
    """
    q = field.order
    if isinstance(values, Mapping):
        if set(values) != set(range(q)):
            raise ParameterError("Valores devem estar definidos em todo F")
        tabela = np.array([values[t] for t in range(q)], dtype=np.int64)
    else:
        tabela = np.asarray(values, dtype=np.int64)
        if tabela.shape != (q,):
            raise ParameterError(f"Esperados {q} valores, recebido: {tabela.shape}")
    coeffs = _gf_matmul_last_axis(field, tabela, _lagrange_full(field).T)
    poly = UniPoly(field, tuple(int(c) for c in coeffs))
    if poly.degree > max_degree:
        return None
    return poly


def fit_multivariate(field: FieldParams, nvars: int, values: Any, max_degree: int) -> Optional[MultiPoly]:
    """Versão em n variáveis de fit_univariate (grau total <= max_degree)."""
    poly = interpolate_function(field, nvars, values)
    if poly.total_degree() > max_degree:
        return None
    return poly


def poly_equal_schwartz_zippel(p: MultiPoly, q: MultiPoly, trials: int, rng: np.random.Generator) -> bool:
    """Teste de identidade por avaliação em pontos aleatórios.

    Polinômios distintos de grau total <= r escapam de cada tentativa com
    probabilidade <= r/|F|.

    Raises:
        ParameterError: Se corpos/variáveis diferem ou se r >= |F|.
    """
    p._compatible(q)
    r = max(p.total_degree(), q.total_degree())
    if r >= p.field.order:
        raise ParameterError(
            f"Grau {r} >= |F| = {p.field.order}: o teste de Schwartz-Zippel é vácuo"
        )
    if trials < 1:
        raise ParameterError(f"Número de tentativas deve ser positivo, recebido: {trials}")
    pontos = rng.integers(0, p.field.order, size=(trials, p.nvars))
    return bool(np.array_equal(p.evaluation_table(pontos), q.evaluation_table(pontos)))


def monomials(nvars: int, max_exponent: int, max_total: Optional[int] = None) -> List[Exponents]:
    """Vetores de expoentes em ordem lexicográfica, com limites por variável e total."""
    resultado = []
    for exps in product(range(max_exponent + 1), repeat=nvars):
        if max_total is None or sum(exps) <= max_total:
            resultado.append(tuple(exps))
    return resultado


def univariate_degrees(field: FieldParams, tables: Any, chunk: int = 4096) -> np.ndarray:
    """Grau do interpolador de cada linha de uma tabela (M, |F|); -1 para a linha nula."""
    tabelas = np.asarray(tables, dtype=np.int64).reshape(-1, field.order)
    matriz = _lagrange_full(field).T
    graus = np.empty(tabelas.shape[0], dtype=np.int64)
    for inicio in range(0, tabelas.shape[0], chunk):
        coefs = _gf_matmul_last_axis(field, tabelas[inicio : inicio + chunk], matriz)
        nao_nulos = coefs != 0
        ultimo = field.order - 1 - np.argmax(nao_nulos[:, ::-1], axis=1)
        graus[inicio : inicio + chunk] = np.where(nao_nulos.any(axis=1), ultimo, -1)
    return graus


def evaluate_univariate_rows(field: FieldParams, coeffs: Any) -> np.ndarray:
    """Valores em todo F de cada linha de coeficientes (M, k), grau crescente."""
    coefs = np.asarray(coeffs, dtype=np.int64)
    k = coefs.shape[-1]
    if k > field.order:
        raise ParameterError(f"Grau {k - 1} >= |F| = {field.order}")
    return _gf_matmul_last_axis(field, coefs, _vandermonde(field)[:, :k])
