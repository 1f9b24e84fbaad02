"""Aritmética no corpo binário F = GF(2^a) com módulo irredutível explícito.

Elementos são codificados como inteiros em [0, 2^a), bit i sendo o
coeficiente de x^i. A soma é XOR; o produto usa tabelas de logaritmo e
exponencial construídas a partir de um gerador do grupo multiplicativo,
o que permite versões vetorizadas em numpy (mul_array, pow_array).
"""

import logging
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Any, Dict, List, Optional, Tuple

import numpy as np

from ..core.exceptions import DomainError, InvalidModulus, ParameterError

logger = logging.getLogger(__name__)

MAX_DEGREE: int = 16

DEFAULT_MODULI: Dict[int, int] = {
    1: 0b11,  # x + 1
    2: 0b111,  # x^2 + x + 1
    3: 0b1011,  # x^3 + x + 1
    4: 0b10011,  # x^4 + x + 1
    5: 0b100101,  # x^5 + x^2 + 1
    6: 0b1000011,  # x^6 + x + 1
    7: 0b10000011,  # x^7 + x + 1
    8: 0b100011011,  # x^8 + x^4 + x^3 + x + 1
}


def _clmul(x: int, y: int) -> int:
    """Produto de polinômios sobre GF(2) sem redução."""
    r = 0
    while y:
        if y & 1:
            r ^= x
        x <<= 1
        y >>= 1
    return r


def _poly_mod(x: int, m: int) -> int:
    dm = m.bit_length() - 1
    while x and x.bit_length() - 1 >= dm:
        x ^= m << (x.bit_length() - 1 - dm)
    return x


def is_irreducible(modulus_bits: int, a: int) -> bool:
    """Verifica se o polinômio tem grau a e é irredutível sobre GF(2).

    Divisão por tentativa com todos os polinômios de grau 1 a a//2.

    Examples:
        >>> is_irreducible(0b1011, 3)
        True
        >>> is_irreducible(0b101, 2)  # x^2 + 1 = (x + 1)^2
        False
    """
    if modulus_bits.bit_length() - 1 != a:
        return False
    for grau in range(1, a // 2 + 1):
        for divisor in range(1 << grau, 1 << (grau + 1)):
            if _poly_mod(modulus_bits, divisor) == 0:
                return False
    return True


def find_irreducible(a: int) -> int:
    """Retorna o primeiro polinômio irredutível de grau a em ordem crescente."""
    for candidato in range((1 << a) | 1, 1 << (a + 1), 2):
        if is_irreducible(candidato, a):
            return candidato
    raise InvalidModulus(f"Nenhum polinômio irredutível de grau {a} encontrado")


def _build_tables(a: int, modulus_bits: int) -> Tuple[np.ndarray, np.ndarray]:
    ordem = 1 << a
    n = ordem - 1
    inicio = 1 if ordem == 2 else 2
    for gerador in range(inicio, ordem):
        exp = np.zeros(2 * n, dtype=np.int64)
        x = 1
        periodo_completo = True
        for i in range(n):
            if i > 0 and x == 1:
                periodo_completo = False
                break
            exp[i] = x
            x = _poly_mod(_clmul(x, gerador), modulus_bits)
        if periodo_completo and x == 1:
            exp[n:] = exp[:n]
            log = np.zeros(ordem, dtype=np.int64)
            log[exp[:n]] = np.arange(n, dtype=np.int64)
            logger.debug("GF(2^%d): gerador %d", a, gerador)
            return exp, log
    raise InvalidModulus(f"Módulo 0b{modulus_bits:b} não gera um corpo")


@dataclass(frozen=True)
class FieldParams:
    """Parâmetros de GF(2^a): grau de extensão e módulo irredutível.

    O módulo é verificado na construção (grau exato e irredutibilidade).
    Instâncias são imutáveis e podem ser compartilhadas entre threads.

    Attributes:
        a: Grau de extensão (1 <= a <= 16).
        modulus_bits: Codificação em bits do polinômio módulo.

    Examples:
        >>> gf8 = FieldParams(3, 0b1011)
        >>> gf8.mul(0b010, 0b100)
        3
        >>> gf8.inv(0b010)
        5
    """

    a: int
    modulus_bits: int
    _exp: np.ndarray = field(init=False, repr=False, compare=False)
    _log: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if not isinstance(self.a, int) or not 1 <= self.a <= MAX_DEGREE:
            raise ParameterError(
                f"Grau de extensão deve estar em [1, {MAX_DEGREE}], recebido: {self.a}"
            )
        if self.modulus_bits.bit_length() - 1 != self.a:
            raise InvalidModulus(
                f"Módulo 0b{self.modulus_bits:b} não tem grau {self.a}"
            )
        if not is_irreducible(self.modulus_bits, self.a):
            raise InvalidModulus(
                f"Módulo 0b{self.modulus_bits:b} é redutível sobre GF(2)"
            )
        exp, log = _build_tables(self.a, self.modulus_bits)
        object.__setattr__(self, "_exp", exp)
        object.__setattr__(self, "_log", log)

    @property
    def order(self) -> int:
        return 1 << self.a

    @property
    def q(self) -> int:
        """Alias de order (|F|)."""
        return 1 << self.a

    def check(self, x: int) -> int:
        """Garante que x codifica um elemento deste corpo."""
        if isinstance(x, bool) or not isinstance(x, (int, np.integer)):
            raise ParameterError(f"Elemento deve ser inteiro, recebido: {x!r}")
        if not 0 <= int(x) < self.order:
            raise ParameterError(
                f"Elemento {x} fora de [0, {self.order}) em GF(2^{self.a})"
            )
        return int(x)

    def add(self, x: int, y: int) -> int:
        return x ^ y

    def mul(self, x: int, y: int) -> int:
        if x == 0 or y == 0:
            return 0
        return int(self._exp[self._log[x] + self._log[y]])

    def inv(self, x: int) -> int:
        """Inverso multiplicativo.

        Raises:
            DomainError: Se x = 0.
        """
        if x == 0:
            raise DomainError("Zero não possui inverso multiplicativo")
        n = self.order - 1
        return int(self._exp[(n - self._log[x]) % n])

    def div(self, x: int, y: int) -> int:
        return self.mul(x, self.inv(y))

    def pow(self, x: int, e: int) -> int:
        if e == 0:
            return 1
        if x == 0:
            return 0
        n = self.order - 1
        return int(self._exp[(int(self._log[x]) * e) % n])

    def mul_array(self, x: Any, y: Any) -> np.ndarray:
        """Produto elemento a elemento de arrays (com broadcast)."""
        xa = np.asarray(x, dtype=np.int64)
        ya = np.asarray(y, dtype=np.int64)
        produto = self._exp[self._log[xa] + self._log[ya]]
        return np.where((xa == 0) | (ya == 0), 0, produto)

    def pow_array(self, x: Any, e: int) -> np.ndarray:
        xa = np.asarray(x, dtype=np.int64)
        if e == 0:
            return np.ones_like(xa)
        n = self.order - 1
        resultado = self._exp[(self._log[xa] * e) % n]
        return np.where(xa == 0, 0, resultado)

    def elements(self) -> np.ndarray:
        return np.arange(self.order, dtype=np.int64)

    def enumerate(self) -> List["FieldElem"]:
        """Todos os elementos em ordem crescente de codificação."""
        return [FieldElem(v, self) for v in range(self.order)]

    def elem(self, value: int) -> "FieldElem":
        return FieldElem(self.check(value), self)

    def to_dict(self) -> Dict[str, int]:
        return {"a": self.a, "modulus_bits": self.modulus_bits}


@dataclass(frozen=True)
class FieldElem:
    """Elemento de GF(2^a) ligado aos parâmetros do seu corpo.

    Examples:
        >>> gf8 = get_field(3)
        >>> gf8.elem(0b101) + gf8.elem(0b011)
        FieldElem(value=6)
    """

    value: int
    params: FieldParams = field(repr=False)

    def __post_init__(self) -> None:
        self.params.check(self.value)

    def _same(self, other: "FieldElem") -> None:
        if not isinstance(other, FieldElem):
            raise ParameterError(f"Operando não é elemento de corpo: {other!r}")
        if other.params != self.params:
            raise ParameterError(
                "Elementos de corpos diferentes: "
                f"GF(2^{self.params.a}) e GF(2^{other.params.a})"
            )

    def __add__(self, other: "FieldElem") -> "FieldElem":
        self._same(other)
        return FieldElem(self.value ^ other.value, self.params)

    __sub__ = __add__

    def __neg__(self) -> "FieldElem":
        return self

    def __mul__(self, other: "FieldElem") -> "FieldElem":
        self._same(other)
        return FieldElem(self.params.mul(self.value, other.value), self.params)

    def __truediv__(self, other: "FieldElem") -> "FieldElem":
        self._same(other)
        return FieldElem(self.params.div(self.value, other.value), self.params)

    def __pow__(self, e: int) -> "FieldElem":
        if e < 0:
            return FieldElem(self.params.pow(self.params.inv(self.value), -e), self.params)
        return FieldElem(self.params.pow(self.value, e), self.params)

    def __int__(self) -> int:
        return self.value

    def __index__(self) -> int:
        return self.value

    def inverse(self) -> "FieldElem":
        return FieldElem(self.params.inv(self.value), self.params)

    def is_zero(self) -> bool:
        return self.value == 0


def add(x: FieldElem, y: FieldElem) -> FieldElem:
    """Soma x + y (XOR das codificações)."""
    return x + y


def mul(x: FieldElem, y: FieldElem) -> FieldElem:
    """Produto x·y reduzido pelo módulo."""
    return x * y


def inv(x: FieldElem) -> FieldElem:
    """Inverso multiplicativo; levanta DomainError para zero."""
    return x.inverse()


def enumerate_field(params: FieldParams) -> List[FieldElem]:
    return params.enumerate()


@lru_cache(maxsize=None)
def get_field(a: int, modulus_bits: Optional[int] = None) -> FieldParams:
    """Retorna (em cache) os parâmetros de GF(2^a).

    Args:
        a: Grau de extensão.
        modulus_bits: Módulo explícito; None usa o padrão do grau a
            ou, na falta dele, o primeiro polinômio irredutível.

    Returns:
        FieldParams validado.

    Raises:
        ParameterError: Se a estiver fora de [1, 16].
        InvalidModulus: Se o módulo informado for inválido.
    """
    if not isinstance(a, int) or not 1 <= a <= MAX_DEGREE:
        raise ParameterError(
            f"Grau de extensão deve estar em [1, {MAX_DEGREE}], recebido: {a}"
        )
    if modulus_bits is None:
        modulus_bits = DEFAULT_MODULI.get(a)
        if modulus_bits is None:
            modulus_bits = find_irreducible(a)
            logger.info("GF(2^%d): módulo padrão 0b%s", a, format(modulus_bits, "b"))
    return FieldParams(a, modulus_bits)


def field_for_order(q: int) -> FieldParams:
    """Corpo padrão com q elementos (q potência de 2)."""
    if q < 2 or q & (q - 1):
        raise ParameterError(f"Ordem do corpo deve ser potência de 2, recebido: {q}")
    return get_field(q.bit_length() - 1)
